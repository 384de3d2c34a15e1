#include "spinglass/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spinglass/bits.hpp"
#include "spinglass/error.hpp"
#include "spinglass/format.hpp"
#include "spinglass/rng.hpp"

namespace spinglass {

Model Model::power_law(double sigma) {
  if (std::isnan(sigma) || sigma < 0.0) {
    throw InvalidArgument("power-law exponent must be >= 0, got " + format_double(sigma));
  }
  if (std::isinf(sigma)) return nearest_neighbour();
  return {ModelFamily::PowerLaw, sigma};
}

std::string Model::name() const {
  switch (family) {
    case ModelFamily::InfiniteRange: return "ir";
    case ModelFamily::NearestNeighbour: return "nn";
    case ModelFamily::PowerLaw: return "pl";
  }
  return "unknown";
}

double chord_distance(int L, int i, int j) {
  if (L < 2 || i < 0 || j < 0 || i >= L || j >= L) {
    throw InvalidArgument("chord_distance: qubit index outside [0, L)");
  }
  if (i == j) throw InvalidArgument("chord_distance: i == j");
  const int d = i > j ? i - j : j - i;
  return static_cast<double>(L) / std::numbers::pi *
         std::sin(std::numbers::pi * static_cast<double>(d) / static_cast<double>(L));
}

CouplingMatrix sample_couplings(const Model& model, int L, std::uint64_t seed) {
  if (L < 2 || L > kMaxQubits) {
    throw InvalidArgument("sample_couplings: L=" + std::to_string(L) + " outside [2, 128]");
  }
  if (model.family == ModelFamily::PowerLaw && (std::isnan(model.sigma) || model.sigma < 0.0)) {
    throw InvalidArgument("sample_couplings: negative power-law exponent");
  }
  CouplingMatrix out{L, Eigen::MatrixXd::Zero(L, L), model, seed};
  const NormalStream normal(seed);
  auto draw = [&](int i, int j) {
    return normal[static_cast<std::uint64_t>(i) * kMaxQubits + static_cast<std::uint64_t>(j)];
  };
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      double value = 0.0;
      switch (model.family) {
        case ModelFamily::InfiniteRange:
          value = draw(i, j);
          break;
        case ModelFamily::NearestNeighbour:
          if (j == i + 1 || (i == 0 && j == L - 1)) value = draw(i, j);
          break;
        case ModelFamily::PowerLaw:
          value = draw(i, j) * std::pow(chord_distance(L, i, j), -0.5 * model.sigma);
          break;
      }
      out.J(i, j) = value;
      out.J(j, i) = value;
    }
  }
  return out;
}

double coupling_sum(const CouplingMatrix& J) {
  double s = 0.0;
  for (int i = 0; i < J.L; ++i) {
    for (int j = i + 1; j < J.L; ++j) s += J.J(i, j);
  }
  return s;
}

std::uint64_t DisorderPlan::sample_seed(std::uint64_t sample_index) const {
  return derive_seed(master_seed, sample_index);
}

nlohmann::json couplings_header(const CouplingMatrix& J) {
  nlohmann::json h;
  h["model"] = J.model.name();
  if (J.model.family == ModelFamily::PowerLaw) {
    h["sigma"] = J.model.sigma;
  } else if (J.model.family == ModelFamily::NearestNeighbour) {
    h["sigma"] = "inf";
  } else {
    h["sigma"] = 0.0;
  }
  h["L"] = J.L;
  h["seed"] = J.seed;
  return h;
}

void write_couplings_csv(std::ostream& os, const CouplingMatrix& J) {
  os << "# " << couplings_header(J).dump() << '\n';
  os << "i,j,J_ij\n";
  for (int i = 0; i < J.L; ++i) {
    for (int j = i + 1; j < J.L; ++j) {
      os << i + 1 << ',' << j + 1 << ',' << format_double(J.J(i, j)) << '\n';
    }
  }
}

CouplingMatrix read_couplings_csv(std::istream& is, const Model& model, std::uint64_t seed) {
  struct Entry {
    int i, j;
    double value;
  };
  std::vector<Entry> entries;
  int L = 0;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("i,j", 0) == 0) continue;
    }
    std::istringstream row(line);
    Entry e{};
    char c1 = 0, c2 = 0;
    if (!(row >> e.i >> c1 >> e.j >> c2 >> e.value) || c1 != ',' || c2 != ',') {
      throw InvalidArgument("malformed coupling row: " + line);
    }
    if (e.i < 1 || e.j < 1 || e.i == e.j || e.i > kMaxQubits || e.j > kMaxQubits) {
      throw InvalidArgument("invalid qubit pair in coupling row: " + line);
    }
    L = std::max({L, e.i, e.j});
    entries.push_back(e);
  }
  if (L < 2) throw InvalidArgument("coupling file has no entries");
  CouplingMatrix out{L, Eigen::MatrixXd::Zero(L, L), model, seed};
  for (const auto& e : entries) {
    out.J(e.i - 1, e.j - 1) = e.value;
    out.J(e.j - 1, e.i - 1) = e.value;
  }
  return out;
}

}  // namespace spinglass
