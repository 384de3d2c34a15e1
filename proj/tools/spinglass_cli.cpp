#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinglass/error.hpp"
#include "spinglass/experiment.hpp"
#include "spinglass/parallel.hpp"

namespace sg = spinglass;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

int parse_int(const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw sg::InvalidArgument("not an integer: '" + text + "'");
  return value;
}

double parse_sigma(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw sg::InvalidArgument("not a number: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

// "8", "8,12,16" or "8..40:4" (inclusive range, default step 1); items may be mixed.
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      sizes.push_back(parse_int(item));
      continue;
    }
    const int lo = parse_int(item.substr(0, dots));
    auto rest = item.substr(dots + 2);
    int step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_int(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const int hi = parse_int(rest);
    if (step < 1 || hi < lo) throw sg::InvalidArgument("bad size range '" + item + "'");
    for (int L = lo; L <= hi; L += step) sizes.push_back(L);
  }
  return sizes;
}

struct RawOptions {
  std::string model = "ir";
  std::string sigma = "0";
  std::string sizes = "8";
  int m = 2;
  int samples = 1;
  std::uint64_t seed = 1;
  std::string pairs = "all";
  std::string out = ".";
  std::string sigmas = "0,0.5,1,2,2.5,inf";
  std::string target = "random-promoted";
  std::optional<double> degtol;
  double ladder_tol = 0.5;
};

sg::ExperimentConfig to_config(const RawOptions& raw) {
  sg::ExperimentConfig config;
  if (raw.model == "ir") {
    config.model = sg::Model::infinite_range();
  } else if (raw.model == "nn") {
    config.model = sg::Model::nearest_neighbour();
  } else if (raw.model == "pl") {
    config.model = sg::Model::power_law(parse_sigma(raw.sigma));
  } else {
    throw sg::InvalidArgument("unknown model '" + raw.model + "'");
  }
  config.sizes = parse_sizes(raw.sizes);
  config.m = raw.m;
  config.samples = raw.samples;
  config.seed = raw.seed;
  config.pairs = raw.pairs == "single" ? sg::PairPolicy::SinglePair : sg::PairPolicy::AllPairs;
  config.out = raw.out;
  for (const auto& s : split(raw.sigmas, ',')) config.sigmas.push_back(parse_sigma(s));
  if (raw.target == "eigenstates") {
    config.target = sg::ScalingTarget::Eigenstates;
  } else if (raw.target == "random") {
    config.target = sg::ScalingTarget::Random;
  } else if (raw.target == "random-promoted") {
    config.target = sg::ScalingTarget::RandomPromoted;
  } else {
    throw sg::InvalidArgument("unknown target '" + raw.target + "'");
  }
  config.analysis.degtol = raw.degtol;
  config.analysis.ladder.ladder_tol = raw.ladder_tol;
  config.workers = sg::worker_count();
  config.validate();
  return config;
}

void add_common(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--model", raw.model, "Coupling model")->check(CLI::IsMember({"ir", "nn", "pl"}));
  cmd->add_option("--sigma", raw.sigma, "Power-law exponent (float or inf)");
  cmd->add_option("-L", raw.sizes, "System size, list (8,12) or range (8..40:4)");
  cmd->add_option("-m", raw.m, "Number of up spins");
  cmd->add_option("--samples", raw.samples, "Disorder samples or ensemble draws");
  cmd->add_option("--seed", raw.seed, "Master seed");
  cmd->add_option("--pairs", raw.pairs, "Pair policy")->check(CLI::IsMember({"all", "single"}));
  cmd->add_option("--out", raw.out, "Output directory");
  cmd->add_option("--degtol", raw.degtol, "Degeneracy tolerance (default scales with |H|)");
  cmd->add_option("--ladder-tol", raw.ladder_tol, "Threshold on <sigma+ sigma-> for promoted states");
}

void print_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of definite-particle eigenstates in quantum spin glasses"};
  app.set_version_flag("--version", sg::version());
  app.require_subcommand(1);

  RawOptions raw;
  auto* spectrum = app.add_subcommand("spectrum", "Per-eigenstate report of sector m for each sample");
  auto* phase = app.add_subcommand("phase-diagram", "Pooled (C, PR, promoted) scatter for each sigma");
  auto* scaling = app.add_subcommand("scaling", "<C>(L) and P(C>0)(L) with fits");
  auto* couplings = app.add_subcommand("couplings", "Write the sampled coupling matrices");
  auto* verify = app.add_subcommand("verify", "Run the small-L invariant and oracle checks");
  for (auto* cmd : {spectrum, phase, scaling, couplings}) add_common(cmd, raw);
  phase->add_option("--sigmas", raw.sigmas, "Comma-separated sigma values (inf = nearest neighbour)");
  scaling->add_option("--target", raw.target, "What to sample")
      ->check(CLI::IsMember({"eigenstates", "random", "random-promoted"}));
  verify->add_option("--seed", raw.seed, "Seed for the randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed()) {
      sg::VerifyOptions options;
      options.seed = raw.seed;
      const auto checks = sg::cmd_verify(options);
      std::cout << sg::format_verify_report(checks);
      for (const auto& c : checks) {
        if (!c.passed) return kExitFailure;
      }
      return 0;
    }
    sg::ExperimentConfig config;
    try {
      config = to_config(raw);
    } catch (const sg::InvalidArgument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    }
    if (spectrum->parsed()) {
      print_files(sg::cmd_spectrum_report(config).files);
    } else if (phase->parsed()) {
      const auto summary = sg::cmd_phase_diagram(config);
      for (const auto& p : summary.points) {
        std::cout << "sigma=" << p.sigma << " promoted=" << p.promoted_states << " new=" << p.new_states
                  << " ratio=" << p.ratio << '\n';
      }
      print_files(summary.files);
    } else if (scaling->parsed()) {
      print_files(sg::cmd_scaling(config).files);
    } else if (couplings->parsed()) {
      print_files(sg::cmd_couplings(config));
    }
  } catch (const sg::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
