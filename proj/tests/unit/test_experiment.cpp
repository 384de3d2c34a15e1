#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spinglass/error.hpp"
#include "spinglass/experiment.hpp"
#include "spinglass/ladder.hpp"

using namespace spinglass;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("spinglass_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Replaces the shortcut by 2|z|, dropping the sqrt(v y) term.
double tampered_concurrence(const PairRDM& r) noexcept { return 2.0 * std::abs(r.z); }

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.sizes = {};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.sizes = {8};
  c.m = 9;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.m = 2;
  c.samples = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.samples = 1;
  c.sigmas = {-1.0};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("header echoes config, version and seed") {
  ExperimentConfig c;
  c.seed = 4242;
  c.model = Model::power_law(2.5);
  const auto h = output_header(c);
  CHECK(h.find("# spinglass " + version()) == 0);
  CHECK(h.find("\"seed\":4242") != std::string::npos);
  CHECK(h.find("\"sigma\":2.5") != std::string::npos);
  CHECK(h.find("# seed: 4242\n") != std::string::npos);
  c.workers = 7;
  CHECK(output_header(c) == h);
}

TEST_CASE("spectrum report for one infinite-range sample at L=25") {
  ExperimentConfig c;
  c.sizes = {25};
  c.m = 2;
  c.out = scratch("spectrum");
  const auto run = cmd_spectrum_report(c);
  REQUIRE(run.files.size() == 1);
  const auto rows = csv_rows(run.files[0]);
  CHECK(rows.size() == 300);
  CHECK(slurp(run.files[0]).find("index,eigenvalue,E_minus_SJ,avg_concurrence,PR,promoted,degenerate\n") !=
        std::string::npos);
  int promoted = 0, at_sj = 0;
  for (const auto& r : rows) {
    REQUIRE(r.size() == 7);
    if (r[5] == "1") {
      ++promoted;
      if (std::abs(std::stod(r[2])) <= 1e-9) ++at_sj;
    }
  }
  CHECK(promoted == 25);
  CHECK(at_sj == 1);
}

TEST_CASE("one-particle PR is bounded by L") {
  ExperimentConfig c;
  c.sizes = {12};
  c.m = 1;
  c.samples = 3;
  c.out = scratch("pr");
  for (const auto& f : cmd_spectrum_report(c).files) {
    for (const auto& r : csv_rows(f)) {
      CHECK(std::stod(r[4]) <= 12.0 + 1e-9);
      CHECK(std::stod(r[4]) >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("phase diagram rows and sigma dispatch") {
  ExperimentConfig c;
  c.sizes = {10};
  c.samples = 4;
  c.sigmas = {0.0, std::numeric_limits<double>::infinity()};
  c.out = scratch("phase");
  const auto run = cmd_phase_diagram(c);
  REQUIRE(run.points.size() == 2);
  for (const auto& p : run.points) {
    CHECK(p.rows == 4 * 45);
    for (const auto n : p.promoted_per_sample) CHECK(n == 10);
  }
  CHECK(csv_rows(c.out / "phase_sigma_inf.csv").size() == 180);
  CHECK(slurp(c.out / "phase_sigma_inf.csv").find("model: nn") != std::string::npos);
  CHECK(slurp(c.out / "phase_sigma_0.csv").find("model: pl") != std::string::npos);
  CHECK(fs::exists(c.out / "phase_summary.json"));
}

TEST_CASE("scaling outputs and bound overlay") {
  ExperimentConfig c;
  c.sizes = {8, 10, 12, 14};
  c.samples = 200;
  c.target = ScalingTarget::RandomPromoted;
  c.out = scratch("scaling");
  const auto run = cmd_scaling(c);
  CHECK(run.curve.size() == 4);
  CHECK(run.fits.contains("mean_C"));
  CHECK(run.fits["mean_C"]["unweighted"]["family"] == "power_law");
  CHECK(run.fits["P(C>0)"]["unweighted"]["family"] == "power_offset");
  const auto refs = csv_rows(c.out / "scaling_references.csv");
  REQUIRE(refs.size() == 4);
  for (const auto& r : refs) {
    const int L = std::stoi(r[0]);
    CHECK(std::stod(r[1]) == localized_promotion_bound(L).average_concurrence);
  }
  CHECK(csv_rows(c.out / "scaling_random-promoted.csv").size() == 12);

  c.sizes = {4, 8, 10, 12};
  CHECK_THROWS_AS(cmd_scaling(c), InvalidArgument);
}

TEST_CASE("nearest-neighbour eigenstate P(C>0) increases with L") {
  ExperimentConfig c;
  c.model = Model::nearest_neighbour();
  c.sizes = {8, 10, 12, 14, 16};
  c.samples = 100;
  c.target = ScalingTarget::Eigenstates;
  c.out = scratch("nn");
  const auto run = cmd_scaling(c);
  for (std::size_t k = 1; k < run.curve.size(); ++k) {
    CHECK(run.curve[k].probability.mean > run.curve[k - 1].probability.mean);
  }
  CHECK(run.fits["P(C>0)"]["unweighted"]["family"] == "exp_saturation");
}

TEST_CASE("reruns are byte-identical and independent of worker count") {
  ExperimentConfig c;
  c.model = Model::power_law(1.0);
  c.sizes = {8, 9};
  c.samples = 5;
  c.sigmas = {0.0, 2.5};
  std::map<std::string, std::string> first;
  for (const int workers : {1, 3}) {
    c.workers = workers;
    c.out = scratch("determinism");
    cmd_spectrum_report(c);
    cmd_phase_diagram(c);
    cmd_couplings(c);
    const auto snap = snapshot(c.out);
    if (first.empty()) {
      first = snap;
      CHECK(first.size() == 10 + 3 + 10);
    } else {
      CHECK(snap == first);
    }
  }
}

TEST_CASE("couplings command round-trips") {
  ExperimentConfig c;
  c.sizes = {6};
  c.samples = 2;
  c.out = scratch("couplings");
  const auto files = cmd_couplings(c);
  REQUIRE(files.size() == 2);
  std::ifstream is(files[1]);
  const auto J = read_couplings_csv(is, c.model, 0);
  CHECK(J.J == sample_couplings(c.model, 6, c.plan().sample_seed(1)).J);
}

TEST_CASE("verify passes and is reproducible") {
  const auto a = format_verify_report(cmd_verify());
  const auto b = format_verify_report(cmd_verify());
  CHECK(a == b);
  CHECK(a.find("FAIL") == std::string::npos);
  CHECK(a.find("checks passed") != std::string::npos);
}

TEST_CASE("verify catches a tampered concurrence formula") {
  VerifyOptions options;
  options.concurrence = &tampered_concurrence;
  const auto checks = cmd_verify(options);
  bool named = false;
  for (const auto& c : checks) {
    if (c.name == "concurrence_matches_wootters") {
      CHECK_FALSE(c.passed);
      named = true;
    }
  }
  CHECK(named);
  CHECK(format_verify_report(checks).find("FAIL concurrence_matches_wootters") != std::string::npos);
}
