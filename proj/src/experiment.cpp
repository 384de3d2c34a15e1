#include "spinglass/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "spinglass/error.hpp"
#include "spinglass/format.hpp"
#include "spinglass/parallel.hpp"
#include "spinglass/rng.hpp"

#ifndef SPINGLASS_VERSION
#define SPINGLASS_VERSION "0.0.0"
#endif

namespace spinglass {

std::string version() { return SPINGLASS_VERSION; }

std::string to_string(ScalingTarget target) {
  switch (target) {
    case ScalingTarget::Eigenstates: return "eigenstates";
    case ScalingTarget::Random: return "random";
    case ScalingTarget::RandomPromoted: return "random-promoted";
  }
  return "unknown";
}

namespace {

nlohmann::json sigma_json(double sigma) {
  if (std::isinf(sigma)) return "inf";
  return sigma;
}

std::string sigma_label(double sigma) { return std::isinf(sigma) ? "inf" : format_double(sigma); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw Error("failed writing " + path.string());
}

}  // namespace

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw InvalidArgument("at least one system size L is required");
  for (const int L : sizes) {
    if (L < 2 || L > kMaxQubits) throw InvalidArgument("L=" + std::to_string(L) + " outside [2, 128]");
    if (m < 0 || m > L) throw InvalidArgument("m=" + std::to_string(m) + " outside [0, L=" + std::to_string(L) + "]");
  }
  if (samples < 1) throw InvalidArgument("--samples must be >= 1");
  if (model.family == ModelFamily::PowerLaw && !(model.sigma >= 0.0)) {
    throw InvalidArgument("--sigma must be >= 0 for the power-law model");
  }
  for (const double s : sigmas) {
    if (std::isnan(s) || s < 0.0) throw InvalidArgument("sigma values must be >= 0 or inf");
  }
  if (analysis.degtol && !(*analysis.degtol >= 0.0)) throw InvalidArgument("--degtol must be >= 0");
  if (!(analysis.ladder.ladder_tol > 0.0)) throw InvalidArgument("--ladder-tol must be > 0");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["model"] = model.name();
  j["sigma"] = model.family == ModelFamily::PowerLaw
                   ? nlohmann::json(model.sigma)
                   : (model.family == ModelFamily::NearestNeighbour ? nlohmann::json("inf") : nlohmann::json(0.0));
  j["L"] = sizes;
  j["m"] = m;
  j["samples"] = samples;
  j["seed"] = seed;
  j["pairs"] = to_string(pairs);
  j["degtol"] = analysis.degtol ? nlohmann::json(*analysis.degtol) : nlohmann::json("auto");
  j["ladder_tol"] = analysis.ladder.ladder_tol;
  j["ambiguity_band"] = analysis.ladder.ambiguity_band;
  nlohmann::json sig = nlohmann::json::array();
  for (const double s : sigmas) sig.push_back(sigma_json(s));
  j["sigmas"] = sig;
  j["target"] = to_string(target);
  return j;
}

DisorderPlan ExperimentConfig::plan() const { return {model, sizes, samples, seed}; }

std::string output_header(const ExperimentConfig& config) {
  std::ostringstream os;
  os << "# spinglass " << version() << '\n';
  os << "# config: " << config.to_json().dump() << '\n';
  os << "# seed: " << config.seed << '\n';
  return os.str();
}

void write_state_report_header(std::ostream& os) {
  os << "index,eigenvalue,E_minus_SJ,avg_concurrence,PR,promoted,degenerate\n";
}

void write_state_report_row(std::ostream& os, const StateReport& row) {
  os << row.index << ',' << (row.eigenvalue ? format_double(*row.eigenvalue) : std::string()) << ','
     << format_double(row.eigenvalue_shift) << ',' << format_double(row.average_concurrence) << ','
     << format_double(row.participation_ratio) << ',' << row.promoted << ',' << (row.degenerate ? 1 : 0) << '\n';
}

SpectrumRunSummary cmd_spectrum_report(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out);
  const auto plan = config.plan();
  const std::string header = output_header(config);
  SpectrumRunSummary summary;
  for (const int L : config.sizes) {
    const auto n = static_cast<std::size_t>(config.samples);
    std::vector<std::string> texts(n);
    std::vector<std::vector<StateReport>> reports(n);
    parallel_for(
        n,
        [&](std::size_t s) {
          const auto J = sample_couplings(config.model, L, plan.sample_seed(s));
          auto analysis = analyze_sector(J, config.m, config.analysis);
          std::ostringstream os;
          os << header;
          os << "# L: " << L << ", m: " << config.m << ", sample: " << s << ", sample_seed: " << J.seed
             << ", S_J: " << format_double(analysis.matrix.coupling_sum) << '\n';
          write_state_report_header(os);
          for (const auto& row : analysis.reports) write_state_report_row(os, row);
          texts[s] = os.str();
          reports[s] = std::move(analysis.reports);
        },
        config.workers);
    for (std::size_t s = 0; s < n; ++s) {
      std::ostringstream name;
      name << "spectrum_L" << L << "_m" << config.m << "_sample" << s << ".csv";
      const auto path = config.out / name.str();
      write_file(path, texts[s]);
      summary.files.push_back(path);
      summary.samples.push_back(std::move(reports[s]));
    }
  }
  return summary;
}

PhaseDiagramSummary cmd_phase_diagram(const ExperimentConfig& config) {
  config.validate();
  if (config.sigmas.empty()) throw InvalidArgument("phase diagram needs at least one sigma");
  std::filesystem::create_directories(config.out);
  const int L = config.sizes.front();
  const auto n = static_cast<std::size_t>(config.samples);
  const auto plan = config.plan();
  const std::string header = output_header(config);
  PhaseDiagramSummary summary;
  nlohmann::json json_summary = nlohmann::json::array();

  for (const double sigma : config.sigmas) {
    const Model model = Model::power_law(sigma);
    std::vector<std::vector<StateReport>> reports(n);
    parallel_for(
        n,
        [&](std::size_t s) {
          const auto J = sample_couplings(model, L, plan.sample_seed(s));
          reports[s] = analyze_sector(J, config.m, config.analysis).reports;
        },
        config.workers);

    PhasePoint point;
    point.sigma = sigma;
    std::vector<double> promoted_c, new_c;
    std::ostringstream os;
    os << header << "# L: " << L << ", m: " << config.m << ", sigma: " << sigma_label(sigma)
       << ", model: " << model.name() << '\n';
    os << "sample,index,avg_concurrence,PR,promoted,degenerate\n";
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t promoted_here = 0;
      for (const auto& row : reports[s]) {
        os << s << ',' << row.index << ',' << format_double(row.average_concurrence) << ','
           << format_double(row.participation_ratio) << ',' << row.promoted << ',' << (row.degenerate ? 1 : 0)
           << '\n';
        ++point.rows;
        if (row.promoted == 1) {
          promoted_c.push_back(row.average_concurrence);
          ++promoted_here;
        } else if (row.promoted == 0) {
          new_c.push_back(row.average_concurrence);
        }
      }
      point.promoted_per_sample.push_back(promoted_here);
    }
    point.promoted_states = promoted_c.size();
    point.new_states = new_c.size();
    point.promoted_mean_concurrence =
        promoted_c.empty() ? 0.0 : pairwise_sum(promoted_c) / static_cast<double>(promoted_c.size());
    point.new_mean_concurrence = new_c.empty() ? 0.0 : pairwise_sum(new_c) / static_cast<double>(new_c.size());
    point.ratio = point.new_mean_concurrence > 0.0 ? point.promoted_mean_concurrence / point.new_mean_concurrence
                                                   : std::numeric_limits<double>::infinity();

    const auto path = config.out / ("phase_sigma_" + sigma_label(sigma) + ".csv");
    write_file(path, os.str());
    summary.files.push_back(path);
    json_summary.push_back({{"sigma", sigma_json(sigma)},
                            {"model", model.name()},
                            {"rows", point.rows},
                            {"promoted_states", point.promoted_states},
                            {"new_states", point.new_states},
                            {"promoted_mean_concurrence", point.promoted_mean_concurrence},
                            {"new_mean_concurrence", point.new_mean_concurrence},
                            {"ratio", std::isfinite(point.ratio) ? nlohmann::json(point.ratio) : nlohmann::json("inf")}});
    summary.points.push_back(std::move(point));
  }
  const auto path = config.out / "phase_summary.json";
  write_file(path, nlohmann::json{{"version", version()}, {"config", config.to_json()}, {"sigmas", json_summary}}
                           .dump(2) + "\n");
  summary.files.push_back(path);
  return summary;
}

namespace {

nlohmann::json fit_block(const std::vector<ScalingCurvePoint>& curve, bool probability, FitFamily family) {
  std::vector<DataPoint> data;
  for (const auto& p : curve) {
    const auto& e = probability ? p.probability : p.concurrence;
    data.push_back({static_cast<double>(p.L), e.mean, e.standard_error});
  }
  nlohmann::json j;
  j["family"] = to_string(family);
  try {
    const auto fits = scaling_pipeline(data, family);
    j["unweighted"] = to_json(fits.unweighted);
    if (fits.weighted) {
      j["weighted"] = to_json(*fits.weighted);
    } else {
      j["weighted"] = nullptr;
    }
  } catch (const Error& e) {
    j["error"] = e.what();
  }
  return j;
}

}  // namespace

ScalingSummary cmd_scaling(const ExperimentConfig& config) {
  config.validate();
  const auto usable = std::count_if(config.sizes.begin(), config.sizes.end(), [](int L) { return L >= 8; });
  if (usable < 4) throw InvalidArgument("scaling needs at least four sizes with L >= 8");
  if (config.target == ScalingTarget::Eigenstates && config.samples < 2) {
    throw InvalidArgument("scaling over eigenstates needs --samples >= 2 for error bars");
  }
  std::filesystem::create_directories(config.out);
  const std::string header = output_header(config);
  const auto plan = config.plan();
  ScalingSummary summary;

  std::string kind = to_string(config.target);
  std::string policy = to_string(config.pairs);
  if (config.target == ScalingTarget::Eigenstates) {
    kind = "promoted-eigenstates-" + config.model.name();
    policy = to_string(PairPolicy::AllPairs);
  }

  for (const int L : config.sizes) {
    ScalingCurvePoint point;
    point.L = L;
    if (config.target == ScalingTarget::Eigenstates) {
      const auto n = static_cast<std::size_t>(config.samples);
      std::vector<double> conc(n), prob(n), ipr(n);
      parallel_for(
          n,
          [&](std::size_t s) {
            const auto J = sample_couplings(config.model, L, plan.sample_seed(s));
            const auto stats = promoted_two_particle_statistics(J);
            const auto count = static_cast<double>(stats.average_concurrence.size());
            conc[s] = pairwise_sum(stats.average_concurrence) / count;
            prob[s] = pairwise_sum(stats.entangled_fraction) / count;
            ipr[s] = pairwise_sum(stats.ipr) / count;
          },
          config.workers);
      point.probability = summarize(Quantity::ProbPositiveC, prob);
      point.concurrence = summarize(Quantity::MeanC, conc);
      point.ipr = summarize(Quantity::MeanIPR, ipr);
    } else {
      EnsembleSpec spec;
      spec.kind = config.target == ScalingTarget::Random ? EnsembleKind::Random2p : EnsembleKind::RandomPromoted2p;
      spec.L = L;
      spec.samples = static_cast<std::size_t>(config.samples);
      spec.seed = derive_seed(config.seed, static_cast<std::uint64_t>(L));
      spec.pairs = config.pairs;
      const auto est = estimate_all(spec, config.workers);
      point.probability = est.probability;
      point.concurrence = est.concurrence;
      point.ipr = est.ipr;
    }
    summary.curve.push_back(point);
  }

  std::ostringstream curve_csv;
  curve_csv << header;
  write_estimate_header(curve_csv);
  for (const auto& p : summary.curve) {
    write_estimate_row(curve_csv, p.L, p.probability, kind, policy);
    write_estimate_row(curve_csv, p.L, p.concurrence, kind, policy);
    write_estimate_row(curve_csv, p.L, p.ipr, kind, policy);
  }
  const auto curve_path = config.out / ("scaling_" + to_string(config.target) + ".csv");
  write_file(curve_path, curve_csv.str());
  summary.files.push_back(curve_path);

  std::ostringstream refs;
  refs << header;
  refs << "L,localized_bound,promoted_analytic,random2p_analytic,asymptotic_P\n";
  for (const int L : config.sizes) {
    if (L < 3) continue;
    const auto r = closed_forms(L);
    refs << L << ',' << format_double(r.localized_bound) << ',' << format_double(r.promoted_concurrence) << ','
         << format_double(r.random2p_concurrence) << ',' << format_double(r.asymptotic_probability) << '\n';
  }
  const auto refs_path = config.out / "scaling_references.csv";
  write_file(refs_path, refs.str());
  summary.files.push_back(refs_path);

  const FitFamily prob_family =
      config.target == ScalingTarget::Eigenstates ? FitFamily::ExpSaturation : FitFamily::PowerOffset;
  summary.fits = nlohmann::json{{"version", version()},
                                {"config", config.to_json()},
                                {"kind", kind},
                                {"mean_C", fit_block(summary.curve, false, FitFamily::PowerLaw)},
                                {"P(C>0)", fit_block(summary.curve, true, prob_family)}};
  const auto fits_path = config.out / ("fits_" + to_string(config.target) + ".json");
  write_file(fits_path, summary.fits.dump(2) + "\n");
  summary.files.push_back(fits_path);
  return summary;
}

std::vector<std::filesystem::path> cmd_couplings(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out);
  const auto plan = config.plan();
  std::vector<std::filesystem::path> files;
  for (const int L : config.sizes) {
    for (int s = 0; s < config.samples; ++s) {
      const auto J = sample_couplings(config.model, L, plan.sample_seed(static_cast<std::uint64_t>(s)));
      std::ostringstream os;
      write_couplings_csv(os, J);
      const auto path = config.out / ("couplings_L" + std::to_string(L) + "_sample" + std::to_string(s) + ".csv");
      write_file(path, os.str());
      files.push_back(path);
    }
  }
  return files;
}

std::string format_verify_report(const std::vector<VerifyCheck>& checks) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (!c.passed) ++failed;
  }
  os << (failed == 0 ? "all " + std::to_string(checks.size()) + " checks passed"
                     : std::to_string(failed) + " of " + std::to_string(checks.size()) + " checks failed")
     << '\n';
  return os.str();
}

}  // namespace spinglass
