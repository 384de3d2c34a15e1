#include <cmath>
#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinglass/analysis.hpp"
#include "spinglass/ensembles.hpp"
#include "spinglass/error.hpp"
#include "spinglass/experiment.hpp"
#include "spinglass/fitting.hpp"
#include "spinglass/ladder.hpp"
#include "spinglass/parallel.hpp"
#include "spinglass/sector.hpp"
#include "spinglass/spectrum.hpp"

namespace py = pybind11;
using namespace spinglass;

namespace {

py::int_ to_python(Pattern p) {
  const auto lo = static_cast<std::uint64_t>(p);
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  return py::int_((py::int_(hi) << py::int_(64)) | py::int_(lo));
}

Pattern from_python(const py::int_& value) {
  const py::int_ mask(~std::uint64_t{0});
  const auto lo = (value & mask).cast<std::uint64_t>();
  const auto hi = ((value >> py::int_(64)) & mask).cast<std::uint64_t>();
  return (Pattern(hi) << 64) | lo;
}

using BasisHandle = std::shared_ptr<SectorBasis>;

BasisHandle handle(const BasisPtr& basis) { return std::const_pointer_cast<SectorBasis>(basis); }

py::object json_to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict estimate_dict(const MCEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.standard_error;
  d["samples"] = e.samples;
  return d;
}

EnsembleKind kind_of(const std::string& name) {
  if (name == "random-1p") return EnsembleKind::Random1p;
  if (name == "random-2p") return EnsembleKind::Random2p;
  if (name == "random-promoted-2p") return EnsembleKind::RandomPromoted2p;
  throw InvalidArgument("unknown ensemble '" + name + "' (random-1p, random-2p, random-promoted-2p)");
}

FitFamily family_of(const std::string& name) {
  if (name == "power_offset") return FitFamily::PowerOffset;
  if (name == "exp_saturation") return FitFamily::ExpSaturation;
  if (name == "power_law") return FitFamily::PowerLaw;
  throw InvalidArgument("unknown fit family '" + name + "' (power_offset, exp_saturation, power_law)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Definite-particle sectors, promotion and pair entanglement of quantum spin glasses";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DimensionOverflow>(m, "DimensionOverflow", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ZeroPromotion>(m, "ZeroPromotion", base.ptr());

  m.def("version", &version);

  py::class_<Model>(m, "Model")
      .def_static("infinite_range", &Model::infinite_range)
      .def_static("nearest_neighbour", &Model::nearest_neighbour)
      .def_static("power_law", &Model::power_law, py::arg("sigma"))
      .def_property_readonly("name", &Model::name)
      .def_readonly("sigma", &Model::sigma)
      .def("__eq__", [](const Model& a, const Model& b) { return a == b; })
      .def("__repr__", [](const Model& model) { return "Model(" + model.name() + ")"; });

  py::class_<CouplingMatrix>(m, "CouplingMatrix")
      .def_readonly("L", &CouplingMatrix::L)
      .def_readonly("J", &CouplingMatrix::J)
      .def_readonly("model", &CouplingMatrix::model)
      .def_readonly("seed", &CouplingMatrix::seed)
      .def_property_readonly("coupling_sum", [](const CouplingMatrix& J) { return coupling_sum(J); });

  m.def("sample_couplings", &sample_couplings, py::arg("model"), py::arg("L"), py::arg("seed"));

  py::class_<SectorBasis, BasisHandle>(m, "SectorBasis")
      .def(py::init([](int L, int m) { return handle(build_basis(L, m)); }), py::arg("L"), py::arg("m"))
      .def_property_readonly("L", &SectorBasis::qubits)
      .def_property_readonly("m", &SectorBasis::particles)
      .def("__len__", &SectorBasis::size)
      .def("__getitem__",
           [](const SectorBasis& b, std::size_t k) {
             if (k >= b.size()) throw py::index_error();
             return to_python(b[k]);
           })
      .def("rank", [](const SectorBasis& b, const py::int_& p) { return b.rank(from_python(p)); })
      .def("states", [](const SectorBasis& b) {
        py::list out;
        for (const Pattern p : b.states()) out.append(to_python(p));
        return out;
      });

  py::class_<SectorMatrix>(m, "SectorMatrix")
      .def_readonly("H", &SectorMatrix::H)
      .def_readonly("coupling_sum", &SectorMatrix::coupling_sum)
      .def_property_readonly("basis", [](const SectorMatrix& M) { return handle(M.basis); });

  m.def("assemble", [](const CouplingMatrix& J, int particles) { return assemble(J, build_basis(J.L, particles)); },
        py::arg("couplings"), py::arg("m"), "Hamiltonian block of the m-particle sector.");

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("eigenvectors", &Spectrum::eigenvectors)
      .def_readonly("degtol", &Spectrum::degtol)
      .def_property_readonly("groups", [](const Spectrum& s) {
        py::list out;
        for (const auto& g : s.groups) out.append(py::make_tuple(g.begin, g.end));
        return out;
      });

  m.def("diagonalize", py::overload_cast<const Eigen::MatrixXd&, std::optional<double>>(&diagonalize),
        py::arg("H"), py::arg("degtol") = py::none());

  py::class_<PairRDM>(m, "PairRDM")
      .def_readonly("i", &PairRDM::i)
      .def_readonly("j", &PairRDM::j)
      .def_readonly("v", &PairRDM::v)
      .def_readonly("w", &PairRDM::w)
      .def_readonly("x", &PairRDM::x)
      .def_readonly("y", &PairRDM::y)
      .def_readonly("z", &PairRDM::z)
      .def("matrix", &PairRDM::matrix)
      .def_property_readonly("concurrence", [](const PairRDM& r) { return concurrence(r); });

  m.def("pair_rdm", py::overload_cast<const SectorBasis&, const VectorRef&, int, int>(&pair_rdm), py::arg("basis"),
        py::arg("a"), py::arg("i"), py::arg("j"));
  m.def("all_pair_rdms", &all_pair_rdms, py::arg("basis"), py::arg("a"));
  m.def("concurrence", [](const PairRDM& r) { return concurrence(r); });
  m.def(
      "pair_statistics",
      [](const SectorBasis& basis, const Eigen::VectorXd& a) {
        const auto s = pair_statistics(basis, a);
        return py::make_tuple(s.average_concurrence, s.entangled_fraction);
      },
      py::arg("basis"), py::arg("a"), "(average concurrence over all pairs, fraction of pairs with C > 0)");
  m.def("inverse_participation_ratio", [](const Eigen::VectorXd& a) { return inverse_participation_ratio(a); });
  m.def("participation_ratio", [](const Eigen::VectorXd& a) { return participation_ratio(a); });

  m.def(
      "promote",
      [](const BasisHandle& basis, const Eigen::VectorXd& a) {
        return Eigen::VectorXd(promote(DefiniteParticleState(basis, a)).coefficients());
      },
      py::arg("basis"), py::arg("a"), "Normalized sigma+ image in the (L, m+1) sector.");

  m.def(
      "analyze_sector",
      [](const CouplingMatrix& J, int particles, std::optional<double> degtol, double ladder_tol, double band) {
        AnalysisOptions options;
        options.degtol = degtol;
        options.ladder = {ladder_tol, band};
        const auto a = analyze_sector(J, particles, options);
        py::list rows;
        for (const auto& r : a.reports) {
          py::dict d;
          d["index"] = r.index;
          d["eigenvalue"] = r.eigenvalue ? py::cast(*r.eigenvalue) : py::none();
          d["E_minus_SJ"] = r.eigenvalue_shift;
          d["avg_concurrence"] = r.average_concurrence;
          d["PR"] = r.participation_ratio;
          d["promoted"] = r.promoted;
          d["degenerate"] = r.degenerate;
          rows.append(d);
        }
        py::dict out;
        out["states"] = rows;
        out["eigenvalues"] = a.spectrum.eigenvalues;
        out["eigenvectors"] = a.spectrum.eigenvectors;
        out["promoted"] = a.classification.promoted;
        out["new"] = a.classification.fresh;
        out["ambiguous"] = a.classification.ambiguous;
        return out;
      },
      py::arg("couplings"), py::arg("m"), py::arg("degtol") = py::none(), py::arg("ladder_tol") = 0.5,
      py::arg("ambiguity_band") = 0.25);

  m.def(
      "estimate",
      [](const std::string& kind, int L, std::size_t samples, std::uint64_t seed, const std::string& pairs,
         bool zero_sum, std::optional<int> workers) {
        EnsembleSpec spec;
        spec.kind = kind_of(kind);
        spec.L = L;
        spec.samples = samples;
        spec.seed = seed;
        if (pairs != "single" && pairs != "all") throw InvalidArgument("pairs must be 'single' or 'all'");
        spec.pairs = pairs == "single" ? PairPolicy::SinglePair : PairPolicy::AllPairs;
        spec.zero_sum = zero_sum;
        EnsembleEstimates e;
        {
          py::gil_scoped_release release;
          e = estimate_all(spec, workers.value_or(worker_count()));
        }
        py::dict out;
        out["P(C>0)"] = estimate_dict(e.probability);
        out["mean_C"] = estimate_dict(e.concurrence);
        out["mean_IPR"] = estimate_dict(e.ipr);
        return out;
      },
      py::arg("kind"), py::arg("L"), py::arg("samples"), py::arg("seed"), py::arg("pairs") = "single",
      py::arg("zero_sum") = false, py::arg("workers") = py::none());

  m.def("closed_forms", [](int L) {
    const auto r = closed_forms(L);
    py::dict d;
    d["asymptotic_probability"] = r.asymptotic_probability;
    d["promoted_concurrence"] = r.promoted_concurrence;
    d["random2p_concurrence"] = r.random2p_concurrence;
    d["random2p_z_squared"] = r.random2p_z_squared;
    d["random1p_ipr"] = r.random1p_ipr;
    d["promoted2p_ipr"] = r.promoted2p_ipr;
    d["all_one_1p_concurrence"] = r.all_one_1p_concurrence;
    d["all_one_2p_concurrence"] = r.all_one_2p_concurrence;
    d["localized_bound"] = r.localized_bound;
    return d;
  });

  m.def(
      "fit",
      [](const std::string& family, const std::vector<double>& L, const std::vector<double>& values,
         std::optional<std::vector<double>> sigmas, bool weighted, double min_L) {
        if (L.size() != values.size() || (sigmas && sigmas->size() != L.size())) {
          throw InvalidArgument("fit: L, values and sigmas must have equal length");
        }
        std::vector<DataPoint> data;
        for (std::size_t k = 0; k < L.size(); ++k) {
          data.push_back({L[k], values[k], sigmas ? std::optional((*sigmas)[k]) : std::nullopt});
        }
        FitOptions options;
        options.weighted = weighted;
        options.min_L = min_L;
        return json_to_python(to_json(fit(family_of(family), data, options)));
      },
      py::arg("family"), py::arg("L"), py::arg("values"), py::arg("sigmas") = py::none(), py::arg("weighted") = false,
      py::arg("min_L") = 8.0);

  m.def(
      "verify",
      [](std::uint64_t seed) {
        VerifyOptions options;
        options.seed = seed;
        py::list out;
        for (const auto& c : cmd_verify(options)) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
      },
      py::arg("seed") = 1, "Runs the built-in invariant checks; returns (name, passed, detail) tuples.");
}
