#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sshlab/config.hpp"
#include "sshlab/dynamics.hpp"
#include "sshlab/error.hpp"
#include "sshlab/experiment.hpp"
#include "sshlab/expm.hpp"
#include "sshlab/lattice.hpp"
#include "sshlab/scatter.hpp"
#include "sshlab/spectral.hpp"

namespace py = pybind11;
using namespace sshlab;

namespace {

EdgeSide side_arg(const std::string& s) { return edge_side_from_string(s); }

void bind_lattice(py::module_& m) {
  py::class_<HybridChainSpec>(m, "HybridChainSpec")
      .def(py::init<>())
      .def(py::init([](int n_sites, double v, double w, double u_re, double u_im, int first, int last) {
             HybridChainSpec s{n_sites, v, w, u_re, u_im, first, last};
             s.validate();
             return s;
           }),
           py::arg("n_sites"), py::arg("v"), py::arg("w"), py::arg("u_re") = 0.0, py::arg("u_im") = 0.0,
           py::arg("pt_first_site") = 1, py::arg("pt_last_site") = 2)
      .def_readwrite("n_sites", &HybridChainSpec::n_sites)
      .def_readwrite("v", &HybridChainSpec::v)
      .def_readwrite("w", &HybridChainSpec::w)
      .def_readwrite("u_re", &HybridChainSpec::u_re)
      .def_readwrite("u_im", &HybridChainSpec::u_im)
      .def_readwrite("pt_first_site", &HybridChainSpec::pt_first_site)
      .def_readwrite("pt_last_site", &HybridChainSpec::pt_last_site)
      .def("validate", &HybridChainSpec::validate)
      .def("to_config", [](const HybridChainSpec& s) { return serialize_chain(s); })
      .def_static("from_config", [](const std::string& text) { return parse_chain(text); })
      .def(py::self == py::self)
      .def("__repr__", [](const HybridChainSpec& s) {
        return "HybridChainSpec(n_sites=" + std::to_string(s.n_sites) + ", v=" + format_double(s.v) +
               ", w=" + format_double(s.w) + ", u_re=" + format_double(s.u_re) + ", u_im=" +
               format_double(s.u_im) + ", pt_first_site=" + std::to_string(s.pt_first_site) +
               ", pt_last_site=" + std::to_string(s.pt_last_site) + ")";
      });

  m.def("reference_chain", &reference_chain, py::arg("v"));
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("spec"));
  m.def("pt_symmetry_check", &pt_symmetry_check, py::arg("h"), py::arg("spec"), py::arg("tol") = 0.0);
}

void bind_spectral(py::module_& m) {
  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("right", &SpectralDecomposition::right)
      .def_readonly("left", &SpectralDecomposition::left)
      .def_readonly("defective", &SpectralDecomposition::defective)
      .def_readonly("max_residual", &SpectralDecomposition::max_residual)
      .def("__len__", &SpectralDecomposition::size);

  m.def(
      "decompose",
      [](const ComplexMatrix& h, bool with_left) { return decompose(h, with_left); },
      py::arg("h"), py::arg("with_left") = false);

  py::class_<EdgeStateReport>(m, "EdgeStateReport")
      .def_readonly("index", &EdgeStateReport::index)
      .def_readonly("energy", &EdgeStateReport::energy)
      .def_property_readonly("side", [](const EdgeStateReport& r) { return to_string(r.side); })
      .def_readonly("edge_weight", &EdgeStateReport::edge_weight)
      .def_readonly("ipr", &EdgeStateReport::ipr)
      .def_readonly("amplitudes", &EdgeStateReport::amplitudes);

  m.def(
      "find_edge_states",
      [](const SpectralDecomposition& dec, double energy_tol, int n_edge) {
        return find_edge_states(dec, {energy_tol, n_edge, 0.5});
      },
      py::arg("dec"), py::arg("energy_tol") = 1e-6, py::arg("n_edge") = 10);
  m.def(
      "edge_overlap",
      [](const SpectralDecomposition& a, const SpectralDecomposition& b, const std::string& side,
         double energy_tol) { return edge_overlap(a, b, side_arg(side), {energy_tol, 10, 0.5}); },
      py::arg("dec_hybrid"), py::arg("dec_plain"), py::arg("side"), py::arg("energy_tol") = 1e-6);

  py::class_<BandSweepRow>(m, "BandSweepRow")
      .def_readonly("v", &BandSweepRow::v)
      .def_readonly("eigenvalues", &BandSweepRow::eigenvalues);
  py::class_<BandSweepTable>(m, "BandSweepTable")
      .def_readonly("base", &BandSweepTable::base)
      .def_readonly("rows", &BandSweepTable::rows);
  m.def("band_sweep", &band_sweep, py::arg("base"), py::arg("v_values"), py::arg("threads") = 1);
}

void bind_dynamics(py::module_& m) {
  m.def("expm", [](const ComplexMatrix& a) { return expm(a); }, py::arg("a"));
  m.def("uniform_times", &uniform_times, py::arg("t_max"), py::arg("n_samples"));
  m.def(
      "propagate_expm",
      [](const ComplexMatrix& h, const ComplexVector& psi0, const std::vector<double>& times) {
        return propagate_expm(h, psi0, times);
      },
      py::arg("h"), py::arg("psi0"), py::arg("times"));
  m.def("propagate_spectral", &propagate_spectral, py::arg("dec"), py::arg("psi0"), py::arg("times"));

  py::class_<QuenchProtocol>(m, "QuenchProtocol")
      .def_readwrite("pre_spec", &QuenchProtocol::pre_spec)
      .def_readwrite("post_spec", &QuenchProtocol::post_spec)
      .def_property(
          "initial_side", [](const QuenchProtocol& p) { return to_string(p.initial_side); },
          [](QuenchProtocol& p, const std::string& s) { p.initial_side = side_arg(s); })
      .def_readwrite("t_max", &QuenchProtocol::t_max)
      .def_readwrite("n_time_steps", &QuenchProtocol::n_time_steps);
  m.def(
      "make_quench",
      [](const HybridChainSpec& pre, double v_post, const std::string& side, double t_max, int n) {
        return make_quench(pre, v_post, side_arg(side), t_max, n);
      },
      py::arg("pre"), py::arg("v_post"), py::arg("side"), py::arg("t_max") = 0.0,
      py::arg("n_time_steps") = 601);
  m.def(
      "reference_quench", [](const std::string& side) { return reference_quench(side_arg(side)); },
      py::arg("side"));

  py::class_<LightCone>(m, "LightCone")
      .def_readonly("times", &LightCone::times)
      .def_readonly("density", &LightCone::density)
      .def_readonly("norm_series", &LightCone::norm_series)
      .def_readonly("protocol", &LightCone::protocol);
  m.def("run_quench", &run_quench, py::arg("protocol"));

  py::class_<ReflectionSignal>(m, "ReflectionSignal")
      .def_readonly("site", &ReflectionSignal::site)
      .def_readonly("series", &ReflectionSignal::series)
      .def_readonly("dip_interval", &ReflectionSignal::dip_interval)
      .def_readonly("reemergence_peak", &ReflectionSignal::reemergence_peak);
  m.def("reflection_signal", &reflection_signal, py::arg("cone"), py::arg("site"),
        py::arg("dip_fraction") = 0.01);
  m.def("front_speed", &front_speed, py::arg("cone"), py::arg("front_fraction") = 0.01);
}

void bind_scatter(py::module_& m) {
  py::class_<PotentialSlab>(m, "PotentialSlab")
      .def(py::init([](cplx potential, double length) { return PotentialSlab{potential, length}; }),
           py::arg("potential"), py::arg("length"))
      .def_readwrite("potential", &PotentialSlab::potential)
      .def_readwrite("length", &PotentialSlab::length);
  py::class_<PotentialStack>(m, "PotentialStack")
      .def(py::init([](std::vector<PotentialSlab> slabs) {
             PotentialStack s;
             s.slabs = std::move(slabs);
             s.validate();
             return s;
           }),
           py::arg("slabs"))
      .def_readonly("slabs", &PotentialStack::slabs)
      .def_readonly("n_blocks", &PotentialStack::n_blocks)
      .def("reversed", &PotentialStack::reversed);
  py::class_<StackSpec>(m, "StackSpec")
      .def(py::init([](int n_blocks, double l_a, double l_b, double u_re, double u_im) {
             StackSpec s{n_blocks, l_a, l_b, u_re, u_im};
             s.validate();
             return s;
           }),
           py::arg("n_blocks") = 10, py::arg("l_a") = 6.0, py::arg("l_b") = 10.0, py::arg("u_re") = -0.3,
           py::arg("u_im") = 0.1)
      .def_readwrite("n_blocks", &StackSpec::n_blocks)
      .def_readwrite("l_a", &StackSpec::l_a)
      .def_readwrite("l_b", &StackSpec::l_b)
      .def_readwrite("u_re", &StackSpec::u_re)
      .def_readwrite("u_im", &StackSpec::u_im)
      .def("build", &StackSpec::build)
      .def("to_config", [](const StackSpec& s) { return serialize_stack(s); })
      .def_static("from_config", [](const std::string& text) { return parse_stack(text); });

  py::class_<ScatteringResult>(m, "ScatteringResult")
      .def_readonly("energy", &ScatteringResult::energy)
      .def_readonly("s11", &ScatteringResult::s11)
      .def_readonly("s12", &ScatteringResult::s12)
      .def_readonly("s21", &ScatteringResult::s21)
      .def_readonly("s22", &ScatteringResult::s22)
      .def_readonly("r_left", &ScatteringResult::r_left)
      .def_readonly("r_right", &ScatteringResult::r_right)
      .def_readonly("transmission", &ScatteringResult::transmission);
  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("energy", &SweepPoint::energy)
      .def_readonly("result", &SweepPoint::result)
      .def_readonly("error", &SweepPoint::error);

  m.def("slab_transfer", &slab_transfer, py::arg("slab"), py::arg("energy"));
  m.def("stack_transfer", &stack_transfer, py::arg("stack"), py::arg("energy"));
  m.def("scattering_matrix", &scattering_matrix, py::arg("t"), py::arg("energy") = 0.0);
  m.def("reflection_sweep", &reflection_sweep, py::arg("stack"), py::arg("energies"),
        py::arg("threads") = 1);
  m.def("reference_energy_grid", &reference_energy_grid);
}

void bind_experiment(py::module_& m) {
  m.def(
      "run_config",
      [](const std::string& text, const std::filesystem::path& output_dir, int threads) {
        auto cfg = parse_config(text);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        const auto report = run_experiment(cfg, {threads});
        py::list files;
        for (const auto& f : report.files) files.append(py::make_tuple(f.path.generic_string(), f.sha256));
        return py::make_tuple(files, report.summary.dump());
      },
      py::arg("config_text"), py::arg("output_dir") = std::filesystem::path{}, py::arg("threads") = 1,
      "Run an experiment config; returns ([(path, sha256), ...], summary_json).");
}

}  // namespace

PYBIND11_MODULE(_sshlab, m) {
  m.doc() = "SSH chain with an embedded PT-symmetric segment: spectra, quench dynamics, scattering.";

  auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);
  (void)validation;

  bind_lattice(m);
  bind_spectral(m);
  bind_dynamics(m);
  bind_scatter(m);
  bind_experiment(m);
}
