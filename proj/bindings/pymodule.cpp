// python bindings for the main operations; matrices cross as numpy arrays

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinchain/collective.hpp"
#include "spinchain/conservation.hpp"
#include "spinchain/verify.hpp"

namespace py = pybind11;
using namespace spinchain;

PYBIND11_MODULE(spinchain, m) {
  m.doc() = "decoherence functionals for occupation histories on a periodic spin chain";

  py::class_<ChainConfig>(m, "ChainConfig")
      .def(py::init([](int M, int M1, double chi, double t) {
             ChainConfig cfg{M, M1, chi, t};
             cfg.validate();
             return cfg;
           }),
           py::arg("M") = 1000, py::arg("M1") = 500, py::arg("chi") = 1.0,
           py::arg("t") = 1000.0)
      .def_readwrite("M", &ChainConfig::M)
      .def_readwrite("M1", &ChainConfig::M1)
      .def_readwrite("chi", &ChainConfig::chi)
      .def_readwrite("t", &ChainConfig::t)
      .def("m2", &ChainConfig::m2)
      .def("validate", &ChainConfig::validate);

  py::class_<PropagatorKernel>(m, "PropagatorKernel")
      .def_readonly("g", &PropagatorKernel::g)
      .def("M", &PropagatorKernel::M);

  py::class_<InitialPair>(m, "InitialPair")
      .def(py::init<int, int>(), py::arg("k1"), py::arg("k2"))
      .def_readwrite("k1", &InitialPair::k1)
      .def_readwrite("k2", &InitialPair::k2);

  py::class_<ComponentDF>(m, "ComponentDF")
      .def(py::init<>())
      .def_readwrite("p_yy", &ComponentDF::p_yy)
      .def_readwrite("p_ny", &ComponentDF::p_ny)
      .def_readwrite("p_yn", &ComponentDF::p_yn)
      .def_readwrite("p_nn", &ComponentDF::p_nn)
      .def_readwrite("d_yy_ny", &ComponentDF::d_yy_ny)
      .def_readwrite("d_ny_yy", &ComponentDF::d_ny_yy)
      .def_readwrite("d_yn_nn", &ComponentDF::d_yn_nn)
      .def_readwrite("d_nn_yn", &ComponentDF::d_nn_yn)
      .def("p0", &ComponentDF::p0)
      .def("pt", &ComponentDF::pt)
      .def("pbar0", &ComponentDF::pbar0)
      .def("pbart", &ComponentDF::pbart)
      .def("sum_rule_residual", &ComponentDF::sum_rule_residual)
      .def("antisym_residual", &ComponentDF::antisym_residual)
      .def("conj_residual", &ComponentDF::conj_residual);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("M1", &SweepRow::M1)
      .def_readonly("df", &SweepRow::df)
      .def_readonly("ratio", &SweepRow::ratio)
      .def_readonly("fig3", &SweepRow::fig3);

  py::class_<OccupationHistory>(m, "OccupationHistory")
      .def(py::init<int, int, int, int>(), py::arg("N"), py::arg("n1"),
           py::arg("n2"), py::arg("n1p"))
      .def_readwrite("N", &OccupationHistory::N)
      .def_readwrite("n1", &OccupationHistory::n1)
      .def_readwrite("n2", &OccupationHistory::n2)
      .def_readwrite("n1p", &OccupationHistory::n1p);

  py::class_<ExactDFTable>(m, "ExactDFTable")
      .def_readonly("N", &ExactDFTable::N)
      .def_readonly("values", &ExactDFTable::values);

  py::class_<GaussianCoefficients>(m, "GaussianCoefficients")
      .def_readonly("A02_im", &GaussianCoefficients::A02_im)
      .def_readonly("A11", &GaussianCoefficients::A11)
      .def_readonly("A12", &GaussianCoefficients::A12)
      .def_readonly("A22", &GaussianCoefficients::A22)
      .def_readonly("alpha", &GaussianCoefficients::alpha)
      .def_readonly("beta", &GaussianCoefficients::beta)
      .def_readonly("gamma", &GaussianCoefficients::gamma)
      .def_readonly("nu", &GaussianCoefficients::nu);

  py::class_<SmearedCoefficients>(m, "SmearedCoefficients")
      .def_readonly("ta", &SmearedCoefficients::ta)
      .def_readonly("tb", &SmearedCoefficients::tb)
      .def_readonly("te", &SmearedCoefficients::te)
      .def_readonly("tph", &SmearedCoefficients::tph)
      .def_readonly("tg", &SmearedCoefficients::tg)
      .def_readonly("tn", &SmearedCoefficients::tn)
      .def_readonly("sigma", &SmearedCoefficients::sigma)
      .def_readonly("b", &SmearedCoefficients::b);

  py::class_<EpsilonResult>(m, "EpsilonResult")
      .def_readonly("log_eps", &EpsilonResult::log_eps)
      .def_readonly("log_eps_exact", &EpsilonResult::log_eps_exact)
      .def_readonly("eps", &EpsilonResult::eps)
      .def_readonly("eps_exact", &EpsilonResult::eps_exact)
      .def_readonly("gamma", &EpsilonResult::gamma)
      .def_readonly("sigma", &EpsilonResult::sigma)
      .def_readonly("degenerate", &EpsilonResult::degenerate);

  py::class_<RegionalCharge>(m, "RegionalCharge")
      .def_readonly("m", &RegionalCharge::m)
      .def_readonly("region", &RegionalCharge::region)
      .def_readonly("diag", &RegionalCharge::diag)
      .def("matrix", &RegionalCharge::matrix)
      .def("spectral_projector", &RegionalCharge::spectral_projector, py::arg("alpha"));

  py::class_<FluxBalanceReport>(m, "FluxBalanceReport")
      .def_readonly("residual", &FluxBalanceReport::residual)
      .def_readonly("locality_residual", &FluxBalanceReport::locality_residual)
      .def_readonly("steps", &FluxBalanceReport::steps);

  py::class_<AmplitudePair>(m, "AmplitudePair")
      .def_readonly("direct", &AmplitudePair::direct)
      .def_readonly("flux_form", &AmplitudePair::flux_form);

  py::class_<TinyHilbertReport>(m, "TinyHilbertReport")
      .def_readonly("swap_action_residual", &TinyHilbertReport::swap_action_residual)
      .def_readonly("spectator_residual", &TinyHilbertReport::spectator_residual)
      .def_readonly("shift_identity_residual", &TinyHilbertReport::shift_identity_residual)
      .def_readonly("spinwave_residual", &TinyHilbertReport::spinwave_residual)
      .def_readonly("sz_commutator_residual", &TinyHilbertReport::sz_commutator_residual)
      .def_readonly("propagator_residual", &TinyHilbertReport::propagator_residual)
      .def_readonly("offset", &TinyHilbertReport::offset)
      .def("passes", &TinyHilbertReport::pass, py::arg("tol") = 1e-10);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("residual", &CheckResult::residual)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("note", &CheckResult::note);

  py::class_<VerifyOptions>(m, "VerifyOptions")
      .def(py::init<>())
      .def_readwrite("oracle_cap", &VerifyOptions::oracle_cap)
      .def_readwrite("quadrature_steps", &VerifyOptions::quadrature_steps)
      .def_readwrite("n_random", &VerifyOptions::n_random)
      .def_readwrite("seed", &VerifyOptions::seed);

  m.def("spin_wave_energies",
        [](const ChainConfig& cfg) { return spin_wave_energies(cfg).energies; },
        py::arg("cfg"));
  m.def("propagator_column", &propagator_column, py::arg("cfg"));
  m.def("projector_matrix_element",
        py::overload_cast<const PropagatorKernel&, int, int, int>(&projector_matrix_element),
        py::arg("kernel"), py::arg("M1"), py::arg("n"), py::arg("nprime"));
  m.def("projector_matrix_element",
        py::overload_cast<const ChainConfig&, int, int>(&projector_matrix_element),
        py::arg("cfg"), py::arg("n"), py::arg("nprime"));
  m.def("d_kernel", &d_kernel, py::arg("cfg"), py::arg("l"), py::arg("lprime"));
  m.def("dense_oracle", &dense_oracle, py::arg("cfg"), py::arg("cap") = 256);
  m.def("pauli_hamiltonian", &pauli_hamiltonian, py::arg("m"), py::arg("chi"));
  m.def("swap_operator", &swap_operator, py::arg("m"), py::arg("site"));
  m.def("tiny_hilbert_oracle", &tiny_hilbert_oracle, py::arg("m"), py::arg("chi"),
        py::arg("t"));

  m.def("centered_pair", &centered_pair, py::arg("M"), py::arg("M1"));
  m.def("component_df_generic", &component_df_generic, py::arg("rho"), py::arg("H"),
        py::arg("P"), py::arg("t"));
  m.def("component_df_spin_chain",
        py::overload_cast<const ChainConfig&, const InitialPair&>(&component_df_spin_chain),
        py::arg("cfg"), py::arg("pair"));
  m.def("gamma_factor", &gamma_factor, py::arg("df"));
  m.def("m1_sweep",
        [](int M, double chi, double t) { return m1_sweep(M, chi, t); },
        py::arg("M"), py::arg("chi"), py::arg("t"));
  m.def("sweep_row_direct", &sweep_row_direct, py::arg("M"), py::arg("chi"),
        py::arg("t"), py::arg("M1"), py::arg("pair"));

  m.def("occupation_projector_oracle", &occupation_projector_oracle, py::arg("P"),
        py::arg("N"), py::arg("n"), py::arg("cap") = 4096);
  m.def("collective_df_tensor_oracle", &collective_df_tensor_oracle, py::arg("rho"),
        py::arg("H"), py::arg("P"), py::arg("t"), py::arg("history"),
        py::arg("cap") = 4096);
  m.def("appendix_exact", &appendix_exact, py::arg("df"), py::arg("history"),
        py::arg("cap") = 500);
  m.def("appendix_exact_table", &appendix_exact_table, py::arg("df"), py::arg("N"),
        py::arg("n1_lo"), py::arg("n1_hi"), py::arg("n2_lo"), py::arg("n2_hi"),
        py::arg("n1p_lo"), py::arg("n1p_hi"), py::arg("cap") = 500);
  m.def("gaussian_coefficients", &gaussian_coefficients, py::arg("df"), py::arg("N"));
  m.def("smeared_coefficients", &smeared_coefficients, py::arg("gc"), py::arg("sigma"));
  m.def("collective_df_gaussian", &collective_df_gaussian, py::arg("sc"), py::arg("N"),
        py::arg("p0"), py::arg("pt"), py::arg("N1"), py::arg("N2"), py::arg("N1p"));
  m.def("decoherence_ratio", &decoherence_ratio, py::arg("sc"), py::arg("N1"),
        py::arg("N1p"));
  m.def("degree_of_decoherence", &degree_of_decoherence, py::arg("df"), py::arg("N"),
        py::arg("f"));
  m.def("collective_probabilities", &collective_probabilities, py::arg("sc"),
        py::arg("N"), py::arg("p0"), py::arg("pt"), py::arg("N1"), py::arg("N2"));

  m.def("regional_charge", &regional_charge, py::arg("m"), py::arg("region"));
  m.def("flux_balance_check", &flux_balance_check, py::arg("H"), py::arg("Q"),
        py::arg("t"), py::arg("steps"));
  m.def("amplitude_suppression_check", &amplitude_suppression_check, py::arg("H"),
        py::arg("Q"), py::arg("t"), py::arg("state_m"), py::arg("state_n"),
        py::arg("alpha1"), py::arg("alpha2"), py::arg("steps"));

  m.def("run_verification", &run_verification, py::arg("options") = VerifyOptions{});
}
