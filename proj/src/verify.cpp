#include "spinchain/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "spinchain/collective.hpp"
#include "spinchain/conservation.hpp"

namespace spinchain {

namespace {

// dense one-magnon pieces shared by the cross checks
Eigen::MatrixXcd one_magnon_hamiltonian(int M, double chi) {
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(M, M);
  for (int k = 0; k < M; ++k) {
    H(k, (k + 1) % M) += -chi;
    H((k + 1) % M, k) += -chi;
  }
  return H;
}

Eigen::MatrixXcd pair_state(int M, const InitialPair& pair) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(M);
  psi(pair.k1 - 1) = 1.0 / std::numbers::sqrt2;
  psi(pair.k2 - 1) = 1.0 / std::numbers::sqrt2;
  return psi * psi.adjoint();
}

Eigen::MatrixXcd region_projector(int M, int M1) {
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(M, M);
  for (int k = 0; k < M1; ++k) P(k, k) = 1.0;
  return P;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937 rng(opt.seed);
  auto rint = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto rreal = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto push = [&out](const std::string& name, double residual, double tol,
                     const std::string& note = "") {
    out.push_back({name, std::isfinite(residual) && residual <= tol, residual, tol, note});
  };

  // ---- propagator column ----
  {
    double r_unit = 0, r_even = 0, r_delta = 0;
    for (int i = 0; i < opt.n_random; ++i) {
      ChainConfig cfg{rint(4, 400), 1, rreal(0.5, 2.0), rreal(0.1, 50.0)};
      cfg.M1 = rint(1, cfg.M - 1);
      const auto ker = propagator_column(cfg);
      double s = 0;
      for (const auto& v : ker.g) s += std::norm(v);
      r_unit = std::max(r_unit, std::abs(s - 1.0));
      for (int d = 1; d < cfg.M; ++d)
        r_even = std::max(r_even, std::abs(ker.g[d] - ker.g[cfg.M - d]));
      cfg.t = 0;
      const auto k0 = propagator_column(cfg);
      for (int d = 0; d < cfg.M; ++d)
        r_delta = std::max(r_delta, std::abs(k0.g[d] - cdouble(d == 0 ? 1.0 : 0.0)));
    }
    push("propagator column norm", r_unit, 1e-12);
    push("propagator evenness", r_even, 1e-12);
    push("propagator t=0 delta", r_delta, 1e-12);
  }

  // ---- evolved projector vs dense oracle, and operator identities ----
  {
    double r_dense = 0, r_dsum = 0, r_herm = 0, r_idem = 0, r_trace = 0, r_compl = 0;
    const int trials = std::min(opt.n_random, 6);
    for (int i = 0; i < trials; ++i) {
      ChainConfig cfg{rint(6, opt.oracle_cap), 1, rreal(0.5, 2.0), rreal(0.5, 20.0)};
      cfg.M1 = rint(1, cfg.M - 1);
      const int M = cfg.M;
      const auto ker = propagator_column(cfg);
      const auto spec = spin_wave_energies(cfg);
      const Eigen::MatrixXcd dense = dense_oracle(cfg, opt.oracle_cap);

      Eigen::MatrixXcd W(M, M);
      for (int n = 1; n <= M; ++n)
        for (int np = 1; np <= M; ++np)
          W(n - 1, np - 1) = projector_matrix_element(ker, cfg.M1, n, np);
      r_dense = std::max(r_dense, (W - dense).cwiseAbs().maxCoeff());
      r_herm = std::max(r_herm, (W - W.adjoint()).cwiseAbs().maxCoeff());
      r_idem = std::max(r_idem, (W * W - W).cwiseAbs().maxCoeff());
      r_trace = std::max(r_trace, std::abs(W.trace() - cdouble(cfg.M1)));

      // independent spectral double sum for a few entries
      for (int rep = 0; rep < 3; ++rep) {
        const int n = rint(1, M), np = rint(1, M);
        cdouble s = 0;
        for (int l = 0; l < M; ++l)
          for (int lp = 0; lp < M; ++lp) {
            const double ph = cfg.t * (spec.energies[l] - spec.energies[lp]) +
                              2.0 * std::numbers::pi * (double(np) * l - double(n) * lp) / M;
            s += std::polar(1.0, ph) * d_kernel(cfg, l, lp);
          }
        s /= double(M) * double(M);
        r_dsum = std::max(r_dsum, std::abs(s - W(n - 1, np - 1)));
      }

      ChainConfig full = cfg;
      full.M1 = M;
      const auto kf = propagator_column(full);
      for (int n = 1; n <= M; ++n)
        for (int np = 1; np <= M; ++np) {
          const cdouble w = projector_matrix_element(kf, M, n, np);
          r_compl = std::max(r_compl, std::abs(w - cdouble(n == np ? 1.0 : 0.0)));
        }
    }
    push("evolved projector vs dense oracle", r_dense, 1e-10);
    push("evolved projector vs spectral double sum", r_dsum, 1e-10);
    push("evolved projector hermiticity", r_herm, 1e-10);
    push("evolved projector idempotence", r_idem, 1e-10);
    push("evolved projector trace", r_trace, 1e-10);
    push("full-region completeness", r_compl, 1e-10);
  }

  // ---- component functional invariants ----
  {
    double r_sum = 0, r_anti = 0, r_conj = 0, r_bound = 0;
    for (int i = 0; i < opt.n_random; ++i) {
      ChainConfig cfg{rint(4, 300), 1, rreal(0.5, 2.0), rreal(0.1, 100.0)};
      cfg.M1 = rint(1, cfg.M - 1);
      const auto df = component_df_spin_chain(cfg, centered_pair(cfg.M, cfg.M1));
      r_sum = std::max(r_sum, df.sum_rule_residual());
      r_anti = std::max(r_anti, df.antisym_residual());
      r_conj = std::max(r_conj, df.conj_residual());
      r_bound = std::max({r_bound,
                          std::abs(df.d_yy_ny) - std::sqrt(df.p_yy * df.p_ny),
                          std::abs(df.d_yn_nn) - std::sqrt(df.p_yn * df.p_nn)});
    }
    push("probability sum rule", r_sum, 1e-12);
    push("off-diagonal cancellation", r_anti, 1e-12);
    push("off-diagonal conjugation", r_conj, 1e-12);
    push("off-diagonal bound", r_bound, 1e-12,
         "|d| <= sqrt(p p'), slack clipped at 0");
  }

  // ---- generic dense functional vs chain specialization ----
  {
    double r = 0;
    const int trials = std::min(opt.n_random, 6);
    for (int i = 0; i < trials; ++i) {
      ChainConfig cfg{rint(6, 32), 1, rreal(0.5, 2.0), rreal(0.5, 10.0)};
      cfg.M1 = rint(1, cfg.M - 1);
      const auto pair = centered_pair(cfg.M, cfg.M1);
      const auto a = component_df_spin_chain(cfg, pair);
      const auto b = component_df_generic(pair_state(cfg.M, pair),
                                          one_magnon_hamiltonian(cfg.M, cfg.chi),
                                          region_projector(cfg.M, cfg.M1), cfg.t);
      r = std::max({r, std::abs(a.p_yy - b.p_yy), std::abs(a.p_ny - b.p_ny),
                    std::abs(a.p_yn - b.p_yn), std::abs(a.p_nn - b.p_nn),
                    std::abs(a.d_yy_ny - b.d_yy_ny), std::abs(a.d_ny_yy - b.d_ny_yy),
                    std::abs(a.d_yn_nn - b.d_yn_nn), std::abs(a.d_nn_yn - b.d_nn_yn)});
    }
    push("generic trace vs chain form", r, 1e-10);
  }

  // ---- sweep incremental path vs scratch rows ----
  {
    double r = 0;
    const int M = rint(24, 64);
    const double chi = rreal(0.5, 2.0), t = rreal(0.5, 20.0);
    const auto rows = m1_sweep(M, chi, t);
    for (int i = 0; i < 6; ++i) {
      const int M1 = rint(1, M - 1);
      const auto direct = sweep_row_direct(M, chi, t, M1, centered_pair(M, M1));
      const auto& row = rows[M1 - 1];
      r = std::max({r, std::abs(row.df.p_yy - direct.df.p_yy),
                    std::abs(row.df.p_ny - direct.df.p_ny),
                    std::abs(row.df.p_yn - direct.df.p_yn),
                    std::abs(row.df.p_nn - direct.df.p_nn),
                    std::abs(row.df.d_yy_ny - direct.df.d_yy_ny)});
    }
    push("sweep incremental vs scratch", r, 1e-12);
  }

  // ---- collective: tensor oracle vs the exact binomial sum ----
  {
    double r = 0;
    ChainConfig cfg{6, 3, rreal(0.5, 2.0), rreal(0.5, 5.0)};
    const auto pair = centered_pair(cfg.M, cfg.M1);
    const auto df = component_df_spin_chain(cfg, pair);
    const Eigen::MatrixXcd rho = pair_state(cfg.M, pair);
    const Eigen::MatrixXcd H = one_magnon_hamiltonian(cfg.M, cfg.chi);
    const Eigen::MatrixXcd P = region_projector(cfg.M, cfg.M1);
    for (int N = 1; N <= 3; ++N)
      for (int n1 = 0; n1 <= N; ++n1)
        for (int n2 = 0; n2 <= N; ++n2)
          for (int n1p = 0; n1p <= N; ++n1p) {
            const OccupationHistory h{N, n1, n2, n1p};
            r = std::max(r, std::abs(collective_df_tensor_oracle(rho, H, P, cfg.t, h) -
                                     appendix_exact(df, h)));
          }
    push("exact sum vs tensor oracle", r, 1e-10, "N = 1..3 over all histories");
  }

  // ---- collective: single-component reduction and normalization ----
  {
    ChainConfig cfg{rint(8, 100), 1, rreal(0.5, 2.0), rreal(0.5, 50.0)};
    cfg.M1 = rint(1, cfg.M - 1);
    const auto df = component_df_spin_chain(cfg, centered_pair(cfg.M, cfg.M1));

    double r1 = 0;
    auto entry = [&df](int n1, int n2, int n1p) {
      return appendix_exact(df, {1, n1, n2, n1p});
    };
    r1 = std::max({std::abs(entry(1, 1, 1) - df.p_yy), std::abs(entry(0, 1, 0) - df.p_ny),
                   std::abs(entry(1, 0, 1) - df.p_yn), std::abs(entry(0, 0, 0) - df.p_nn),
                   std::abs(entry(1, 1, 0) - df.d_yy_ny), std::abs(entry(0, 1, 1) - df.d_ny_yy),
                   std::abs(entry(1, 0, 0) - df.d_yn_nn), std::abs(entry(0, 0, 1) - df.d_nn_yn)});
    push("exact sum N=1 reduction", r1, 1e-12);

    const int N = rint(20, 50);
    const auto table = appendix_exact_table(df, N, 0, N, 0, N, 0, N);
    double total = 0, r_marg = 0;
    for (int n1 = 0; n1 <= N; ++n1) {
      double marg = 0;
      for (int n2 = 0; n2 <= N; ++n2) {
        const cdouble v = table.values.at({n1, n2, n1});
        marg += v.real();
        total += v.real();
      }
      const double lpmf = std::lgamma(N + 1.0) - std::lgamma(n1 + 1.0) -
                          std::lgamma(N - n1 + 1.0) + n1 * std::log(df.p0()) +
                          (N - n1) * std::log(df.pbar0());
      r_marg = std::max(r_marg, std::abs(marg - std::exp(lpmf)));
    }
    push("exact sum normalization", std::abs(total - 1.0), 1e-10,
         "N = " + std::to_string(N));
    push("exact sum binomial marginal", r_marg, 1e-10);
  }

  // ---- gaussian coefficients and smearing ----
  {
    ComponentDF df;
    bool found = false;
    for (int i = 0; i < 50 && !found; ++i) {
      ChainConfig cfg{rint(16, 200), 1, rreal(0.5, 2.0), rreal(1.0, 100.0)};
      cfg.M1 = rint(2, cfg.M - 2);
      df = component_df_spin_chain(cfg, centered_pair(cfg.M, cfg.M1));
      found = std::abs(df.d_yy_ny.imag()) > 1e-6;
    }
    if (!found) {
      push("gaussian channel sampling", 1.0, 0.0, "no non-degenerate sample found");
    } else {
      const double N = 1e4;
      const auto gc = gaussian_coefficients(df, N);
      const auto sc0 = smeared_coefficients(gc, 1e-8);
      const double r_lim =
          std::max({std::abs(sc0.ta - gc.alpha) / std::abs(gc.alpha),
                    std::abs(sc0.tb - gc.beta) / std::abs(gc.beta),
                    std::abs(sc0.tg - gc.gamma) / std::abs(gc.gamma),
                    std::abs(sc0.tn - gc.nu) / std::max(std::abs(gc.nu), 1e-6),
                    std::abs(sc0.te), std::abs(sc0.tph)});
      push("smearing sigma->0 limit", r_lim, 1e-9);

      const auto sc = smeared_coefficients(gc, rreal(0.5, 3.0));
      const double p0 = df.p0(), pt = df.pt();
      double r_herm = 0, r_ratio = 0, r_prob = 0;
      for (int i = 0; i < opt.n_random; ++i) {
        const double N1 = std::floor(N * p0) + rint(-6, 6);
        const double N1p = std::floor(N * p0) + rint(-6, 6);
        const double N2 = std::floor(N * pt) + rint(-6, 6);
        const cdouble od = collective_df_gaussian(sc, N, p0, pt, N1, N2, N1p);
        const cdouble od_swap = collective_df_gaussian(sc, N, p0, pt, N1p, N2, N1);
        r_herm = std::max(r_herm, std::abs(od - std::conj(od_swap)));
        const double d1 = std::abs(collective_df_gaussian(sc, N, p0, pt, N1, N2, N1));
        const double d2 = std::abs(collective_df_gaussian(sc, N, p0, pt, N1p, N2, N1p));
        if (N1 != N1p)
          r_ratio = std::max(r_ratio, std::abs(std::abs(od) / std::sqrt(d1 * d2) -
                                               decoherence_ratio(sc, N1, N1p)));
        r_prob = std::max(r_prob, std::abs(collective_probabilities(sc, N, p0, pt, N1, N2) - d1));
      }
      push("gaussian hermiticity", r_herm, 1e-12);
      push("gaussian ratio identity", r_ratio, 1e-12);
      push("gaussian diagonal identity", r_prob, 1e-12);

      const auto e1 = degree_of_decoherence(df, N, 1e-3);
      const auto e2 = degree_of_decoherence(df, 2 * N, 1e-3);
      const auto e4 = degree_of_decoherence(df, N, 2e-3);
      const double r_scal =
          std::max(std::abs(e2.log_eps - 2.0 * e1.log_eps) / std::abs(e1.log_eps),
                   std::abs(e4.log_eps - 4.0 * e1.log_eps) / std::abs(e1.log_eps));
      push("epsilon doubling laws", r_scal, 1e-12);
    }
  }

  // ---- full Hilbert space oracle ----
  {
    const auto rep = tiny_hilbert_oracle(6, rreal(0.5, 2.0), rreal(0.5, 3.0));
    const double r = std::max({rep.swap_action_residual, rep.spectator_residual,
                               rep.shift_identity_residual, rep.spinwave_residual,
                               rep.sz_commutator_residual, rep.propagator_residual});
    push("full Hilbert space oracle", r, 1e-10, "m = 6");
  }

  // ---- conservation ----
  {
    const int m = 5;
    const double chi = rreal(0.5, 2.0), t = rreal(1.0, 3.0);
    const Eigen::MatrixXcd H = pauli_hamiltonian(m, chi);
    const auto Q = regional_charge(m, {1, 2});

    const auto r1 = flux_balance_check(H, Q, t, opt.quadrature_steps);
    const auto r2 = flux_balance_check(H, Q, t, 2 * opt.quadrature_steps);
    const double order = (r2.residual > 0) ? std::log2(r1.residual / r2.residual) : 2.0;
    push("flux balance quadrature", r1.residual, 1e-3,
         "order " + fmt(order) + " at n = " + std::to_string(opt.quadrature_steps));
    push("flux quadrature order", std::abs(order - 2.0), 0.2);
    push("current locality", r1.locality_residual, 1e-12);

    Eigen::VectorXcd sm(1 << m), sn(1 << m);
    for (Eigen::Index i = 0; i < sm.size(); ++i) {
      sm(i) = cdouble(rreal(-1, 1), rreal(-1, 1));
      sn(i) = cdouble(rreal(-1, 1), rreal(-1, 1));
    }
    sm.normalize();
    sn.normalize();
    const auto amp = amplitude_suppression_check(H, Q, t, sm, sn, 1, 2,
                                                 opt.quadrature_steps);
    push("amplitude suppression quadrature",
         std::abs(amp.direct - amp.flux_form), 1e-4,
         "direct " + fmt(std::abs(amp.direct)));

    // the identity with the exact time-integrated current
    {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
      Eigen::VectorXcd ph(1 << m);
      for (Eigen::Index i = 0; i < ph.size(); ++i)
        ph(i) = std::polar(1.0, t * es.eigenvalues()(i));
      const Eigen::MatrixXcd U = es.eigenvectors() * ph.asDiagonal() *
                                 es.eigenvectors().adjoint();
      const Eigen::MatrixXcd Qm = Q.matrix();
      const Eigen::MatrixXcd Qt = U * Qm * U.adjoint();
      const Eigen::MatrixXcd P1 = Q.spectral_projector(1);
      const Eigen::MatrixXcd P2 = Q.spectral_projector(2);
      const Eigen::MatrixXcd lhs = double(1 - 2) * (P2 * U * P1);
      const Eigen::MatrixXcd rhs = P2 * (Qt - Qm) * U * P1;
      push("amplitude suppression identity", (lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }

    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i + 1;
    const auto qg = regional_charge(m, all);
    const auto rg = flux_balance_check(H, qg, t, 1);
    push("global charge conservation",
         std::max(rg.residual, rg.locality_residual), 1e-12,
         "V = all sites: no boundary hence no flux");
  }

  return out;
}

} // namespace spinchain
