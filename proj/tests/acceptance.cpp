// Acceptance gate: every release criterion with its pinned tolerance, one
// verdict line each.  Exit status 0 only if all criteria hold.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spinchain/collective.hpp"
#include "spinchain/conservation.hpp"

using namespace spinchain;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// 1. probability sum rules and off-diagonal relations on random chains
Verdict sum_rule_suite() {
  const auto t0 = clock_type::now();
  std::mt19937 rng(20260816u);
  std::uniform_int_distribution<int> pick_m(4, 64);
  std::uniform_real_distribution<double> pick_chi(0.2, 2.0);
  std::uniform_real_distribution<double> pick_t(0.0, 100.0);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int M = pick_m(rng);
    const int M1 = std::uniform_int_distribution<int>(1, M - 1)(rng);
    const int k1 = std::uniform_int_distribution<int>(1, M1)(rng);
    const int k2 = std::uniform_int_distribution<int>(M1 + 1, M)(rng);
    const ChainConfig cfg{M, M1, pick_chi(rng), pick_t(rng)};
    const auto df = component_df_spin_chain(cfg, {k1, k2});
    worst = std::max({worst, df.sum_rule_residual(), df.antisym_residual(),
                      df.conj_residual()});
  }
  const double el = seconds_since(t0);
  return {worst <= 1e-12 && el < 5.0,
          fmt("worst residual %.2e (tol 1e-12), %.2fs (limit 5s)", worst, el)};
}

// 2. spectral projector elements against the dense eigendecomposition
Verdict spectral_vs_dense() {
  const auto t0 = clock_type::now();
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> pick_chi(0.2, 2.0);
  std::uniform_real_distribution<double> pick_t(0.0, 50.0);
  double worst = 0;
  for (int M : {4, 8, 16, 64})
    for (int trial = 0; trial < 5; ++trial) {
      const int M1 = std::uniform_int_distribution<int>(1, M)(rng);
      const ChainConfig cfg{M, M1, pick_chi(rng), pick_t(rng)};
      const auto dense = dense_oracle(cfg);
      const auto ker = propagator_column(cfg);
      for (int n = 1; n <= M; ++n)
        for (int np = 1; np <= M; ++np)
          worst = std::max(worst,
                           std::abs(projector_matrix_element(ker, M1, n, np) -
                                    dense(n - 1, np - 1)));
    }
  const double el = seconds_since(t0);
  return {worst <= 1e-10 && el < 30.0,
          fmt("worst element error %.2e (tol 1e-10), %.2fs (limit 30s)", worst, el)};
}

// 3. exact occupation sum against the tensor-product oracle
Verdict tensor_oracle_suite() {
  const auto t0 = clock_type::now();
  std::mt19937 rng(99u);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int sys = 0; sys < 10; ++sys) {
    const int dim = sys % 2 == 0 ? 2 : 4;
    Eigen::MatrixXcd A(dim, dim), B(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        A(i, j) = cdouble(g(rng), g(rng));
        B(i, j) = cdouble(g(rng), g(rng));
      }
    Eigen::MatrixXcd rho = A * A.adjoint();
    rho /= rho.trace();
    const Eigen::MatrixXcd H = B + B.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const int r = dim == 2 ? 1 : 1 + sys % 3;
    const Eigen::MatrixXcd P =
        es.eigenvectors().leftCols(r) * es.eigenvectors().leftCols(r).adjoint();
    const double t = 0.3 + 0.2 * sys;
    const auto df = component_df_generic(rho, H, P, t);
    for (int N : {1, 2, 3})
      for (int n1 = 0; n1 <= N; ++n1)
        for (int n2 = 0; n2 <= N; ++n2)
          for (int n1p = 0; n1p <= N; ++n1p) {
            const OccupationHistory h{N, n1, n2, n1p};
            worst = std::max(worst,
                             std::abs(appendix_exact(df, h) -
                                      collective_df_tensor_oracle(rho, H, P, t, h)));
          }
  }
  const double el = seconds_since(t0);
  return {worst <= 1e-10 && el < 60.0,
          fmt("worst mismatch %.2e (tol 1e-10), %.2fs (limit 60s)", worst, el)};
}

// 4. default configuration lands all four probabilities near 1/4
Verdict near_quarter_probabilities() {
  const auto t0 = clock_type::now();
  const ChainConfig cfg{1000, 500, 1.0, 1000.0};
  const auto df = component_df_spin_chain(cfg, centered_pair(1000, 500));
  const double lo = 0.20, hi = 0.30;
  const bool ok = df.p_yy > lo && df.p_yy < hi && df.p_ny > lo &&
                  df.p_ny < hi && df.p_yn > lo && df.p_yn < hi &&
                  df.p_nn > lo && df.p_nn < hi;
  const double el = seconds_since(t0);
  return {ok && el < 10.0,
          fmt("p = {%.4f, %.4f, %.4f, %.4f} in 0.25 +- 0.05, %.2fs (limit 10s)",
              df.p_yy, df.p_ny, df.p_yn, df.p_nn, el)};
}

// 5. sweep shape: early peak of |d|/sqrt(p_yy p_ny), tail near M^(-1/2)
Verdict sweep_shape() {
  const auto rows = m1_sweep(1000, 1.0, 1000.0);
  int arg = 0;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].ratio > rows[arg].ratio) arg = int(i);
  const double tail = rows[499].ratio;
  const double target = 1.0 / std::sqrt(1000.0);
  const bool peak_ok = rows[arg].M1 < 100;
  const bool tail_ok = tail >= target / 10.0 && tail <= target * 10.0;
  return {peak_ok && tail_ok,
          fmt("peak at M1=%d (ratio %.3f, need M1<100); ratio(500) = %.3e vs "
              "[%.2e, %.2e]",
              rows[arg].M1, rows[arg].ratio, tail, target / 10.0, target * 10.0)};
}

// 6. symmetric split: Re d vanishes, consistency without decoherence
Verdict symmetric_split() {
  double worst = 0;
  for (int M : {8, 100, 1000})
    for (double t : {1.0, 17.0, 1000.0}) {
      const ChainConfig cfg{M, M / 2, 1.0, t};
      const auto df = component_df_spin_chain(cfg, {M / 4, M / 4 + M / 2});
      worst = std::max(worst, std::abs(df.d_yy_ny.real()));
    }
  return {worst <= 1e-10, fmt("worst |Re d| %.2e (tol 1e-10)", worst)};
}

// 7. gaussian asymptotics against the smeared exact sum at N = 200
Verdict gaussian_vs_exact() {
  const auto t0 = clock_type::now();
  const ChainConfig cfg{100, 50, 1.0, 70.0};
  const auto df = component_df_spin_chain(cfg, {25, 74});
  const int N = 200;
  const double sigma = 3.0;
  const double p0 = df.p0(), pt = df.pt();
  const int c1 = int(std::lround(N * p0));
  const int c2 = int(std::lround(N * pt));
  const int halo = 12; // 4 sigma cut on the smearing window
  const int off = 6;   // probe grid reaches 2 sigma from the peak
  const auto T = appendix_exact_table(df, N, c1 - off - halo, c1 + off + halo,
                                      c2 - off - halo, c2 + off + halo,
                                      c1 - off - halo, c1 + off + halo);
  auto smear = [&](int N1, int N2, int N1p) {
    cdouble acc = 0;
    for (int a = -halo; a <= halo; ++a)
      for (int b = -halo; b <= halo; ++b)
        for (int c = -halo; c <= halo; ++c) {
          const double w =
              std::exp(-(double(a) * a + double(b) * b + double(c) * c) /
                       (2.0 * sigma * sigma));
          acc += w * T.values.at({N1 + a, N2 + b, N1p + c});
        }
    return std::abs(acc);
  };
  const auto sc = smeared_coefficients(gaussian_coefficients(df, N), sigma);
  const double e_peak = smear(c1, c2, c1);
  const double g_peak = std::abs(collective_df_gaussian(sc, N, p0, pt, c1, c2, c1));
  double worst = 0;
  int points = 0, misses = 0;
  for (int o1 : {-6, -3, 0, 3, 6})
    for (int o2 : {-6, -3, 0, 3, 6})
      for (int o3 : {-6, -3, 0, 3, 6}) {
        if (o1 == 0 && o2 == 0 && o3 == 0) continue;
        ++points;
        const double re = std::log(smear(c1 + o1, c2 + o2, c1 + o3) / e_peak);
        const double rg = std::log(
            std::abs(collective_df_gaussian(sc, N, p0, pt, c1 + o1, c2 + o2,
                                            c1 + o3)) /
            g_peak);
        const double rel = std::abs(re - rg) / std::abs(re);
        worst = std::max(worst, rel);
        if (rel > 0.15) ++misses;
      }
  const double el = seconds_since(t0);
  return {misses == 0 && el < 60.0,
          fmt("%d/%d log-ratios within 15%%, worst %.1f%%, %.2fs (limit 60s)",
              points - misses, points, 100.0 * worst, el)};
}

// 8. decoherence degree scaling in N and f
Verdict epsilon_scaling() {
  const ChainConfig cfg{1000, 500, 1.0, 1000.0};
  const auto df = component_df_spin_chain(cfg, {250, 749});
  const auto e = degree_of_decoherence(df, 1e4, 0.01);
  const auto eN = degree_of_decoherence(df, 2e4, 0.01);
  const auto ef = degree_of_decoherence(df, 1e4, 0.02);
  const double rN = std::abs(eN.log_eps - 2.0 * e.log_eps) / std::abs(2.0 * e.log_eps);
  const double rf = std::abs(ef.log_eps - 4.0 * e.log_eps) / std::abs(4.0 * e.log_eps);
  const double worst = std::max(rN, rf);
  return {worst <= 1e-10,
          fmt("doubling-law log-space error %.2e (tol 1e-10)", worst)};
}

// 9. conservation: exact sector diagonality and flux-balance convergence
Verdict conservation_suite() {
  const auto t0 = clock_type::now();
  double diag_worst = 0;
  for (int m : {4, 6, 8}) {
    const auto H = pauli_hamiltonian(m, 1.0);
    std::vector<int> all(m);
    for (int k = 0; k < m; ++k) all[k] = k + 1;
    const auto Q = regional_charge(m, all);
    std::vector<Eigen::MatrixXcd> proj;
    for (int a = 0; a <= m; ++a) proj.push_back(Q.spectral_projector(a));
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b) {
        if (a == b) continue;
        diag_worst = std::max(
            diag_worst, (proj[a] * H * proj[b]).cwiseAbs().maxCoeff());
      }
  }
  const auto H6 = pauli_hamiltonian(6, 1.0);
  const auto Q12 = regional_charge(6, {1, 2});
  const auto r1 = flux_balance_check(H6, Q12, 1.0, 1000);
  const auto r2 = flux_balance_check(H6, Q12, 1.0, 2000);
  const double order = std::log2(r1.residual / r2.residual);
  const double el = seconds_since(t0);
  return {diag_worst <= 1e-12 && r2.residual < 1e-6 && order >= 2.0 && el < 60.0,
          fmt("sector off-diagonal %.1e (tol 1e-12); flux residual %.2e at 2000 "
              "steps (tol 1e-6), order %.4f (need >= 2), %.2fs (limit 60s)",
              diag_worst, r2.residual, order, el)};
}

// 10. sweep performance and spot-row equivalence
Verdict sweep_performance() {
  const auto t0 = clock_type::now();
  const auto rows = m1_sweep(1000, 1.0, 1000.0);
  const double el = seconds_since(t0);
  double worst = 0;
  for (int M1 : {1, 50, 100, 250, 400, 500, 600, 750, 900, 999}) {
    const auto direct =
        sweep_row_direct(1000, 1.0, 1000.0, M1, centered_pair(1000, M1));
    const auto& r = rows[M1 - 1];
    worst = std::max({worst, std::abs(r.df.p_yy - direct.df.p_yy),
                      std::abs(r.df.p_ny - direct.df.p_ny),
                      std::abs(r.df.p_yn - direct.df.p_yn),
                      std::abs(r.df.p_nn - direct.df.p_nn),
                      std::abs(r.df.d_yy_ny - direct.df.d_yy_ny),
                      std::abs(r.ratio - direct.ratio)});
  }
  return {el < 5.0 && worst <= 1e-10,
          fmt("sweep %.3fs (limit 5s); spot-row mismatch %.2e (tol 1e-10)", el,
              worst)};
}

} // namespace

int main() {
  struct Entry {
    const char* name;
    Verdict (*run)();
  };
  const Entry entries[] = {
      {"sum rules on random chains", sum_rule_suite},
      {"spectral vs dense projector", spectral_vs_dense},
      {"exact sum vs tensor oracle", tensor_oracle_suite},
      {"near-quarter probabilities", near_quarter_probabilities},
      {"sweep peak and tail ratio", sweep_shape},
      {"symmetric split consistency", symmetric_split},
      {"gaussian vs exact profile", gaussian_vs_exact},
      {"epsilon doubling laws", epsilon_scaling},
      {"charge sectors and flux balance", conservation_suite},
      {"sweep performance and spot rows", sweep_performance},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& e : entries) {
    const auto v = e.run();
    if (!v.pass) ++failed;
    std::printf("%2d %s  %-32s  %s\n", ++idx, v.pass ? "PASS" : "FAIL", e.name,
                v.detail.c_str());
  }
  if (failed) std::printf("%d of 10 criteria failed\n", failed);
  return failed ? 1 : 0;
}
