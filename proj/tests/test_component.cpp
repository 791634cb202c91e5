#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "spinchain/component.hpp"

using namespace spinchain;

namespace {

Eigen::MatrixXcd one_magnon_hamiltonian(int M, double chi) {
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(M, M);
  for (int k = 0; k < M; ++k) {
    H(k, (k + 1) % M) += -chi;
    H((k + 1) % M, k) += -chi;
  }
  return H;
}

double max_residual(const ComponentDF& a, const ComponentDF& b) {
  return std::max({std::abs(a.p_yy - b.p_yy), std::abs(a.p_ny - b.p_ny),
                   std::abs(a.p_yn - b.p_yn), std::abs(a.p_nn - b.p_nn),
                   std::abs(a.d_yy_ny - b.d_yy_ny),
                   std::abs(a.d_ny_yy - b.d_ny_yy),
                   std::abs(a.d_yn_nn - b.d_yn_nn),
                   std::abs(a.d_nn_yn - b.d_nn_yn)});
}

} // namespace

TEST_CASE("component functional at the frozen reference configuration") {
  ChainConfig cfg{8, 3, 1.0, 1.3};
  const auto df = component_df_spin_chain(cfg, {2, 6});
  CHECK(df.p_yy == doctest::Approx(0.22540057982880438).epsilon(1e-13));
  CHECK(df.p_ny == doctest::Approx(0.059097180021940421).epsilon(1e-13));
  CHECK(df.p_yn == doctest::Approx(0.27459942017119565).epsilon(1e-13));
  CHECK(df.p_nn == doctest::Approx(0.44090281997805958).epsilon(1e-13));
  CHECK(std::abs(df.d_yy_ny - cdouble(-0.1077511200746276, 0)) < 1e-13);
  CHECK(std::abs(df.d_yn_nn + df.d_yy_ny) < 1e-15);
  CHECK(gamma_factor(df) == doctest::Approx(0.20113825859961662).epsilon(1e-13));
}

TEST_CASE("sum rules and off-diagonal structure at random configurations") {
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> pick_m(4, 40);
  std::uniform_real_distribution<double> pick_t(0.0, 30.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int M = pick_m(rng);
    std::uniform_int_distribution<int> pick_m1(1, M - 1);
    const int M1 = pick_m1(rng);
    std::uniform_int_distribution<int> pick_k1(1, M1), pick_k2(M1 + 1, M);
    ChainConfig cfg{M, M1, 1.0, pick_t(rng)};
    const auto df =
        component_df_spin_chain(cfg, {pick_k1(rng), pick_k2(rng)});
    CHECK(df.sum_rule_residual() < 1e-13);
    CHECK(df.antisym_residual() < 1e-13);
    CHECK(df.conj_residual() < 1e-13);
    CHECK(df.p_yy >= -1e-14);
    CHECK(df.p_nn >= -1e-14);
    // Cauchy-Schwarz bound on the off-diagonal entry
    CHECK(std::abs(df.d_yy_ny) <=
          std::sqrt(df.p_yy * df.p_ny) + 1e-12);
    CHECK(std::abs(df.d_yn_nn) <=
          std::sqrt(df.p_yn * df.p_nn) + 1e-12);
  }
}

TEST_CASE("spin-chain reduction agrees with the generic dense trace") {
  ChainConfig cfg{8, 3, 1.0, 1.3};
  const auto H = one_magnon_hamiltonian(8, 1.0);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi(1) = psi(5) = 1.0 / std::numbers::sqrt2;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(8, 8);
  for (int k = 0; k < 3; ++k) P(k, k) = 1.0;
  const auto generic = component_df_generic(psi * psi.adjoint(), H, P, 1.3);
  const auto chain = component_df_spin_chain(cfg, {2, 6});
  CHECK(max_residual(generic, chain) < 1e-13);
}

TEST_CASE("pair separation parity fixes the phase of d") {
  // even M: even separation gives real d, odd separation purely imaginary
  ChainConfig cfg{12, 5, 0.8, 3.7};
  const auto even_sep = component_df_spin_chain(cfg, {2, 8});
  CHECK(std::abs(even_sep.d_yy_ny.imag()) < 1e-14);
  CHECK(std::abs(even_sep.d_yy_ny.real()) > 1e-4);
  const auto odd_sep = component_df_spin_chain(cfg, {2, 7});
  CHECK(std::abs(odd_sep.d_yy_ny.real()) < 1e-14);
  CHECK(std::abs(odd_sep.d_yy_ny.imag()) > 1e-4);
}

TEST_CASE("symmetric split kills the off-diagonal entirely") {
  for (int M : {8, 100}) {
    ChainConfig cfg{M, M / 2, 1.0, 0.9 * M};
    const auto df = component_df_spin_chain(cfg, {M / 4, M / 4 + M / 2});
    CHECK(std::abs(df.d_yy_ny) < 1e-13);
  }
}

TEST_CASE("centered pair rule") {
  CHECK(centered_pair(1000, 500).k1 == 250);
  CHECK(centered_pair(1000, 500).k2 == 750);
  CHECK(centered_pair(1000, 3).k1 == 2);
  CHECK(centered_pair(1000, 3).k2 == 502);
  CHECK(centered_pair(8, 3).k1 == 2);
  CHECK(centered_pair(8, 3).k2 == 6);
  // the rule lands on separation M/2 for every M1 when M is even
  for (int M1 : {1, 137, 499, 500, 623, 999}) {
    const auto p = centered_pair(1000, M1);
    CHECK(p.k2 - p.k1 == 500);
  }
}

TEST_CASE("sweep rows at the frozen spot checks") {
  const auto rows = m1_sweep(64, 1.0, 17.0);
  REQUIRE(rows.size() == 63);
  CHECK(rows[19].M1 == 20);
  CHECK(rows[19].df.p_yy ==
        doctest::Approx(0.094670960565191808).epsilon(1e-12));
  CHECK(rows[19].ratio ==
        doctest::Approx(0.020083554148212456).epsilon(1e-12));
  CHECK(rows[39].df.d_yy_ny.real() ==
        doctest::Approx(-0.0066081241946191827).epsilon(1e-12));
  // centered pairs on an even chain have separation M/2: Im d is roundoff
  CHECK(std::abs(rows[39].df.d_yy_ny.imag()) < 1e-14);
  CHECK(rows[39].fig3 < 1e-20);
}

TEST_CASE("incremental sweep equals per-row recomputation") {
  const int M = 48;
  const auto rows = m1_sweep(M, 0.7, 11.0);
  for (int M1 : {1, 7, 24, 40, 47}) {
    const auto direct = sweep_row_direct(M, 0.7, 11.0, M1, centered_pair(M, M1));
    CHECK(max_residual(rows[M1 - 1].df, direct.df) < 1e-12);
    // ratio divides by sqrt(p_yy p_ny), which amplifies roundoff where d is
    // parity dust or a marginal is small; bound the numerator instead
    CHECK(std::abs(rows[M1 - 1].ratio - direct.ratio) *
              std::sqrt(direct.df.p_yy * direct.df.p_ny) <
          2e-12);
  }
}

TEST_CASE("sweep respects a caller-supplied pair rule") {
  const auto rows =
      m1_sweep(16, 1.0, 5.0, [](int M1) { return InitialPair{1, M1 + 1}; });
  for (const auto& r : rows) {
    const auto direct =
        sweep_row_direct(16, 1.0, 5.0, r.M1, {1, r.M1 + 1});
    CHECK(max_residual(r.df, direct.df) < 1e-12);
  }
}

TEST_CASE("degenerate and invalid inputs are rejected") {
  ComponentDF df{};
  df.p_yy = 1.0; // p0 = 1: both particles start in region 1
  CHECK_THROWS_AS(gamma_factor(df), std::domain_error);

  ChainConfig cfg{8, 3, 1.0, 1.0};
  CHECK_THROWS_AS(component_df_spin_chain(cfg, {5, 6}), std::invalid_argument);
  CHECK_THROWS_AS(component_df_spin_chain(cfg, {2, 2}), std::invalid_argument);
}
