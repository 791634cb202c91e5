#include "spinchain/component.hpp"

#include <cmath>

namespace spinchain {

double ComponentDF::sum_rule_residual() const {
  return std::abs(p_yy + p_ny + p_yn + p_nn - 1.0);
}

double ComponentDF::antisym_residual() const {
  return std::max(std::abs(d_yy_ny + d_yn_nn), std::abs(d_ny_yy + d_nn_yn));
}

double ComponentDF::conj_residual() const {
  return std::abs(d_ny_yy - std::conj(d_yy_ny));
}

InitialPair centered_pair(int M, int M1) {
  return {(M1 + 1) / 2, M1 + (M - M1 + 1) / 2};
}

ComponentDF component_df_generic(const Eigen::MatrixXcd& rho,
                                 const Eigen::MatrixXcd& H,
                                 const Eigen::MatrixXcd& P, double t) {
  const auto dim = rho.rows();
  if (rho.cols() != dim || H.rows() != dim || H.cols() != dim ||
      P.rows() != dim || P.cols() != dim)
    throw std::invalid_argument("component_df_generic: dimension mismatch");
  if ((P * P - P).cwiseAbs().maxCoeff() > 1e-8 ||
      (P - P.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("component_df_generic: P is not a projector");
  if (std::abs(rho.trace() - cdouble(1.0)) > 1e-10)
    throw std::invalid_argument("component_df_generic: trace(rho) != 1");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd ph(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    ph(i) = std::polar(1.0, -t * es.eigenvalues()(i));
  const Eigen::MatrixXcd U =
      es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::MatrixXcd Ud = U.adjoint();
  const Eigen::MatrixXcd Pb = Eigen::MatrixXcd::Identity(dim, dim) - P;

  auto entry = [&](const Eigen::MatrixXcd& f, const Eigen::MatrixXcd& a,
                   const Eigen::MatrixXcd& b) {
    // Tr( f e^{-iHt} a rho b e^{iHt} ): f is the final-time projector,
    // a the ket-branch and b the bra-branch projector at time 0
    return (f * U * a * rho * b * Ud).trace();
  };

  ComponentDF df;
  df.p_yy = entry(P, P, P).real();
  df.p_ny = entry(P, Pb, Pb).real();
  df.p_yn = entry(Pb, P, P).real();
  df.p_nn = entry(Pb, Pb, Pb).real();
  df.d_yy_ny = entry(P, P, Pb);
  df.d_ny_yy = entry(P, Pb, P);
  df.d_yn_nn = entry(Pb, P, Pb);
  df.d_nn_yn = entry(Pb, Pb, P);
  return df;
}

namespace {
ComponentDF df_from_elements(double w11, double w22, cdouble w12) {
  // |Psi> = (|phi_k1> + |phi_k2>)/sqrt(2) with k1 in region 1, k2 in
  // region 2: the eight entries reduce to the three evolved-projector
  // matrix elements w11 = <k1|P(t)|k1>, w22 = <k2|P(t)|k2>, w12 = <k1|P(t)|k2>
  ComponentDF df;
  df.p_yy = 0.5 * w11;
  df.p_ny = 0.5 * w22;
  df.p_yn = 0.5 * (1.0 - w11);
  df.p_nn = 0.5 * (1.0 - w22);
  df.d_yy_ny = 0.5 * w12;
  df.d_ny_yy = std::conj(df.d_yy_ny);
  df.d_yn_nn = -df.d_yy_ny;
  df.d_nn_yn = -df.d_ny_yy;
  return df;
}

void check_pair(int M, int M1, const InitialPair& pair) {
  if (pair.k1 < 1 || pair.k1 > M1 || pair.k2 < M1 + 1 || pair.k2 > M)
    throw std::invalid_argument("InitialPair: k1 must lie in region 1 and k2 in region 2");
}
} // namespace

ComponentDF component_df_spin_chain(const PropagatorKernel& ker, int M1,
                                    const InitialPair& pair) {
  check_pair(ker.M(), M1, pair);
  const double w11 = projector_matrix_element(ker, M1, pair.k1, pair.k1).real();
  const double w22 = projector_matrix_element(ker, M1, pair.k2, pair.k2).real();
  const cdouble w12 = projector_matrix_element(ker, M1, pair.k1, pair.k2);
  return df_from_elements(w11, w22, w12);
}

ComponentDF component_df_spin_chain(const ChainConfig& cfg, const InitialPair& pair) {
  cfg.validate();
  return component_df_spin_chain(propagator_column(cfg), cfg.M1, pair);
}

double gamma_factor(const ComponentDF& df) {
  const double p0 = df.p0(), pb0 = df.pbar0();
  if (p0 * pb0 <= 0.0)
    throw std::domain_error("gamma_factor: p0 is 0 or 1 (degenerate initial condition)");
  const double r = df.p_yy - p0 * df.pt() + df.d_yy_ny.real();
  return df.pt() * df.pbart() - r * r / (p0 * pb0);
}

namespace {
double fig3_quantity(const ComponentDF& df) {
  const double im = df.d_yy_ny.imag();
  return im * im / gamma_factor(df); // may be inf/nan when Gamma degenerates
}

SweepRow make_row(int M1, const ComponentDF& df) {
  SweepRow row;
  row.M1 = M1;
  row.df = df;
  row.ratio = std::abs(df.d_yy_ny) / std::sqrt(df.p_yy * df.p_ny);
  row.fig3 = fig3_quantity(df);
  return row;
}
} // namespace

std::vector<SweepRow> m1_sweep(int M, double chi, double t,
                               const std::function<InitialPair(int)>& pair_rule) {
  ChainConfig cfg;
  cfg.M = M;
  cfg.M1 = 1;
  cfg.chi = chi;
  cfg.t = t;
  cfg.validate();
  const PropagatorKernel ker = propagator_column(cfg);

  // cyclic prefix sums of |g|^2: any diagonal element <n|P(t)|n> is a
  // length-M1 window sum, so consecutive M1 differ by a single term
  std::vector<double> prefix(M + 1, 0.0);
  for (int u = 0; u < M; ++u)
    prefix[u + 1] = prefix[u] + std::norm(ker.g[u]);
  auto diag = [&](int M1, int n) {
    // sum_{k=1..M1} |g(k-n)|^2 over the cyclic window starting at 1-n
    int a = ((1 - n) % M + M) % M;
    int b = a + M1; // exclusive
    if (b <= M) return prefix[b] - prefix[a];
    return (prefix[M] - prefix[a]) + prefix[b - M];
  };

  std::vector<SweepRow> rows;
  rows.reserve(M - 1);
  for (int M1 = 1; M1 <= M - 1; ++M1) {
    const InitialPair pair = pair_rule ? pair_rule(M1) : centered_pair(M, M1);
    check_pair(M, M1, pair);
    const double w11 = diag(M1, pair.k1);
    const double w22 = diag(M1, pair.k2);
    const cdouble w12 = projector_matrix_element(ker, M1, pair.k1, pair.k2);
    rows.push_back(make_row(M1, df_from_elements(w11, w22, w12)));
  }
  return rows;
}

SweepRow sweep_row_direct(int M, double chi, double t, int M1, const InitialPair& pair) {
  ChainConfig cfg;
  cfg.M = M;
  cfg.M1 = M1;
  cfg.chi = chi;
  cfg.t = t;
  cfg.validate();
  return make_row(M1, component_df_spin_chain(cfg, pair));
}

} // namespace spinchain
