#include "spinchain/conservation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinchain {

namespace {

// midpoint-rule integral of the Heisenberg current, in H's eigenbasis:
// Ktil_ab = i w Qtil_ab * dt * e^{i w t/2} * sin(n theta)/sin(theta),
// theta = w dt / 2.  The exact integral is Qtil_ab (e^{i w t} - 1).
Eigen::MatrixXcd midpoint_kernel(const Eigen::VectorXd& lam,
                                 const Eigen::MatrixXcd& Qtil, double t,
                                 int steps) {
  const Eigen::Index d = lam.size();
  const double dt = t / steps;
  Eigen::MatrixXcd K(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const double w = lam(a) - lam(b);
      const double theta = w * dt / 2.0;
      const long k = std::lround(theta / std::numbers::pi);
      const double delta = theta - k * std::numbers::pi;
      double ratio = (delta == 0.0) ? double(steps)
                                    : std::sin(steps * delta) / std::sin(delta);
      if ((k * (steps - 1)) % 2 != 0) ratio = -ratio;
      K(a, b) = cdouble(0, w) * Qtil(a, b) * dt *
                std::polar(1.0, w * t / 2.0) * ratio;
    }
  }
  return K;
}

} // namespace

Eigen::MatrixXcd RegionalCharge::matrix() const {
  Eigen::MatrixXd dense = diag.asDiagonal();
  return dense.cast<cdouble>();
}

Eigen::MatrixXcd RegionalCharge::spectral_projector(int alpha) const {
  const Eigen::Index dim = diag.size();
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s)
    if (std::lround(diag(s)) == alpha) P(s, s) = 1.0;
  return P;
}

RegionalCharge regional_charge(int m, const std::vector<int>& region) {
  if (m < 2 || m > 20) throw std::invalid_argument("regional_charge: m outside 2..20");
  unsigned mask = 0;
  for (int site : region) {
    if (site < 1 || site > m) throw std::invalid_argument("regional_charge: site outside 1..m");
    const unsigned bit = 1u << (site - 1);
    if (mask & bit) throw std::invalid_argument("regional_charge: duplicate site");
    mask |= bit;
  }
  RegionalCharge q;
  q.m = m;
  q.region = region;
  q.diag.resize(Eigen::Index(1) << m);
  for (Eigen::Index s = 0; s < q.diag.size(); ++s)
    q.diag(s) = double(std::popcount(unsigned(s) & mask));
  return q;
}

FluxBalanceReport flux_balance_check(const Eigen::MatrixXcd& H,
                                     const RegionalCharge& Q, double t,
                                     int steps) {
  const Eigen::Index dim = Eigen::Index(1) << Q.m;
  if (H.rows() != dim || H.cols() != dim)
    throw std::invalid_argument("flux_balance_check: H dimension mismatch");
  if (steps < 1) throw std::invalid_argument("flux_balance_check: steps >= 1 required");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd Qtil =
      es.eigenvectors().adjoint() * Q.matrix() * es.eigenvectors();

  // Q_t - Q - quadrature, all in the eigenbasis (Frobenius norm is basis free)
  Eigen::MatrixXcd R = midpoint_kernel(lam, Qtil, t, steps);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      R(a, b) = Qtil(a, b) * (std::polar(1.0, (lam(a) - lam(b)) * t) - 1.0) - R(a, b);

  FluxBalanceReport rep;
  rep.steps = steps;
  rep.residual = R.norm();

  // locality: Q is diagonal, so i[H,Q](a,b) = i H(a,b) (Q(b) - Q(a)).  For a
  // nearest-neighbor chain the current should only connect states related by
  // a swap across a bond with exactly one endpoint in V.
  Eigen::MatrixXcd C = H;
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      C(a, b) *= cdouble(0, 1) * (Q.diag(b) - Q.diag(a));
  std::vector<char> inV(Q.m + 1, 0);
  for (int site : Q.region) inV[site] = 1;
  for (int k = 1; k <= Q.m; ++k) {
    const int kp = k % Q.m + 1;
    if (inV[k] == inV[kp]) continue; // bond does not cross the boundary
    const unsigned ba = 1u << (k - 1), bb = 1u << (kp - 1);
    for (Eigen::Index s = 0; s < dim; ++s) {
      const unsigned u = unsigned(s);
      if (((u & ba) != 0) == ((u & bb) != 0)) continue;
      const Eigen::Index sp = Eigen::Index(u ^ (ba | bb));
      C(sp, s) = 0;
      C(s, sp) = 0;
    }
  }
  rep.locality_residual = C.cwiseAbs().maxCoeff();
  return rep;
}

AmplitudePair amplitude_suppression_check(const Eigen::MatrixXcd& H,
                                          const RegionalCharge& Q, double t,
                                          const Eigen::VectorXcd& state_m,
                                          const Eigen::VectorXcd& state_n,
                                          int alpha1, int alpha2, int steps) {
  const Eigen::Index dim = Eigen::Index(1) << Q.m;
  if (H.rows() != dim || state_m.size() != dim || state_n.size() != dim)
    throw std::invalid_argument("amplitude_suppression_check: dimension mismatch");
  if (alpha1 == alpha2)
    throw std::invalid_argument("amplitude_suppression_check: alpha1 == alpha2");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const Eigen::MatrixXcd& V = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd ph(dim);
  for (Eigen::Index i = 0; i < dim; ++i) ph(i) = std::polar(1.0, t * lam(i));
  const Eigen::MatrixXcd Uplus = V * ph.asDiagonal() * V.adjoint();
  const Eigen::MatrixXcd K =
      V * midpoint_kernel(lam, V.adjoint() * Q.matrix() * V, t, steps) * V.adjoint();

  const Eigen::MatrixXcd P1 = Q.spectral_projector(alpha1);
  const Eigen::MatrixXcd P2 = Q.spectral_projector(alpha2);

  AmplitudePair out;
  out.direct = state_m.dot(P2 * Uplus * P1 * state_n);
  out.flux_form = -state_m.dot(P2 * K * Uplus * P1 * state_n) / double(alpha2 - alpha1);
  return out;
}

} // namespace spinchain
