#include "spinchain/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <fftw3.h>

namespace spinchain {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

int wrap(int k, int M) {
  int r = k % M;
  return r < 0 ? r + M : r;
}
} // namespace

void ChainConfig::validate() const {
  if (M < 2) throw std::invalid_argument("ChainConfig: M must be >= 2");
  if (M1 < 1 || M1 > M) throw std::invalid_argument("ChainConfig: need 1 <= M1 <= M");
  if (!std::isfinite(chi) || !std::isfinite(t))
    throw std::invalid_argument("ChainConfig: chi and t must be finite");
}

SpinWaveSpectrum spin_wave_energies(const ChainConfig& cfg) {
  cfg.validate();
  SpinWaveSpectrum s;
  s.energies.resize(cfg.M);
  for (int l = 0; l < cfg.M; ++l)
    s.energies[l] = -2.0 * cfg.chi * std::cos(two_pi * l / cfg.M);
  return s;
}

PropagatorKernel propagator_column(const ChainConfig& cfg) {
  cfg.validate();
  const int M = cfg.M;
  const auto spec = spin_wave_energies(cfg);

  // g(D) = (1/M) sum_l e^{-i t E_l} e^{+2 pi i l D / M}: an inverse DFT of
  // the phase vector.
  std::vector<cdouble> in(M), out(M);
  for (int l = 0; l < M; ++l)
    in[l] = std::polar(1.0, -cfg.t * spec.energies[l]);

  fftw_plan plan = fftw_plan_dft_1d(
      M, reinterpret_cast<fftw_complex*>(in.data()),
      reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  PropagatorKernel ker;
  ker.g.resize(M);
  for (int d = 0; d < M; ++d) ker.g[d] = out[d] / double(M);
  return ker;
}

cdouble projector_matrix_element(const PropagatorKernel& ker, int M1, int n, int nprime) {
  const int M = ker.M();
  if (M1 < 1 || M1 > M) throw std::invalid_argument("projector_matrix_element: bad M1");
  if (n < 1 || n > M || nprime < 1 || nprime > M)
    throw std::out_of_range("projector_matrix_element: site index outside 1..M");
  cdouble acc = 0;
  for (int k = 1; k <= M1; ++k)
    acc += ker.g[wrap(k - n, M)] * std::conj(ker.g[wrap(k - nprime, M)]);
  return acc;
}

cdouble projector_matrix_element(const ChainConfig& cfg, int n, int nprime) {
  return projector_matrix_element(propagator_column(cfg), cfg.M1, n, nprime);
}

cdouble d_kernel(const ChainConfig& cfg, int l, int lprime) {
  cfg.validate();
  const int diff = wrap(l - lprime, cfg.M);
  if (diff == 0) return cdouble(cfg.M1, 0.0); // the closed form is 0/0 here
  const double x = two_pi * diff / cfg.M;
  return (std::polar(1.0, -cfg.M1 * x) - 1.0) / (1.0 - std::polar(1.0, x));
}

Eigen::MatrixXcd dense_oracle(const ChainConfig& cfg, int cap) {
  cfg.validate();
  if (cfg.M > cap) throw std::invalid_argument("dense_oracle: M exceeds oracle cap");
  const int M = cfg.M;

  Eigen::MatrixXd H1 = Eigen::MatrixXd::Zero(M, M);
  for (int k = 0; k < M; ++k) {
    int km1 = wrap(k - 1, M);
    H1(k, km1) += -cfg.chi;
    H1(km1, k) += -cfg.chi;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H1);
  Eigen::VectorXcd phases(M);
  for (int i = 0; i < M; ++i)
    phases(i) = std::polar(1.0, -cfg.t * es.eigenvalues()(i));
  Eigen::MatrixXcd U =
      es.eigenvectors().cast<cdouble>() * phases.asDiagonal() *
      es.eigenvectors().transpose().cast<cdouble>();

  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(M, M);
  for (int k = 0; k < cfg.M1; ++k) P(k, k) = 1.0;

  // U P U^dag; with the even kernel this equals the positional prefix sum
  return U * P * U.adjoint();
}

Eigen::MatrixXcd swap_operator(int m, int site) {
  if (m < 2 || m > 16) throw std::invalid_argument("swap_operator: need 2 <= m <= 16");
  if (site < 1 || site > m) throw std::invalid_argument("swap_operator: bad site");
  const int dim = 1 << m;
  const int a = site - 1, b = site % m;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    int ba = (s >> a) & 1, bb = (s >> b) & 1;
    int sw = (s & ~((1 << a) | (1 << b))) | (ba << b) | (bb << a);
    p(sw, s) = 1.0;
  }
  return p;
}

Eigen::MatrixXcd pauli_hamiltonian(int m, double chi) {
  if (m < 2 || m > 12) throw std::invalid_argument("pauli_hamiltonian: need 2 <= m <= 12");
  const int dim = 1 << m;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  // bond action of -(chi/2) sigma.sigma: aligned pair -> -(chi/2),
  // anti-aligned -> +(chi/2) on the diagonal and -chi on the flipped state
  for (int bond = 0; bond < m; ++bond) {
    const int a = bond, b = (bond + 1) % m;
    for (int s = 0; s < dim; ++s) {
      int ba = (s >> a) & 1, bb = (s >> b) & 1;
      if (ba == bb) {
        H(s, s) += -chi / 2.0;
      } else {
        H(s, s) += chi / 2.0;
        int flip = s ^ ((1 << a) | (1 << b));
        H(flip, s) += -chi;
      }
    }
  }
  return H;
}

bool TinyHilbertReport::pass(double tol) const {
  return swap_action_residual < tol && spectator_residual < tol &&
         shift_identity_residual < tol && spinwave_residual < tol &&
         sz_commutator_residual < tol && propagator_residual < tol;
}

TinyHilbertReport tiny_hilbert_oracle(int m, double chi, double t) {
  if (m < 3 || m > 12) throw std::invalid_argument("tiny_hilbert_oracle: need 3 <= m <= 12");
  const int dim = 1 << m;
  TinyHilbertReport rep{};
  rep.offset = 2.0 * chi - chi * m / 2.0;

  const Eigen::MatrixXcd H = pauli_hamiltonian(m, chi);
  auto phi = [&](int k) { return 1 << ((k - 1 + m) % m); }; // site k down, 1-based

  // exchange action on the one-down-spin states, and spectator fixed points
  Eigen::MatrixXcd swap_sum = Eigen::MatrixXcd::Zero(dim, dim);
  double swap_res = 0, spect_res = 0;
  for (int k = 1; k <= m; ++k) {
    const Eigen::MatrixXcd p = swap_operator(m, k);
    swap_sum += p;
    Eigen::VectorXcd ek = Eigen::VectorXcd::Unit(dim, phi(k));
    Eigen::VectorXcd ek1 = Eigen::VectorXcd::Unit(dim, phi(k + 1));
    swap_res = std::max(swap_res, (p * ek - ek1).norm());
    swap_res = std::max(swap_res, (p * ek1 - ek).norm());
    for (int n = 1; n <= m; ++n) {
      if (n == k || n == (k % m) + 1) continue;
      Eigen::VectorXcd en = Eigen::VectorXcd::Unit(dim, phi(n));
      spect_res = std::max(spect_res, (p * en - en).norm());
    }
  }
  rep.swap_action_residual = swap_res;
  rep.spectator_residual = spect_res;

  // H = -chi sum_k p^{k,k+1} + (chi m / 2) identity, exactly
  Eigen::MatrixXcd shift =
      H + chi * swap_sum -
      (chi * m / 2.0) * Eigen::MatrixXcd::Identity(dim, dim);
  rep.shift_identity_residual = shift.cwiseAbs().maxCoeff();

  // spin waves are eigenvectors with eigenvalue E_l + offset
  double sw_res = 0;
  for (int l = 0; l < m; ++l) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (int k = 1; k <= m; ++k)
      psi(phi(k)) = std::polar(1.0 / std::sqrt(double(m)), two_pi * l * k / m);
    const double El = -2.0 * chi * std::cos(two_pi * l / m);
    sw_res = std::max(sw_res, (H * psi - (El + rep.offset) * psi).norm());
  }
  rep.spinwave_residual = sw_res;

  // total S_z is conserved
  Eigen::VectorXcd sz(dim);
  for (int s = 0; s < dim; ++s)
    sz(s) = m - 2.0 * std::popcount(unsigned(s));
  Eigen::MatrixXcd comm = H * sz.asDiagonal() - sz.asDiagonal() * H;
  rep.sz_commutator_residual = comm.cwiseAbs().maxCoeff();

  // one-down-spin sector of e^{-iHt} reproduces the propagator column after
  // removing the constant offset phase
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd ph(dim);
  for (int i = 0; i < dim; ++i) ph(i) = std::polar(1.0, -t * es.eigenvalues()(i));
  Eigen::MatrixXcd U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();

  ChainConfig cfg;
  cfg.M = m;
  cfg.M1 = 1;
  cfg.chi = chi;
  cfg.t = t;
  const PropagatorKernel ker = propagator_column(cfg);
  double prop_res = 0;
  const cdouble offset_phase = std::polar(1.0, t * rep.offset);
  for (int a2 = 1; a2 <= m; ++a2)
    for (int b2 = 1; b2 <= m; ++b2) {
      cdouble sector = U(phi(a2), phi(b2)) * offset_phase;
      prop_res = std::max(prop_res, std::abs(sector - ker.g[wrap(a2 - b2, m)]));
    }
  rep.propagator_residual = prop_res;

  return rep;
}

} // namespace spinchain
