#include "spinchain/collective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinchain {

namespace {

double lchoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Im d is identically zero (up to roundoff in the underlying sums) whenever
// the pair separation is even on an even chain, so the test must be relative
// to the Cauchy-Schwarz scale sqrt(p_yy p_ny) of d itself, not an exact
// floating-point zero.
bool imag_d_vanishes(const ComponentDF& df) {
  const double scale = std::sqrt(std::max(0.0, df.p_yy * df.p_ny));
  return std::abs(df.d_yy_ny.imag()) <= 1e-10 * scale;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

void check_projector(const Eigen::MatrixXcd& P) {
  if ((P * P - P).cwiseAbs().maxCoeff() > 1e-8 ||
      (P - P.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("component P is not a projector");
}

// polynomial with an overall log-magnitude offset, so binomial powers of
// order N never overflow doubles
struct LogPoly {
  std::vector<cdouble> c;
  double ls = 0; // value = c[i] * exp(ls)
};

// (a0 + a1 z)^p expanded with log-gamma binomials and phase-tracked powers;
// 0^0 counts as 1
LogPoly expand_pow(cdouble a0, cdouble a1, int p) {
  LogPoly out;
  out.c.assign(p + 1, cdouble(0));
  if (p == 0) {
    out.c[0] = 1.0;
    return out;
  }
  const double m0 = std::abs(a0), m1 = std::abs(a1);
  if (m0 == 0.0 && m1 == 0.0) return out; // zero polynomial
  const double l0 = m0 > 0 ? std::log(m0) : 0.0;
  const double l1 = m1 > 0 ? std::log(m1) : 0.0;
  const double t0 = std::arg(a0), t1 = std::arg(a1);

  std::vector<double> lm(p + 1, -std::numeric_limits<double>::infinity());
  double mx = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= p; ++i) {
    if ((m0 == 0.0 && i < p) || (m1 == 0.0 && i > 0)) continue;
    lm[i] = lchoose(p, i) + (p - i) * l0 + i * l1;
    mx = std::max(mx, lm[i]);
  }
  for (int i = 0; i <= p; ++i) {
    if (std::isinf(lm[i])) continue;
    out.c[i] = std::polar(std::exp(lm[i] - mx), (p - i) * t0 + i * t1);
  }
  out.ls = mx;
  return out;
}

LogPoly convolve(const LogPoly& A, const LogPoly& B) {
  LogPoly out;
  out.c.assign(A.c.size() + B.c.size() - 1, cdouble(0));
  out.ls = A.ls + B.ls;
  for (size_t i = 0; i < A.c.size(); ++i) {
    if (A.c[i] == cdouble(0)) continue;
    for (size_t j = 0; j < B.c.size(); ++j)
      out.c[i + j] += A.c[i] * B.c[j];
  }
  double mx = 0;
  for (const auto& v : out.c) mx = std::max(mx, std::abs(v));
  if (mx > 0) {
    for (auto& v : out.c) v /= mx;
    out.ls += std::log(mx);
  }
  return out;
}

// running sum of exp-scaled complex terms
struct ScaledAccumulator {
  cdouble acc{0};
  double ls = 0;
  bool empty = true;

  void add(cdouble v, double vls) {
    if (v == cdouble(0)) return;
    if (empty) {
      acc = v;
      ls = vls;
      empty = false;
      return;
    }
    const double d = vls - ls;
    if (d > 0) {
      acc = acc * std::exp(-d) + v;
      ls = vls;
    } else if (d > -700.0) {
      acc += v * std::exp(d);
    } // else the term is below any representable contribution
  }

  cdouble value() const {
    if (empty || acc == cdouble(0)) return 0;
    const double lr = ls + std::log(std::abs(acc));
    return std::polar(std::exp(lr), std::arg(acc));
  }
};

} // namespace

Eigen::MatrixXcd occupation_projector_oracle(const Eigen::MatrixXcd& P, int N,
                                             int n, int cap) {
  check_projector(P);
  if (N < 1) throw std::invalid_argument("occupation_projector_oracle: N >= 1 required");
  if (n < 0 || n > N) throw std::invalid_argument("occupation_projector_oracle: n outside 0..N");
  const Eigen::Index d = P.rows();
  double dim = std::pow(double(d), N);
  if (dim > cap) throw std::invalid_argument("occupation_projector_oracle: tensor cap exceeded");

  const Eigen::MatrixXcd Pb = Eigen::MatrixXcd::Identity(d, d) - P;
  const Eigen::Index D = Eigen::Index(std::llround(dim));
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(D, D);

  // all N-choose-n placements of P among Pb factors
  std::vector<int> mask(N, 0);
  std::fill(mask.begin(), mask.begin() + n, 1);
  std::sort(mask.begin(), mask.end(), std::greater<int>());
  do {
    Eigen::MatrixXcd term = mask[0] ? P : Pb;
    for (int i = 1; i < N; ++i) term = kron(term, mask[i] ? P : Pb);
    sum += term;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return sum;
}

cdouble collective_df_tensor_oracle(const Eigen::MatrixXcd& rho,
                                    const Eigen::MatrixXcd& H,
                                    const Eigen::MatrixXcd& P, double t,
                                    const OccupationHistory& h, int cap) {
  const Eigen::Index d = rho.rows();
  if (H.rows() != d || P.rows() != d)
    throw std::invalid_argument("collective_df_tensor_oracle: dimension mismatch");
  if (std::abs(rho.trace() - cdouble(1.0)) > 1e-10)
    throw std::invalid_argument("collective_df_tensor_oracle: trace(rho) != 1");
  if (h.n1 < 0 || h.n1 > h.N || h.n2 < 0 || h.n2 > h.N || h.n1p < 0 || h.n1p > h.N)
    throw std::invalid_argument("collective_df_tensor_oracle: occupation outside 0..N");
  if (std::pow(double(d), h.N) > cap)
    throw std::invalid_argument("collective_df_tensor_oracle: tensor cap exceeded");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd ph(d);
  for (Eigen::Index i = 0; i < d; ++i)
    ph(i) = std::polar(1.0, -t * es.eigenvalues()(i));
  const Eigen::MatrixXcd U1 =
      es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();

  // non-interacting sum Hamiltonian: e^{-i H_T t} factorizes
  Eigen::MatrixXcd UT = U1, rhoT = rho;
  for (int i = 1; i < h.N; ++i) {
    UT = kron(UT, U1);
    rhoT = kron(rhoT, rho);
  }
  const Eigen::MatrixXcd P1 = occupation_projector_oracle(P, h.N, h.n1, cap);
  const Eigen::MatrixXcd P2 = occupation_projector_oracle(P, h.N, h.n2, cap);
  const Eigen::MatrixXcd P1p = occupation_projector_oracle(P, h.N, h.n1p, cap);
  return (P2 * UT * P1 * rhoT * P1p * UT.adjoint()).trace();
}

ExactDFTable appendix_exact_table(const ComponentDF& df, int N,
                                  int n1_lo, int n1_hi, int n2_lo, int n2_hi,
                                  int n1p_lo, int n1p_hi, int cap) {
  if (N < 1 || N > cap) throw std::invalid_argument("appendix_exact_table: N outside 1..cap");
  auto check_range = [N](int lo, int hi) {
    if (lo < 0 || hi > N || lo > hi)
      throw std::invalid_argument("appendix_exact_table: occupation range outside 0..N");
  };
  check_range(n1_lo, n1_hi);
  check_range(n2_lo, n2_hi);
  check_range(n1p_lo, n1p_hi);

  // bases of the four binomial factors: expanding the final-time split twice
  // in the time-0 alternatives leaves one power of z per "yes at time 0"
  const cdouble c0 = df.d_nn_yn, c1 = df.p_yn;
  const cdouble d0 = df.p_nn, d1 = df.d_yn_nn;
  const cdouble e0 = df.d_ny_yy, e1 = df.p_yy;
  const cdouble f0 = df.p_ny, f1 = df.d_yy_ny;

  ExactDFTable table;
  table.N = N;

  for (int n2 = n2_lo; n2 <= n2_hi; ++n2) {
    const int K = N - n2, J = n2;
    const int k_lo = std::max(0, n1p_lo - J), k_hi = std::min(K, n1p_hi);
    const int j_lo = std::max(0, n1p_lo - K), j_hi = std::min(J, n1p_hi);
    if (k_lo > k_hi || j_lo > j_hi) continue;

    // the convolved factor polynomials depend only on (n2, k) and (n2, j):
    // share them across the whole (n1, n1p) block
    std::vector<LogPoly> CB(k_hi - k_lo + 1), EF(j_hi - j_lo + 1);
    for (int k = k_lo; k <= k_hi; ++k)
      CB[k - k_lo] = convolve(expand_pow(c0, c1, k), expand_pow(d0, d1, K - k));
    for (int j = j_lo; j <= j_hi; ++j)
      EF[j - j_lo] = convolve(expand_pow(e0, e1, j), expand_pow(f0, f1, J - j));

    for (int n1p = n1p_lo; n1p <= n1p_hi; ++n1p) {
      const int kk_lo = std::max(k_lo, n1p - j_hi), kk_hi = std::min(k_hi, n1p - j_lo);
      for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
        ScaledAccumulator sum;
        for (int k = kk_lo; k <= kk_hi; ++k) {
          const int j = n1p - k;
          const LogPoly& cb = CB[k - k_lo];
          const LogPoly& ef = EF[j - j_lo];
          cdouble inner = 0;
          const int i_lo = std::max(0, n1 - int(ef.c.size()) + 1);
          const int i_hi = std::min(int(cb.c.size()) - 1, n1);
          for (int i = i_lo; i <= i_hi; ++i)
            inner += cb.c[i] * ef.c[n1 - i];
          sum.add(inner, lchoose(K, k) + lchoose(J, j) + cb.ls + ef.ls);
        }
        cdouble v = sum.value();
        if (v != cdouble(0)) {
          const double lv = lchoose(N, n2) + std::log(std::abs(v));
          v = std::polar(std::exp(lv), std::arg(v));
        }
        table.values[{n1, n2, n1p}] = v;
      }
    }
  }
  return table;
}

cdouble appendix_exact(const ComponentDF& df, const OccupationHistory& h, int cap) {
  const auto t = appendix_exact_table(df, h.N, h.n1, h.n1, h.n2, h.n2,
                                      h.n1p, h.n1p, cap);
  return t.values.at({h.n1, h.n2, h.n1p});
}

GaussianCoefficients gaussian_coefficients(const ComponentDF& df, double N) {
  const double im = df.d_yy_ny.imag();
  if (imag_d_vanishes(df))
    throw std::domain_error("gaussian_coefficients: gaussian channel degenerate (Im d = 0)");
  const double p00 = df.p0() * df.pbar0(), ptt = df.pt() * df.pbart();
  if (p00 <= 0.0 || ptt <= 0.0)
    throw std::domain_error("gaussian_coefficients: degenerate marginal probability");

  GaussianCoefficients gc;
  // The saddle expansion of the generating bracket gives the mu1*xi2 cross
  // term coefficient 4iN Im d, i.e. A02 = 2iN Im d under the same symmetric
  // convention that yields A12 below. (The factor 2 is confirmed by the exact
  // sum: the off-diagonal decay rate alpha matches Gamma/(8 N Im d^2).)
  gc.A02_im = 2.0 * N * im;
  gc.A11 = 2.0 * N * p00;
  gc.A12 = 2.0 * N * (df.p_yy - df.p0() * df.pt() + df.d_yy_ny.real());
  gc.A22 = 2.0 * N * ptt;
  // i A02 = -A02_im, so (i A02)^2 = A02_im^2
  gc.alpha = (gc.A11 * gc.A22 - gc.A12 * gc.A12) / (4.0 * gc.A11 * gc.A02_im * gc.A02_im);
  gc.beta = 1.0 / (4.0 * gc.A11);
  gc.gamma = -1.0 / gc.A02_im;
  // nu carries the opposite sign to gamma's 1/(i A02) pattern: completing the
  // square in xi_1 pairs the A12 cross term with +i v, not -i v. The sign is
  // observable through tph below, where the exact sum's n1-n2 covariance
  // (Cov = N(p_yy - p0 pt + Re d) per particle) fixes nu*gamma > 0 for A12 < 0.
  gc.nu = gc.A12 / (2.0 * gc.A11 * gc.A02_im);
  return gc;
}

SmearedCoefficients smeared_coefficients(const GaussianCoefficients& gc, double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("smeared_coefficients: sigma must be positive");
  const double s2 = sigma * sigma;
  const double db = 1.0 + 4.0 * s2 * gc.beta;

  SmearedCoefficients sc;
  sc.sigma = sigma;
  sc.b = gc.alpha + gc.gamma * gc.gamma * s2 / 2.0 + gc.nu * gc.nu * s2 / db;
  const double da = 1.0 + 4.0 * s2 * sc.b;
  sc.ta = sc.b / da;
  sc.tb = gc.beta / db + s2 * gc.nu * gc.nu / (da * db * db);
  sc.te = gc.gamma * gc.gamma * s2 / da;
  sc.tph = 2.0 * s2 * gc.nu * gc.gamma / (da * db);
  sc.tg = gc.gamma / da;
  sc.tn = gc.nu / (da * db);
  return sc;
}

cdouble collective_df_gaussian(const SmearedCoefficients& sc, double N,
                               double p0, double pt,
                               double N1, double N2, double N1p) {
  const double u = N1 - N1p;
  const double v = N1 + N1p - 2.0 * N * p0;
  const double w = N2 - N * pt;
  const cdouble expo(-sc.ta * u * u - sc.tb * v * v - sc.te * w * w - sc.tph * w * v,
                     -sc.tg * u * w - sc.tn * u * v);
  return std::exp(expo);
}

double decoherence_ratio(const SmearedCoefficients& sc, double N1, double N1p) {
  if (sc.ta <= sc.tb)
    throw std::domain_error("decoherence_ratio: no off-diagonal suppression (ta <= tb)");
  const double u = N1 - N1p;
  return std::exp(-(sc.ta - sc.tb) * u * u);
}

EpsilonResult degree_of_decoherence(const ComponentDF& df, double N, double f) {
  EpsilonResult r;
  r.sigma = f * N;
  r.gamma = gamma_factor(df);
  const double im = df.d_yy_ny.imag();
  if (imag_d_vanishes(df)) {
    // perfect decoherence limit rather than a division by zero
    r.degenerate = true;
    r.log_eps = r.log_eps_exact = -std::numeric_limits<double>::infinity();
    r.eps = r.eps_exact = 0.0;
    return r;
  }
  r.log_eps = -N * r.gamma * f * f / (im * im);
  const auto sc = smeared_coefficients(gaussian_coefficients(df, N), r.sigma);
  r.log_eps_exact = -(sc.ta - sc.tb) * r.sigma * r.sigma;
  r.eps = std::exp(r.log_eps);
  r.eps_exact = std::exp(r.log_eps_exact);
  return r;
}

double collective_probabilities(const SmearedCoefficients& sc, double N,
                                double p0, double pt, double N1, double N2) {
  const double v = N1 - N * p0;
  const double w = N2 - N * pt;
  return std::exp(-4.0 * sc.tb * v * v - sc.te * w * w - 2.0 * sc.tph * w * v);
}

} // namespace spinchain
