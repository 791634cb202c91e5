#pragma once

// N-component occupation-number decoherence functionals: brute-force tensor
// oracle, the exact multi-binomial sum, the large-N Gaussian approximation
// with coarse-graining, and the degree-of-decoherence formulas.

#include <map>
#include <tuple>

#include "spinchain/component.hpp"

namespace spinchain {

struct OccupationHistory {
  int N = 1;   // component count
  int n1 = 0;  // occupation at time 0, ket branch
  int n2 = 0;  // occupation at time t (common to both branches)
  int n1p = 0; // occupation at time 0, bra branch
};

// ---- oracles on the N-fold tensor space ----

// P_n = sum over all N-choose-n placements of P among (1-P) factors.
// Dense construction; dim(P)^N must not exceed cap.
Eigen::MatrixXcd occupation_projector_oracle(const Eigen::MatrixXcd& P, int N,
                                             int n, int cap = 4096);

// Tr(P_{n2} e^{-iH_T t} P_{n1} rho_T P_{n1p} e^{iH_T t}) with product initial
// state rho_T = rho^(x N) and the non-interacting sum Hamiltonian.
cdouble collective_df_tensor_oracle(const Eigen::MatrixXcd& rho,
                                    const Eigen::MatrixXcd& H,
                                    const Eigen::MatrixXcd& P, double t,
                                    const OccupationHistory& h, int cap = 4096);

// ---- exact evaluation from the component decoherence functional ----

// The sextuple binomial sum with the two Kronecker constraints, evaluated
// with log-gamma binomials and phase-tracked complex powers so it stays
// finite up to the cap.
cdouble appendix_exact(const ComponentDF& df, const OccupationHistory& h,
                       int cap = 500);

struct ExactDFTable {
  int N = 0;
  std::map<std::tuple<int, int, int>, cdouble> values; // (n1, n2, n1p) -> D
};

// Table over inclusive ranges; shares the inner binomial convolutions across
// all (n1, n1p) at fixed n2, which is what makes dense grids affordable.
ExactDFTable appendix_exact_table(const ComponentDF& df, int N,
                                  int n1_lo, int n1_hi, int n2_lo, int n2_hi,
                                  int n1p_lo, int n1p_hi, int cap = 500);

// ---- large-N Gaussian approximation ----

struct GaussianCoefficients {
  double A02_im = 0; // A02 = i * A02_im = 2i N Im(d_yy_ny); pure imaginary
  double A11 = 0;    // 2 N p0 pbar0
  double A12 = 0;    // 2 N (p_yy - p0 pt + Re d_yy_ny)
  double A22 = 0;    // 2 N pt pbart
  double alpha = 0, beta = 0, gamma = 0, nu = 0;
};

// Throws std::domain_error when Im d_yy_ny vanishes (to roundoff, relative
// to the Cauchy-Schwarz scale of d) or when a marginal probability is 0 or 1.
GaussianCoefficients gaussian_coefficients(const ComponentDF& df, double N);

struct SmearedCoefficients {
  double ta = 0, tb = 0, te = 0, tph = 0, tg = 0, tn = 0;
  double sigma = 0;
  double b = 0; // alpha + gamma^2 sigma^2/2 + nu^2 sigma^2/(1 + 4 sigma^2 beta)
};

SmearedCoefficients smeared_coefficients(const GaussianCoefficients& gc, double sigma);

// Smeared decoherence functional, unnormalized: meaningful only in ratios.
cdouble collective_df_gaussian(const SmearedCoefficients& sc, double N,
                               double p0, double pt,
                               double N1, double N2, double N1p);

// exp(-(ta - tb)(N1 - N1p)^2); throws std::domain_error when ta <= tb
// (no off-diagonal suppression).
double decoherence_ratio(const SmearedCoefficients& sc, double N1, double N1p);

struct EpsilonResult {
  double log_eps = 0;       // -N Gamma f^2 / (Im d)^2, the primary form
  double log_eps_exact = 0; // -(ta - tb) sigma^2, from the full coefficients
  double eps = 0;           // exp(log_eps); underflows to 0 for strong decoherence
  double eps_exact = 0;
  double gamma = 0;
  double sigma = 0; // f N
  bool degenerate = false; // Im d = 0: reported as the perfect limit eps = 0
};

EpsilonResult degree_of_decoherence(const ComponentDF& df, double N, double f);

// Diagonal of the smeared functional, unnormalized.
double collective_probabilities(const SmearedCoefficients& sc, double N,
                                double p0, double pt, double N1, double N2);

} // namespace spinchain
