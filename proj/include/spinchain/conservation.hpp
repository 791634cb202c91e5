#pragma once

// Discrete analogs of the conservation -> decoherence connection, verified
// on tiny dense chains: the flux-balance identity for a regional charge and
// the amplitude-suppression relation between off-diagonal amplitudes and the
// time-integrated boundary current.

#include <vector>

#include "spinchain/spectral.hpp"

namespace spinchain {

// Number of down spins inside a site region V, on the full 2^m space.
// Diagonal in the computational basis with integer spectrum {0..|V|}.
struct RegionalCharge {
  int m = 0;
  std::vector<int> region;  // 1-based sites
  Eigen::VectorXd diag;     // Q's diagonal
  Eigen::MatrixXcd matrix() const;
  Eigen::MatrixXcd spectral_projector(int alpha) const; // Kronecker projector
};

RegionalCharge regional_charge(int m, const std::vector<int>& region);

struct FluxBalanceReport {
  double residual = 0;          // ||Q_t - Q - sum_quadrature J|| (Frobenius)
  double locality_residual = 0; // largest current matrix element not on a
                                // boundary-crossing bond swap
  int steps = 0;
};

// Q_t = e^{iHt} Q e^{-iHt}; the Heisenberg current J(t') = i[H,Q](t') is
// integrated with the composite midpoint rule (evaluated in closed form in
// H's eigenbasis, which equals the literal midpoint sum).  The residual
// converges to zero at second order in the step size.
FluxBalanceReport flux_balance_check(const Eigen::MatrixXcd& H,
                                     const RegionalCharge& Q, double t,
                                     int steps);

struct AmplitudePair {
  cdouble direct;    // <m| P_{a2} e^{iHt} P_{a1} |n>
  cdouble flux_form; // -(a2-a1)^{-1} <m| P_{a2} (int_0^t J dt') e^{iHt} P_{a1} |n>
};

// The two sides of the amplitude-suppression relation for Kronecker spectral
// projectors of Q.  They agree up to quadrature error: with P2 Q = a2 P2,
// Q P1 = a1 P1 and Q_t e^{iHt} = e^{iHt} Q, the identity
// (a1 - a2) P2 e^{iHt} P1 = P2 (Q_t - Q) e^{iHt} P1 is exact.
AmplitudePair amplitude_suppression_check(const Eigen::MatrixXcd& H,
                                          const RegionalCharge& Q, double t,
                                          const Eigen::VectorXcd& state_m,
                                          const Eigen::VectorXcd& state_n,
                                          int alpha1, int alpha2, int steps);

} // namespace spinchain
