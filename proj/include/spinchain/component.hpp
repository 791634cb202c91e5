#pragma once

// Two-time, two-alternative decoherence functionals for a single component:
// the generic dense form and the spin-chain specialization, plus the M1
// sweep that generates the figure data.

#include <functional>
#include <vector>

#include "spinchain/spectral.hpp"

namespace spinchain {

// The eight entries of a two-time decoherence functional with alternatives
// y/n.  Entry naming: first label pair is the ket-branch history (time 0,
// time t), second the bra branch; the final-time alternatives always agree.
struct ComponentDF {
  double p_yy = 0, p_ny = 0, p_yn = 0, p_nn = 0;
  cdouble d_yy_ny, d_ny_yy, d_yn_nn, d_nn_yn;

  double p0() const { return p_yy + p_yn; }   // P(yes at 0)
  double pt() const { return p_yy + p_ny; }   // P(yes at t), diagonal marginal
  double pbar0() const { return 1.0 - p0(); }
  double pbart() const { return 1.0 - pt(); }

  double sum_rule_residual() const;  // |p_yy + p_ny + p_yn + p_nn - 1|
  double antisym_residual() const;   // pairwise off-diagonal cancellation
  double conj_residual() const;      // |d_ny_yy - conj(d_yy_ny)|
};

struct InitialPair {
  int k1 = 0; // site in region 1, 1 <= k1 <= M1
  int k2 = 0; // site in region 2, M1+1 <= k2 <= M
};

// region centers; the conventional default placement for sweeps
InitialPair centered_pair(int M, int M1);

// Evaluate the eight traces directly (dense evolution by eigendecomposition).
// rho must have unit trace, P must be an orthogonal projector.
ComponentDF component_df_generic(const Eigen::MatrixXcd& rho,
                                 const Eigen::MatrixXcd& H,
                                 const Eigen::MatrixXcd& P, double t);

// Spin-chain specialization for |Psi> = (|phi_k1> + |phi_k2>)/sqrt(2):
// everything reduces to three matrix elements of the evolved projector.
ComponentDF component_df_spin_chain(const ChainConfig& cfg, const InitialPair& pair);
ComponentDF component_df_spin_chain(const PropagatorKernel& ker, int M1, const InitialPair& pair);

// Gamma = pt pbart - (p_yy - p0 pt + Re d_yy_ny)^2 / (p0 pbar0).
// Throws std::domain_error when p0 is 0 or 1 (degenerate initial condition).
double gamma_factor(const ComponentDF& df);

struct SweepRow {
  int M1 = 0;
  ComponentDF df;
  double ratio = 0; // |d_yy_ny| / sqrt(p_yy p_ny)
  double fig3 = 0;  // (Im d_yy_ny)^2 / Gamma
};

// Full sweep M1 = 1..M-1.  Diagonal projector elements are updated through a
// cyclic prefix sum of |g|^2 (O(1) per row); the off-diagonal element is a
// direct O(M1) sum, so the whole sweep is O(M^2) after one O(M log M)
// transform.  pair_rule maps M1 to the initial pair; default is
// centered_pair.
std::vector<SweepRow> m1_sweep(int M, double chi, double t,
                               const std::function<InitialPair(int)>& pair_rule = {});

// single row computed from scratch (independent path, used for spot checks)
SweepRow sweep_row_direct(int M, double chi, double t, int M1, const InitialPair& pair);

} // namespace spinchain
