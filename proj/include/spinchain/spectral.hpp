#pragma once

// One-magnon sector of the periodic chain: spin-wave spectrum, propagator
// column, and matrix elements of the time-evolved region-1 projector.

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace spinchain {

using cdouble = std::complex<double>;

struct ChainConfig {
  int M = 1000;     // number of sites
  int M1 = 500;     // size of region 1 (sites 1..M1)
  double chi = 1.0; // coupling energy, hbar = 1
  double t = 1000.0;

  int m2() const { return M - M1; }
  void validate() const; // throws std::invalid_argument
};

struct SpinWaveSpectrum {
  // E_l = -2 chi cos(2 pi l / M), l = 0..M-1 (DFT indexing; the set of
  // energies is the same under any cyclic relabeling of l)
  std::vector<double> energies;
};

struct PropagatorKernel {
  // g(D) = <phi_{k+D}| e^{-i H1 t} |phi_k>, D = 0..M-1.  Translation
  // invariance makes the whole evolution operator a single column; the
  // cosine dispersion makes g even: g(D) = g(M-D).
  std::vector<cdouble> g;
  int M() const { return static_cast<int>(g.size()); }
};

SpinWaveSpectrum spin_wave_energies(const ChainConfig& cfg);

// g via an O(M log M) transform of the phase vector exp(-i t E_l)
PropagatorKernel propagator_column(const ChainConfig& cfg);

// <phi_n| P(t) |phi_n'> = sum_{k=1}^{M1} g(k-n) conj(g(k-n')), where P
// projects onto down-spin position in region 1 and P(t) is the evolved
// projector.  Site indices are 1-based, 1 <= n, n' <= M.
cdouble projector_matrix_element(const PropagatorKernel& ker, int M1, int n, int nprime);
cdouble projector_matrix_element(const ChainConfig& cfg, int n, int nprime);

// d(l,l') = sum_{k=1}^{M1} exp(-2 pi i k (l-l')/M); closed geometric form,
// with the l = l' branch returning exactly M1
cdouble d_kernel(const ChainConfig& cfg, int l, int lprime);

// Dense-matrix oracle: build H1 as the circulant hopping matrix, exponentiate
// by full eigendecomposition, conjugate the region-1 projector.  Returns the
// full M x M matrix of <phi_n| P(t) |phi_n'> (n,n' zero-based rows/cols for
// sites 1..M).
Eigen::MatrixXcd dense_oracle(const ChainConfig& cfg, int cap = 256);

// Full 2^m Hilbert space machinery (shared with the conservation checks).
// Basis states are bitmasks; bit k set means site k+1 has its spin down.
Eigen::MatrixXcd pauli_hamiltonian(int m, double chi);
Eigen::MatrixXcd swap_operator(int m, int site); // p^{site,site+1}, 1-based, periodic

struct TinyHilbertReport {
  double swap_action_residual;    // exchange action on one-down-spin states
  double spectator_residual;      // p^{k,k+1}|phi_n> = |phi_n> for n off the bond
  double shift_identity_residual; // H - (-chi sum_k p^{k,k+1} + chi m/2) == 0
  double spinwave_residual;       // max_l ||H|psi_l> - (E_l + offset)|psi_l>||
  double sz_commutator_residual;  // ||[H, total S_z]||_max
  double propagator_residual;     // sector of e^{-iHt} vs g, after offset phase
  double offset;                  // 2 chi - chi m/2: Pauli eigenvalue minus E_l
  bool pass(double tol = 1e-10) const;
};

// Dense verification on the full 2^m space (m <= 12)
TinyHilbertReport tiny_hilbert_oracle(int m, double chi, double t);

} // namespace spinchain
