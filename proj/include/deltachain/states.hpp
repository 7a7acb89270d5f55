#pragma once

// Wavefunctions on cells and strings: the Bloch eigensystem of a cell
// matrix, Bloch states, the indefinite scalar product, the bound/companion
// pair and piecewise-exact sampling along a word.
//
// Spatial convention: a cell is its tunnel followed by its delta at the
// right end, and the matrix maps coefficients at the cell start to those
// just past the delta. Since word_matrix(WV) = M(W) M(V), the letters of a
// word are traversed right to left: the last letter is the leftmost cell.
// Positions are in units of b and start at 0 at the left end of the string.

#include <vector>

#include "deltachain/substitution.hpp"

namespace deltachain {

struct BlochEigensystem {
  complex theta1, theta2;  // eigenvalues, theta2 = conj(theta1)
  complex p, v;            // first column of V; the second is (conj p, conj v)
};

/// Eigensystem of a Bound-regime cell matrix with det V = p conj(v) - v conj(p) = -i
/// and p purely imaginary with positive imaginary part.
/// Throws OutOfBand unless |x| < 1, DegenerateCell if b = 0.
BlochEigensystem bloch_eigensystem(const TransferMatrix& m, const ChainParams& params);

/// Value and derivative of a solution at one point.
struct WavePoint {
  complex value;
  complex derivative;
};

struct WaveSamples {
  std::vector<double> positions;
  std::vector<complex> values;
  std::vector<complex> derivatives;
  /// Index of the cell (in spatial order) each sample belongs to; samples
  /// after the last delta carry the cell count.
  std::vector<int> cell_index;

  WavePoint point(std::size_t i) const { return {values[i], derivatives[i]}; }
  std::size_t size() const { return positions.size(); }
};

/// Bloch state Phi_branch (1 or 2) of a single cell on positions in
/// [0, length ratio]. Phi_2 = conj(Phi_1). Bound regime.
WaveSamples bloch_wavefunction(const ChainParams& params, CellKind kind, int branch,
                               const std::vector<double>& x_grid);

/// Indefinite bracket (-i)(conj(f) g' - conj(f') g).
complex scalar_product(const WavePoint& f, const WavePoint& g);

struct CompanionPair {
  WaveSamples psi1;  // real, exp(-beta x)/sqrt(2 beta) in the tunnel
  WaveSamples psi2;  // real bound combination -|p| (Phi_1 + Phi_2)
};

/// Bound state psi2 of a single cell at delta = 2 (beta = gamma/2) and its
/// companion psi1, built from the Bloch states. Throws BoundOutsideGerm if
/// the bound energy is outside the cell's germ.
CompanionPair bound_companion_pair(double gamma, double q, CellKind kind,
                                   const std::vector<double>& x_grid);

/// Samples psi across the word from initial data (psi, psi') at the left
/// end. Each cell contributes grid_per_cell + 1 samples over its tunnel, so
/// every delta position appears twice (before and after the jump); a final
/// post-delta sample closes the string.
WaveSamples sample_wavefunction(const Word& word, const ChainParams& params,
                                const WavePoint& initial, int grid_per_cell = 64);

}  // namespace deltachain
