#pragma once

// Positive-energy scattering by a finite string: the S-matrix from the
// transfer matrix, the pole/bound-state correspondence, backscattering at
// band edges, and the commuting energies beta = tau p pi of the Fibonacci
// cells.

#include <vector>

#include "deltachain/spectra.hpp"

namespace deltachain {

/// Amplitudes: s_pp forward from the left, s_mp reflected to the left,
/// s_pm reflected to the right, s_mm forward from the right. Phases are
/// referred to the string ends so the free string gives the identity.
struct SMatrix {
  complex s_pp, s_pm, s_mp, s_mm;
  double h_ratio = 0.0;  // string length in units of b
};

/// Rational form from the entries of a Scattering-regime transfer matrix:
///   s_pp = s_mm = exp(-i beta h)/d, s_mp = -c/d, s_pm = b exp(-2 i beta h)/d.
/// Throws ResonancePole if |d| < 1e-12.
SMatrix s_matrix_from_transfer(const TransferMatrix& m, double beta, double h_ratio);

SMatrix s_matrix(const Word& word, const ChainParams& params);

/// Poles of the continued S-matrix on the negative-energy axis: the
/// Bound-regime roots of d, found exactly as bound_states.
std::vector<BoundState> bound_poles(const Word& word, double gamma, double q,
                                    const ScanOptions& options = {});

/// |s_pp| continued to k = i kappa: exp(kappa h) / |d(kappa)|.
double continued_forward_amplitude(const Word& word, double gamma, double q, double kappa);

struct BackscatterSample {
  double beta = 0.0;
  double abs_s_mp = 0.0;
  double x = 0.0;   // single-cell half-trace
  double kb = 0.0;  // arccos of x clamped to [-1, 1]
};

struct BackscatterPeak {
  double beta = 0.0;
  double abs_s_mp = 0.0;
  int mu = 0;              // nearest band edge Kb = mu pi
  double edge_beta = 0.0;  // mu pi, where x_1 = (-1)^mu exactly
  double width = 0.0;      // full width at half maximum, grid resolution
};

struct BackscatterScan {
  std::vector<BackscatterSample> samples;
  std::vector<BackscatterPeak> peaks;
};

/// |s_mp| of S^n on a uniform beta grid with the power taken in closed
/// form, plus the local maxima of |s_mp| tagged with the nearest mu pi.
BackscatterScan backscatter_scan(int n, double gamma, double beta_min, double beta_max,
                                 int grid);

struct BandEdgeLimit {
  complex s_pp;  // 1 / (1 - i n delta/2)
  complex s_mp;  // i (n delta/2) / (1 - i n delta/2)
};

BandEdgeLimit band_edge_limit(int n, double delta);

struct CommutingReport {
  int p = 0;
  double beta = 0.0;                // tau p pi
  double commutator_deviation = 0.0;  // max |K - 1|
  double proportional_deviation = 0.0;  // max |M_2 - (-1)^p M_1|
  bool proportional = false;
  bool in_overlap = false;  // |x_1| <= 1 and |x_2| <= 1
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Reports for p = 1..p_max at q = tau.
std::vector<CommutingReport> commuting_points(int p_max, double gamma);

/// max |M(W_m) - (-1)^(p f_{m-1}) M_1^(f_m)| at beta = tau p pi, q = tau.
double fibonacci_periodic_equivalence(int m, int p, double gamma);

}  // namespace deltachain
