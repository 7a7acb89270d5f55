#pragma once

// Negative-energy spectral analysis of finite strings: energy gauge, band
// germs (|x| <= 1), bound states (d = 0), Bloch labels, rational and
// supercell label schemes, the binding equation and a density of states.

#include <optional>
#include <utility>
#include <vector>

#include "deltachain/substitution.hpp"

namespace deltachain {

/// Tolerance on |x| - 1 when classifying a grid point as inside a germ.
inline constexpr double kGermTolerance = 1e-9;

enum class EdgeKind {
  XPlusOne,   // x = +1
  XMinusOne,  // x = -1
  ScanLimit,  // germ continues past the end of the scanned beta range
};

std::string_view edge_kind_name(EdgeKind kind);

struct BandGerm {
  double beta_lo = 0.0;
  double beta_hi = 0.0;
  EdgeKind edge_kind_lo = EdgeKind::ScanLimit;
  EdgeKind edge_kind_hi = EdgeKind::ScanLimit;
};

struct BoundState {
  double beta_star = 0.0;
  int index = 0;
};

/// Uniform beta scan. `steps` is the number of grid points, endpoints
/// included. Below beta = 0.05 delta = gamma/beta diverges; that region is
/// left unscanned by default.
struct ScanOptions {
  double beta_min = 0.05;
  double beta_max = 6.0;
  int steps = 2000;

  void validate() const;
};

/// Real half-trace of the word's transfer matrix.
double half_trace_at(const Word& word, const ChainParams& params);

/// 0 inside a band germ (|x| <= 1), 1 outside. Bound regime.
int energy_gauge(const Word& word, double gamma, double q, double beta);

/// Maximal beta intervals with |x| <= 1, edges bisected on x -/+ 1. A
/// second scan at four times the density must find the same germ count,
/// otherwise GridTooCoarse is thrown.
std::vector<BandGerm> band_germs(const Word& word, double gamma, double q,
                                 const ScanOptions& options = {},
                                 Regime regime = Regime::Bound);

/// Sign-change roots of d(beta) in the Bound regime, bisected and checked
/// against a 4x denser scan like band_germs. Every same-sign local minimum
/// of |d| on the denser scan is also probed for a pair of roots closer than
/// the spacing.
std::vector<BoundState> bound_states(const Word& word, double gamma, double q,
                                     const ScanOptions& options = {});

/// Kb = arccos(x) in [0, pi]. Throws OutOfBand if |x| > 1 + 1e-12.
double bloch_label(double x);

struct RationalLabel {
  int n = 1;
  int mu = 0;
  double kb = 0.0;  // mu*pi/n
  /// [mu pi/n, (mu+1) pi/n]; absent for the top label mu = n.
  std::optional<std::pair<double, double>> partial_band;
  complex representation;  // exp(i mu 2 pi / 2n) of the cyclic group C_2n
};

std::vector<RationalLabel> rational_labels(int n);

struct SupercellLabel {
  int mu = 0;
  double k_reduced = 0.0;  // Kb - mu pi/n, in [0, pi/n]
};

SupercellLabel supercell_label(double kb, int n);

struct BindingResidual {
  double lhs = 0.0;  // tan(n Kb)
  double rhs = 0.0;  // sin(Kb) / y_1
};

/// Both sides of the binding equation tan(n Kb) = sin(Kb)/y_1 for the
/// periodic string S^n. Throws OutOfBand outside the single-cell germ.
BindingResidual binding_equation_residual(int n, double beta, double gamma);

/// Betas where the two sides of the binding equation intersect, scanned
/// across the single-cell germs. Poles of either side are rejected.
std::vector<double> binding_intersections(int n, double gamma, const ScanOptions& options = {});

struct PartialBandCount {
  int mu = 0;
  double kb_lo = 0.0;
  double kb_hi = 0.0;
  double beta_lo = 0.0;
  double beta_hi = 0.0;
  int bound_count = 0;
};

/// For each of the n partial bands of the single-cell germ, the number of
/// bound states of S^n whose beta falls inside it.
std::vector<PartialBandCount> partial_band_census(int n, double gamma,
                                                  const ScanOptions& options = {});

struct DosSample {
  double beta = 0.0;
  double energy = 0.0;  // -beta^2, in units of hbar^2 / 2 m b^2
  double kb = 0.0;
  double dkb_dbeta = 0.0;
  double density = 0.0;  // |dK/dE|, normalized to unit integral over the germ
};

/// Density of states dN/dE ~ dK/dE across the first single-cell germ, by
/// finite differences (one-sided at the germ edges).
std::vector<DosSample> dos_estimate(double gamma, int grid, const ScanOptions& options = {});

}  // namespace deltachain
