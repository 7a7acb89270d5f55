#pragma once

// Exponential-basis transfer matrices for chains of equal-strength delta
// potentials separated by free tunnels.
//
// All lengths are measured in units of the short cell length b, so the
// dimensionless energy variable is beta = kappa*b (negative energy) or
// beta = k*b (positive energy) and the strength variable is gamma = u*b.
// The physical energy is E = -/+ (hbar^2 / 2 m b^2) beta^2.
//
// A matrix maps the amplitude pair of the two exponential solutions on the
// left of a segment to the pair on its right:
//   Bound:      psi = (A exp(-kappa x) + B exp(+kappa x)) / sqrt(2 kappa)
//   Scattering: psi = (A exp(+i k x)   + B exp(-i k x))   / sqrt(2 k)

#include <complex>
#include <numbers>
#include <utility>

#include "deltachain/errors.hpp"

namespace deltachain {

using complex = std::complex<double>;

inline constexpr double kGoldenRatio = std::numbers::phi;

/// Largest exponent accepted before a computation is refused as an overflow
/// risk. Roughly half the double range, which leaves room for products.
inline constexpr double kOverflowExponent = 300.0;

enum class Regime { Bound, Scattering };

enum class CellKind { S, L };

/// Dimensionless chain parameters. The regime flag, not the sign of beta,
/// selects negative (Bound) or positive (Scattering) energy.
struct ChainParams {
  double beta = 1.0;
  double gamma = 0.0;  // > 0 attractive, < 0 repulsive
  double q = kGoldenRatio;
  Regime regime = Regime::Bound;

  static ChainParams bound(double beta, double gamma, double q = kGoldenRatio);
  static ChainParams scattering(double beta, double gamma, double q = kGoldenRatio);

  /// Throws Error{InvalidParameter} unless beta > 0 and q > 0 (both finite).
  void validate() const;

  double delta() const { return gamma / beta; }
  ChainParams with_beta(double new_beta) const;
};

/// Tunnel length of a cell in units of b.
double length_ratio(CellKind kind, double q);

/// 2x2 unimodular matrix [[a, b], [c, d]] in the exponential basis.
struct TransferMatrix {
  complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static TransferMatrix identity() { return {}; }

  complex det() const { return a * d - b * c; }
  complex half_trace() const { return 0.5 * (a + d); }
  complex half_difference() const { return 0.5 * (a - d); }

  /// Adjugate, which is the inverse for a unimodular matrix.
  TransferMatrix adjugate() const { return {d, -b, -c, a}; }

  double max_abs() const;

  TransferMatrix operator*(const TransferMatrix& rhs) const;
  TransferMatrix operator*(complex s) const { return {a * s, b * s, c * s, d * s}; }
  TransferMatrix operator+(const TransferMatrix& rhs) const {
    return {a + rhs.a, b + rhs.b, c + rhs.c, d + rhs.d};
  }
  TransferMatrix operator-(const TransferMatrix& rhs) const {
    return {a - rhs.a, b - rhs.b, c - rhs.c, d - rhs.d};
  }
};

/// max |A_ij - B_ij|.
double max_entry_distance(const TransferMatrix& lhs, const TransferMatrix& rhs);

/// max |A_ij - B_ij| / max(1, max |B_ij|). Entries of bound-regime products
/// span many orders of magnitude, so errors are measured against the
/// largest entry of the reference.
double relative_distance(const TransferMatrix& value, const TransferMatrix& reference);

TransferMatrix delta_matrix(const ChainParams& params);

/// diag(exp(-beta r), exp(beta r)) in the Bound regime and
/// diag(exp(i beta r), exp(-i beta r)) in the Scattering regime.
TransferMatrix tunnel_matrix(const ChainParams& params, double ratio);

/// delta_matrix * tunnel_matrix: a tunnel followed by a delta at its right end.
TransferMatrix cell_matrix(const ChainParams& params, CellKind kind);

/// Matrix of the concatenation AB.
TransferMatrix compose(const TransferMatrix& lhs, const TransferMatrix& rhs);

/// Chebyshev polynomials of the second kind {U_{n-1}(x), U_{n-2}(x)} by
/// forward recurrence, with U_{-1} = 0.
std::pair<complex, complex> chebyshev_u_pair(int n, complex x);

/// M^n = U_{n-1}(x) M - U_{n-2}(x) I with x the half-trace. Valid inside
/// and outside the band; no division by sin(Kb).
TransferMatrix power_closed(const TransferMatrix& m, int n);

/// A B A^{-1} B^{-1}.
TransferMatrix commutator(const TransferMatrix& lhs, const TransferMatrix& rhs);

/// Half-trace of commutator(cell S, cell L) from the closed forms
///   Bound:      1 + delta^2/2 sinh^2((q - 1) beta)
///   Scattering: 1 + delta^2/2 sin^2((q - 1) beta)
double commutator_invariant(const ChainParams& params);

}  // namespace deltachain
