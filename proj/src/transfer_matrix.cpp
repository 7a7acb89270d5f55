#include "deltachain/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace deltachain {

namespace {

const complex kI{0.0, 1.0};

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be finite");
  }
}

}  // namespace

ChainParams ChainParams::bound(double beta, double gamma, double q) {
  ChainParams p{beta, gamma, q, Regime::Bound};
  p.validate();
  return p;
}

ChainParams ChainParams::scattering(double beta, double gamma, double q) {
  ChainParams p{beta, gamma, q, Regime::Scattering};
  p.validate();
  return p;
}

void ChainParams::validate() const {
  require_finite(beta, "beta");
  require_finite(gamma, "gamma");
  require_finite(q, "q");
  if (!(beta > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "beta must be positive, got " + std::to_string(beta));
  }
  if (!(q > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "q must be positive, got " + std::to_string(q));
  }
}

ChainParams ChainParams::with_beta(double new_beta) const {
  ChainParams p = *this;
  p.beta = new_beta;
  p.validate();
  return p;
}

double length_ratio(CellKind kind, double q) { return kind == CellKind::S ? 1.0 : q; }

double TransferMatrix::max_abs() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
  return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
          c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

double max_entry_distance(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  return (lhs - rhs).max_abs();
}

double relative_distance(const TransferMatrix& value, const TransferMatrix& reference) {
  return max_entry_distance(value, reference) / std::max(1.0, reference.max_abs());
}

TransferMatrix delta_matrix(const ChainParams& params) {
  params.validate();
  const complex half = params.regime == Regime::Bound ? complex(0.5 * params.delta())
                                                      : kI * (0.5 * params.delta());
  return {1.0 + half, half, -half, 1.0 - half};
}

TransferMatrix tunnel_matrix(const ChainParams& params, double ratio) {
  params.validate();
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw Error(ErrorKind::InvalidParameter, "tunnel length ratio must be positive");
  }
  const double phase = params.beta * ratio;
  if (params.regime == Regime::Bound) {
    if (phase > kOverflowExponent) {
      throw Error(ErrorKind::OverflowRisk,
                  "tunnel exponent beta*ratio = " + std::to_string(phase) + " exceeds " +
                      std::to_string(kOverflowExponent));
    }
    return {std::exp(-phase), 0.0, 0.0, std::exp(phase)};
  }
  // lambda = exp(-i beta) gives x = cos(beta) - (delta/2) sin(beta) for cell S.
  return {std::polar(1.0, phase), 0.0, 0.0, std::polar(1.0, -phase)};
}

TransferMatrix cell_matrix(const ChainParams& params, CellKind kind) {
  return delta_matrix(params) * tunnel_matrix(params, length_ratio(kind, params.q));
}

TransferMatrix compose(const TransferMatrix& lhs, const TransferMatrix& rhs) { return lhs * rhs; }

std::pair<complex, complex> chebyshev_u_pair(int n, complex x) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "chebyshev_u_pair needs n >= 1");
  }
  complex prev{0.0};  // U_{-1}
  complex cur{1.0};   // U_0
  for (int k = 1; k < n; ++k) {
    complex next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

TransferMatrix power_closed(const TransferMatrix& m, int n) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "power_closed needs n >= 1");
  }
  const complex x = m.half_trace();
  const double ax = std::abs(x);
  if (ax > 1.0 && n * std::acosh(ax) > kOverflowExponent) {
    throw Error(ErrorKind::OverflowRisk,
                "n * arcosh|x| = " + std::to_string(n * std::acosh(ax)) + " exceeds guard");
  }
  const auto [u1, u2] = chebyshev_u_pair(n, x);
  TransferMatrix r = m * u1;
  r.a -= u2;
  r.d -= u2;
  return r;
}

TransferMatrix commutator(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  return lhs * rhs * lhs.adjugate() * rhs.adjugate();
}

double commutator_invariant(const ChainParams& params) {
  params.validate();
  const double delta = params.delta();
  const double arg = (params.q - 1.0) * params.beta;
  const double s = params.regime == Regime::Bound ? std::sinh(arg) : std::sin(arg);
  return 1.0 + 0.5 * delta * delta * s * s;
}

}  // namespace deltachain
