#include "deltachain/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deltachain {

namespace {

const complex kI{0.0, 1.0};

// Exponent s of the first basis function exp(s x): -beta (Bound) or
// i beta (Scattering). The second basis function is exp(-s x).
complex basis_exponent(const ChainParams& params) {
  return params.regime == Regime::Bound ? complex(-params.beta) : kI * params.beta;
}

WavePoint evaluate(complex a, complex b, complex s, double beta, double x) {
  const double norm = std::sqrt(2.0 * beta);
  const complex up = std::exp(s * x);
  const complex down = std::exp(-s * x);
  return {(a * up + b * down) / norm, s * (a * up - b * down) / norm};
}

void push(WaveSamples& out, double position, const WavePoint& point, int cell) {
  out.positions.push_back(position);
  out.values.push_back(point.value);
  out.derivatives.push_back(point.derivative);
  out.cell_index.push_back(cell);
}

WaveSamples sample_cell(complex a, complex b, const ChainParams& params,
                        const std::vector<double>& x_grid) {
  const complex s = basis_exponent(params);
  WaveSamples out;
  for (double x : x_grid) push(out, x, evaluate(a, b, s, params.beta, x), 0);
  return out;
}

}  // namespace

BlochEigensystem bloch_eigensystem(const TransferMatrix& m, const ChainParams& params) {
  params.validate();
  if (params.regime != Regime::Bound) {
    throw Error(ErrorKind::InvalidParameter, "bloch_eigensystem is defined in the Bound regime");
  }
  const double x = m.half_trace().real();
  if (!(std::abs(x) < 1.0)) {
    throw Error(ErrorKind::OutOfBand, "Bloch eigensystem needs |x| < 1, got x = " + std::to_string(x));
  }
  if (std::abs(m.b) == 0.0) {
    throw Error(ErrorKind::DegenerateCell, "cell matrix has b = 0 (no potential)");
  }
  const double root = std::sqrt(1.0 - x * x);
  const complex theta1{x, root};
  const complex ratio = (theta1 - m.a) / m.b;  // v / p
  if (!(ratio.imag() > 0.0)) {
    throw Error(ErrorKind::DegenerateCell, "Bloch eigenvector cannot be normalized");
  }
  const complex p = kI * std::sqrt(0.5 / ratio.imag());
  return {theta1, std::conj(theta1), p, ratio * p};
}

WaveSamples bloch_wavefunction(const ChainParams& params, CellKind kind, int branch,
                               const std::vector<double>& x_grid) {
  if (branch != 1 && branch != 2) {
    throw Error(ErrorKind::InvalidParameter, "Bloch branch must be 1 or 2");
  }
  if (params.gamma == 0.0) {
    throw Error(ErrorKind::DegenerateCell, "no band germ without a potential");
  }
  const BlochEigensystem e = bloch_eigensystem(cell_matrix(params, kind), params);
  if (branch == 1) return sample_cell(e.p, e.v, params, x_grid);
  return sample_cell(std::conj(e.p), std::conj(e.v), params, x_grid);
}

complex scalar_product(const WavePoint& f, const WavePoint& g) {
  return -kI * (std::conj(f.value) * g.derivative - std::conj(f.derivative) * g.value);
}

CompanionPair bound_companion_pair(double gamma, double q, CellKind kind,
                                   const std::vector<double>& x_grid) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorKind::BoundOutsideGerm, "a single well binds only for gamma > 0");
  }
  const ChainParams params = ChainParams::bound(0.5 * gamma, gamma, q);
  const TransferMatrix cell = cell_matrix(params, kind);
  const double x = cell.half_trace().real();
  if (!(std::abs(x) < 1.0)) {
    throw Error(ErrorKind::BoundOutsideGerm,
                "bound energy lies outside the cell's band germ, x = " + std::to_string(x));
  }
  const BlochEigensystem e = bloch_eigensystem(cell, params);
  // psi2 = i p (Phi_1 + Phi_2) and psi1 = i (conj(v) Phi_1 - v Phi_2).
  const complex c2 = kI * e.p;
  const complex a2 = c2 * (e.p + std::conj(e.p));
  const complex b2 = c2 * (e.v + std::conj(e.v));
  const complex a1 = kI * (std::conj(e.v) * e.p - e.v * std::conj(e.p));
  const complex b1 = kI * (std::conj(e.v) * e.v - e.v * std::conj(e.v));
  return {sample_cell(a1, b1, params, x_grid), sample_cell(a2, b2, params, x_grid)};
}

WaveSamples sample_wavefunction(const Word& word, const ChainParams& params,
                                const WavePoint& initial, int grid_per_cell) {
  params.validate();
  if (word.empty()) {
    throw Error(ErrorKind::InvalidParameter, "cannot sample an empty word");
  }
  if (grid_per_cell < 1) {
    throw Error(ErrorKind::InvalidParameter, "grid_per_cell must be >= 1");
  }
  if (params.regime == Regime::Bound && params.beta * word.length_ratio(params.q) >= kOverflowExponent) {
    throw Error(ErrorKind::OverflowRisk, "string too long for Bound-regime sampling at this beta");
  }
  const complex s = basis_exponent(params);
  const double norm = std::sqrt(2.0 * params.beta);
  complex a = norm * 0.5 * (initial.value + initial.derivative / s);
  complex b = norm * 0.5 * (initial.value - initial.derivative / s);

  const TransferMatrix cells[2] = {cell_matrix(params, CellKind::S),
                                   cell_matrix(params, CellKind::L)};
  WaveSamples out;
  const std::size_t total = word.size() * static_cast<std::size_t>(grid_per_cell + 1) + 1;
  out.positions.reserve(total);
  out.values.reserve(total);
  out.derivatives.reserve(total);
  out.cell_index.reserve(total);

  double offset = 0.0;
  int cell = 0;
  const auto& letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it, ++cell) {
    const double ratio = length_ratio(*it, params.q);
    for (int k = 0; k <= grid_per_cell; ++k) {
      const double x = ratio * k / grid_per_cell;
      push(out, offset + x, evaluate(a, b, s, params.beta, x), cell);
    }
    const TransferMatrix& m = cells[*it == CellKind::S ? 0 : 1];
    const complex next_a = m.a * a + m.b * b;
    b = m.c * a + m.d * b;
    a = next_a;
    offset += ratio;
  }
  push(out, offset, evaluate(a, b, s, params.beta, 0.0), cell);
  return out;
}

}  // namespace deltachain
