#pragma once

#include <Eigen/Dense>

#include <vector>

#include "deltachain/scattering.hpp"

namespace deltachain::testing {

// Scattering solution from the matching conditions at every delta, solved
// as one linear system in global coordinates. Region k lies between delta
// k - 1 and delta k and carries psi = A_k exp(i beta x) + B_k exp(-i beta x).
// The deltas sit at the right end of each cell, cells in spatial order
// (last letter leftmost).
inline SMatrix linear_solve_oracle(const Word& word, double beta, double gamma, double q) {
  const complex i_unit{0.0, 1.0};
  std::vector<double> positions;
  double x = 0.0;
  for (auto it = word.letters().rbegin(); it != word.letters().rend(); ++it) {
    x += length_ratio(*it, q);
    positions.push_back(x);
  }
  const int n = static_cast<int>(positions.size());
  const int unknowns = 2 * (n + 1);
  auto solve = [&](complex a0, complex bn) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(unknowns, unknowns);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(unknowns);
    for (int k = 0; k < n; ++k) {
      const complex ep = std::exp(i_unit * beta * positions[k]);
      const complex em = std::exp(-i_unit * beta * positions[k]);
      const int l = 2 * k, r = 2 * (k + 1);
      // psi continuous
      m(2 * k, r) = ep;
      m(2 * k, r + 1) = em;
      m(2 * k, l) = -ep;
      m(2 * k, l + 1) = -em;
      // psi'(right) - psi'(left) + gamma psi = 0
      m(2 * k + 1, r) = i_unit * beta * ep;
      m(2 * k + 1, r + 1) = -i_unit * beta * em;
      m(2 * k + 1, l) = -i_unit * beta * ep + gamma * ep;
      m(2 * k + 1, l + 1) = i_unit * beta * em + gamma * em;
    }
    m(2 * n, 0) = 1.0;
    rhs(2 * n) = a0;
    m(2 * n + 1, 2 * n + 1) = 1.0;
    rhs(2 * n + 1) = bn;
    return Eigen::VectorXcd(m.fullPivLu().solve(rhs));
  };
  const auto left = solve(1.0, 0.0);
  const auto right = solve(0.0, 1.0);
  SMatrix s;
  s.s_pp = left(2 * n);
  s.s_mp = left(1);
  s.s_pm = right(2 * n);
  s.s_mm = right(1);
  s.h_ratio = x;
  return s;
}

}  // namespace deltachain::testing
