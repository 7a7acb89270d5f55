#include "deltachain/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"

namespace deltachain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleThreshold = 1e-12;
constexpr double kProportionalTolerance = 1e-9;
const complex kI{0.0, 1.0};

double sign_power(long long exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

SMatrix s_matrix_from_transfer(const TransferMatrix& m, double beta, double h_ratio) {
  if (std::abs(m.d) < kPoleThreshold) {
    throw Error(ErrorKind::ResonancePole, "|d| below 1e-12 at beta = " + std::to_string(beta));
  }
  const complex phase = std::polar(1.0, -beta * h_ratio);
  SMatrix s;
  s.s_pp = phase / m.d;
  s.s_mm = phase / m.d;
  s.s_mp = -m.c / m.d;
  s.s_pm = m.b * phase * phase / m.d;
  s.h_ratio = h_ratio;
  return s;
}

SMatrix s_matrix(const Word& word, const ChainParams& params) {
  if (params.regime != Regime::Scattering) {
    throw Error(ErrorKind::InvalidParameter, "s_matrix needs the Scattering regime");
  }
  return s_matrix_from_transfer(word_matrix(word, params), params.beta,
                                word.length_ratio(params.q));
}

std::vector<BoundState> bound_poles(const Word& word, double gamma, double q,
                                    const ScanOptions& options) {
  return bound_states(word, gamma, q, options);
}

double continued_forward_amplitude(const Word& word, double gamma, double q, double kappa) {
  const TransferMatrix m = word_matrix(word, ChainParams::bound(kappa, gamma, q));
  return std::exp(kappa * word.length_ratio(q)) / std::abs(m.d);
}

BackscatterScan backscatter_scan(int n, double gamma, double beta_min, double beta_max,
                                 int grid) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "string length must be >= 1");
  }
  if (!(beta_min > 0.0) || !(beta_max > beta_min) || grid < 3) {
    throw Error(ErrorKind::InvalidParameter, "backscatter scan needs 0 < beta_min < beta_max, grid >= 3");
  }
  std::vector<double> betas(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    betas[static_cast<std::size_t>(i)] = beta_min + (beta_max - beta_min) * i / (grid - 1);
  }
  BackscatterScan scan;
  scan.samples = detail::parallel_map<BackscatterSample>(betas, [n, gamma](double beta) {
    const ChainParams params = ChainParams::scattering(beta, gamma, 1.0);
    const TransferMatrix cell = cell_matrix(params, CellKind::S);
    const TransferMatrix power = power_closed(cell, n);
    const double x = cell.half_trace().real();
    return BackscatterSample{beta, std::abs(power.c / power.d), x,
                             std::acos(std::clamp(x, -1.0, 1.0))};
  });

  const auto& s = scan.samples;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i].abs_s_mp > s[i - 1].abs_s_mp && s[i].abs_s_mp >= s[i + 1].abs_s_mp)) continue;
    BackscatterPeak peak;
    peak.beta = s[i].beta;
    peak.abs_s_mp = s[i].abs_s_mp;
    peak.mu = static_cast<int>(std::lround(s[i].beta / kPi));
    peak.edge_beta = peak.mu * kPi;
    const double half = 0.5 * peak.abs_s_mp;
    std::size_t lo = i;
    while (lo > 0 && s[lo].abs_s_mp > half) --lo;
    std::size_t hi = i;
    while (hi + 1 < s.size() && s[hi].abs_s_mp > half) ++hi;
    peak.width = s[hi].beta - s[lo].beta;
    scan.peaks.push_back(peak);
  }
  return scan;
}

BandEdgeLimit band_edge_limit(int n, double delta) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "string length must be >= 1");
  }
  const double half = 0.5 * n * delta;
  const complex denom = 1.0 - kI * half;
  return {1.0 / denom, kI * half / denom};
}

std::vector<CommutingReport> commuting_points(int p_max, double gamma) {
  if (p_max < 1) {
    throw Error(ErrorKind::InvalidParameter, "p_max must be >= 1 (beta = 0 is excluded)");
  }
  std::vector<CommutingReport> reports;
  for (int p = 1; p <= p_max; ++p) {
    const double beta = kGoldenRatio * p * kPi;
    const ChainParams params = ChainParams::scattering(beta, gamma, kGoldenRatio);
    const TransferMatrix m1 = cell_matrix(params, CellKind::S);
    const TransferMatrix m2 = cell_matrix(params, CellKind::L);
    CommutingReport r;
    r.p = p;
    r.beta = beta;
    r.commutator_deviation = max_entry_distance(commutator(m1, m2), TransferMatrix::identity());
    r.proportional_deviation = max_entry_distance(m2, m1 * sign_power(p));
    r.proportional = r.proportional_deviation <= kProportionalTolerance;
    r.x1 = m1.half_trace().real();
    r.x2 = m2.half_trace().real();
    r.in_overlap = std::abs(r.x1) <= 1.0 && std::abs(r.x2) <= 1.0;
    reports.push_back(r);
  }
  return reports;
}

double fibonacci_periodic_equivalence(int m, int p, double gamma) {
  if (m < 2 || p < 1) {
    throw Error(ErrorKind::InvalidParameter, "need m >= 2 and p >= 1");
  }
  const ChainParams params = ChainParams::scattering(kGoldenRatio * p * kPi, gamma, kGoldenRatio);
  const TransferMatrix direct = word_matrix(fibonacci_word(m), params);
  const auto length = static_cast<int>(fibonacci_number(m));
  const double sign = sign_power(static_cast<long long>(p) * static_cast<long long>(fibonacci_number(m - 1)));
  const TransferMatrix periodic = power_closed(cell_matrix(params, CellKind::S), length) * sign;
  return max_entry_distance(direct, periodic);
}

}  // namespace deltachain
