#include "deltachain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "parallel.hpp"

namespace deltachain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRefineFactor = 4;

std::vector<double> make_grid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

/// Bisection for a bracketed sign change of f on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

bool sign_change(double a, double b) { return std::signbit(a) != std::signbit(b); }

// -1 below the germ, 0 inside, +1 above.
int classify(double x) {
  if (x > 1.0 + kGermTolerance) return 1;
  if (x < -1.0 - kGermTolerance) return -1;
  return 0;
}

EdgeKind kind_of(int side) { return side > 0 ? EdgeKind::XPlusOne : EdgeKind::XMinusOne; }

std::size_t count_germs(const std::vector<int>& states) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == 0 && (i == 0 || states[i - 1] != 0)) ++count;
    if (i > 0 && states[i] != 0 && states[i - 1] == -states[i]) ++count;
  }
  return count;
}

std::size_t count_sign_changes(const std::vector<double>& values) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < values.size(); ++i) count += sign_change(values[i - 1], values[i]);
  return count;
}

std::size_t refined_points(int steps) {
  return static_cast<std::size_t>(kRefineFactor) * static_cast<std::size_t>(steps - 1) + 1;
}

std::function<double(double)> half_trace_function(const Word& word, double gamma, double q,
                                                  Regime regime) {
  return [word, gamma, q, regime](double beta) {
    return half_trace_at(word, ChainParams{beta, gamma, q, regime});
  };
}

std::function<double(double)> bound_element_function(const Word& word, double gamma, double q) {
  return [word, gamma, q](double beta) {
    return word_matrix(word, ChainParams{beta, gamma, q, Regime::Bound}).d.real();
  };
}

[[noreturn]] void throw_too_coarse(const std::string& what, std::size_t coarse,
                                   std::size_t fine, int steps) {
  throw Error(ErrorKind::GridTooCoarse,
              what + ": " + std::to_string(coarse) + " found with " + std::to_string(steps) +
                  " points but " + std::to_string(fine) +
                  " with 4x refinement; increase the step count");
}

// True if the positive function f, at a local minimum of its samples
// between lo and hi, actually reaches zero: a pair of crossings closer than
// the grid spacing.
bool dips_through(const std::function<double(double)>& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int iter = 0; iter < 80 && fc > 0.0 && fd > 0.0; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= 0.0 || fd <= 0.0;
}

// Scans the local minima of g over a sampled grid (g > 0 at every sample)
// and reports whether any of them dips through zero between samples.
bool hidden_crossing(const std::function<double(double)>& g, const std::vector<double>& grid,
                     const std::vector<double>& gs) {
  for (std::size_t j = 1; j + 1 < gs.size(); ++j) {
    if (gs[j - 1] <= 0.0 || gs[j] <= 0.0 || gs[j + 1] <= 0.0) continue;
    if (gs[j] < gs[j - 1] && gs[j] < gs[j + 1] && dips_through(g, grid[j - 1], grid[j + 1])) return true;
  }
  return false;
}

// Locates x = side near the transition between grid[i] and grid[i + 1].
double locate_edge(const std::function<double(double)>& x_of, const std::vector<double>& grid,
                   const std::vector<double>& xs, std::size_t i, int side) {
  auto f = [&](double beta) { return x_of(beta) - side; };
  if (sign_change(xs[i] - side, xs[i + 1] - side)) return bisect(f, grid[i], grid[i + 1]);
  // One endpoint sits within the tolerance band around +-1; widen once.
  const std::size_t lo = i > 0 ? i - 1 : i;
  const std::size_t hi = std::min(i + 2, grid.size() - 1);
  if (sign_change(xs[lo] - side, xs[hi] - side)) return bisect(f, grid[lo], grid[hi]);
  return classify(xs[i]) == 0 ? grid[i] : grid[i + 1];
}

}  // namespace

std::string_view edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::XPlusOne: return "x=+1";
    case EdgeKind::XMinusOne: return "x=-1";
    case EdgeKind::ScanLimit: return "scan_limit";
  }
  return "unknown";
}

void ScanOptions::validate() const {
  if (!(beta_min > 0.0) || !(beta_max > beta_min) || !std::isfinite(beta_max)) {
    throw Error(ErrorKind::InvalidParameter, "scan range needs 0 < beta_min < beta_max");
  }
  if (steps < 100) {
    throw Error(ErrorKind::InvalidParameter, "scan needs at least 100 grid points");
  }
}

double half_trace_at(const Word& word, const ChainParams& params) {
  return word_matrix(word, params).half_trace().real();
}

int energy_gauge(const Word& word, double gamma, double q, double beta) {
  const double x = half_trace_at(word, ChainParams::bound(beta, gamma, q));
  return std::abs(x) <= 1.0 ? 0 : 1;
}

std::vector<BandGerm> band_germs(const Word& word, double gamma, double q,
                                 const ScanOptions& options, Regime regime) {
  options.validate();
  const auto x_of = half_trace_function(word, gamma, q, regime);
  const auto grid = make_grid(options.beta_min, options.beta_max,
                              static_cast<std::size_t>(options.steps));
  const auto xs = detail::parallel_map<double>(grid, x_of);

  std::vector<int> states(xs.size());
  std::transform(xs.begin(), xs.end(), states.begin(), classify);

  std::vector<BandGerm> germs;
  BandGerm current;
  bool open = states.front() == 0;
  if (open) current = {grid.front(), 0.0, EdgeKind::ScanLimit, EdgeKind::ScanLimit};

  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const int s0 = states[i];
    const int s1 = states[i + 1];
    if (s0 == s1) continue;
    if (s0 == 0) {
      current.beta_hi = locate_edge(x_of, grid, xs, i, s1);
      current.edge_kind_hi = kind_of(s1);
      germs.push_back(current);
      open = false;
    } else if (s1 == 0) {
      current = {locate_edge(x_of, grid, xs, i, s0), 0.0, kind_of(s0), EdgeKind::ScanLimit};
      open = true;
    } else {
      // x jumps across the whole germ between two grid points.
      BandGerm hidden{locate_edge(x_of, grid, xs, i, s0), locate_edge(x_of, grid, xs, i, s1),
                      kind_of(s0), kind_of(s1)};
      if (hidden.beta_lo > hidden.beta_hi) {
        std::swap(hidden.beta_lo, hidden.beta_hi);
        std::swap(hidden.edge_kind_lo, hidden.edge_kind_hi);
      }
      germs.push_back(hidden);
    }
  }
  if (open) {
    current.beta_hi = grid.back();
    current.edge_kind_hi = EdgeKind::ScanLimit;
    germs.push_back(current);
  }

  const auto fine_grid = make_grid(options.beta_min, options.beta_max, refined_points(options.steps));
  const auto fine_xs = detail::parallel_map<double>(fine_grid, x_of);
  std::vector<int> fine_states(fine_xs.size());
  std::transform(fine_xs.begin(), fine_xs.end(), fine_states.begin(), classify);
  const std::size_t fine_count = count_germs(fine_states);
  if (fine_count != germs.size()) {
    throw_too_coarse("band germs", germs.size(), fine_count, options.steps);
  }
  // Distance outside the germ on the side each sample sits; probes for
  // germs narrower than the refined spacing.
  for (int side : {1, -1}) {
    std::vector<double> gap(fine_xs.size());
    for (std::size_t j = 0; j < gap.size(); ++j) {
      gap[j] = fine_states[j] == side ? side * fine_xs[j] - 1.0 : 0.0;
    }
    auto g = [&x_of, side](double beta) { return side * x_of(beta) - 1.0; };
    if (hidden_crossing(g, fine_grid, gap)) {
      throw Error(ErrorKind::GridTooCoarse,
                  "band germs: a germ narrower than the refined grid was found; increase the step count");
    }
  }
  return germs;
}

std::vector<BoundState> bound_states(const Word& word, double gamma, double q,
                                     const ScanOptions& options) {
  options.validate();
  const auto d_of = bound_element_function(word, gamma, q);
  const auto grid = make_grid(options.beta_min, options.beta_max,
                              static_cast<std::size_t>(options.steps));
  const auto ds = detail::parallel_map<double>(grid, d_of);

  std::vector<BoundState> roots;
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    if (!sign_change(ds[i], ds[i + 1])) continue;
    roots.push_back({bisect(d_of, grid[i], grid[i + 1]), static_cast<int>(roots.size())});
  }

  const auto fine_grid = make_grid(options.beta_min, options.beta_max, refined_points(options.steps));
  const auto fine_ds = detail::parallel_map<double>(fine_grid, d_of);
  const std::size_t fine_count = count_sign_changes(fine_ds);
  if (fine_count != roots.size()) {
    throw_too_coarse("bound states", roots.size(), fine_count, options.steps);
  }
  // |d| at same-sign local minima may still hide a close pair of roots.
  for (double sign : {1.0, -1.0}) {
    std::vector<double> g(fine_ds.size());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = sign * fine_ds[j];
    auto signed_d = [&d_of, sign](double beta) { return sign * d_of(beta); };
    if (hidden_crossing(signed_d, fine_grid, g)) {
      throw Error(ErrorKind::GridTooCoarse,
                  "bound states: a pair of roots closer than the refined grid was found; increase the step count");
    }
  }
  return roots;
}

double bloch_label(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    throw Error(ErrorKind::OutOfBand, "|x| = " + std::to_string(std::abs(x)) + " > 1");
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

std::vector<RationalLabel> rational_labels(int n) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "participation number must be >= 1");
  }
  std::vector<RationalLabel> labels;
  labels.reserve(static_cast<std::size_t>(n) + 1);
  const double step = kPi / n;
  for (int mu = 0; mu <= n; ++mu) {
    RationalLabel label;
    label.n = n;
    label.mu = mu;
    label.kb = mu == n ? kPi : mu * step;
    if (mu < n) label.partial_band = std::pair{label.kb, mu + 1 == n ? kPi : (mu + 1) * step};
    label.representation = std::polar(1.0, mu * 2.0 * kPi / (2.0 * n));
    labels.push_back(label);
  }
  return labels;
}

SupercellLabel supercell_label(double kb, int n) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "supercell size must be >= 1");
  }
  if (!(kb >= 0.0 && kb <= kPi)) {
    throw Error(ErrorKind::InvalidParameter, "Kb must lie in [0, pi]");
  }
  const int mu = std::clamp(static_cast<int>(std::floor(kb * n / kPi)), 0, n - 1);
  return {mu, kb - mu * kPi / n};
}

BindingResidual binding_equation_residual(int n, double beta, double gamma) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "string length must be >= 1");
  }
  const TransferMatrix cell = cell_matrix(ChainParams::bound(beta, gamma, 1.0), CellKind::S);
  const double kb = bloch_label(cell.half_trace().real());
  const double y1 = cell.half_difference().real();
  return {std::tan(n * kb), std::sin(kb) / y1};
}

std::vector<double> binding_intersections(int n, double gamma, const ScanOptions& options) {
  const Word cell = Word::from_letters("S");
  std::vector<double> roots;
  for (const BandGerm& germ : band_germs(cell, gamma, 1.0, options)) {
    auto h = [n, gamma](double beta) {
      const auto r = binding_equation_residual(n, beta, gamma);
      return r.lhs - r.rhs;
    };
    // Interior points only: both sides vanish at the germ edges.
    const auto grid = make_grid(germ.beta_lo, germ.beta_hi, static_cast<std::size_t>(options.steps) + 2);
    std::vector<double> values(grid.size());
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) values[i] = h(grid[i]);
    for (std::size_t i = 1; i + 2 < grid.size(); ++i) {
      if (!sign_change(values[i], values[i + 1])) continue;
      const double root = bisect(h, grid[i], grid[i + 1]);
      const auto r = binding_equation_residual(n, root, gamma);
      // A sign change across a pole of tan or of 1/y_1 bisects to a blow-up.
      if (std::abs(r.lhs - r.rhs) <= 1e-6 * std::max(1.0, std::abs(r.lhs))) roots.push_back(root);
    }
  }
  return roots;
}

std::vector<PartialBandCount> partial_band_census(int n, double gamma, const ScanOptions& options) {
  if (n < 1) {
    throw Error(ErrorKind::InvalidParameter, "string length must be >= 1");
  }
  const Word cell = Word::from_letters("S");
  const auto germs = band_germs(cell, gamma, 1.0, options);
  if (germs.empty()) {
    throw Error(ErrorKind::OutOfBand, "no single-cell band germ in the scanned range");
  }
  const BandGerm& germ = germs.front();
  const auto x_of = half_trace_function(cell, gamma, 1.0, Regime::Bound);

  // The dispersion must be monotone inside the germ to invert it.
  const auto grid = make_grid(germ.beta_lo, germ.beta_hi, static_cast<std::size_t>(options.steps));
  const auto xs = detail::parallel_map<double>(grid, x_of);
  const bool increasing = xs.back() > xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if ((xs[i] > xs[i - 1]) != increasing && xs[i] != xs[i - 1]) {
      throw Error(ErrorKind::NonMonotoneDispersion,
                  "x_1(beta) is not monotone near beta = " + std::to_string(grid[i]));
    }
  }

  // beta where x_1 = cos(kb), clipped to the germ when kb lies beyond a scan limit.
  auto beta_at = [&](double kb) {
    const double target = std::cos(kb);
    const double lo_val = xs.front() - target;
    const double hi_val = xs.back() - target;
    if (!sign_change(lo_val, hi_val)) {
      return std::abs(lo_val) < std::abs(hi_val) ? germ.beta_lo : germ.beta_hi;
    }
    return bisect([&](double beta) { return x_of(beta) - target; }, germ.beta_lo, germ.beta_hi);
  };

  const auto bound = bound_states(Word::repeat(CellKind::S, n), gamma, 1.0, options);
  std::vector<PartialBandCount> census;
  for (const RationalLabel& label : rational_labels(n)) {
    if (!label.partial_band) continue;
    PartialBandCount entry;
    entry.mu = label.mu;
    entry.kb_lo = label.partial_band->first;
    entry.kb_hi = label.partial_band->second;
    entry.beta_lo = beta_at(entry.kb_lo);
    entry.beta_hi = beta_at(entry.kb_hi);
    if (entry.beta_lo > entry.beta_hi) std::swap(entry.beta_lo, entry.beta_hi);
    for (const BoundState& s : bound) {
      entry.bound_count += (s.beta_star >= entry.beta_lo && s.beta_star <= entry.beta_hi);
    }
    census.push_back(entry);
  }
  return census;
}

std::vector<DosSample> dos_estimate(double gamma, int grid_points, const ScanOptions& options) {
  if (grid_points < 3) {
    throw Error(ErrorKind::InvalidParameter, "dos_estimate needs at least 3 grid points");
  }
  const Word cell = Word::from_letters("S");
  const auto germs = band_germs(cell, gamma, 1.0, options);
  if (germs.empty()) {
    throw Error(ErrorKind::OutOfBand, "no single-cell band germ in the scanned range");
  }
  const BandGerm& germ = germs.front();
  const auto betas = make_grid(germ.beta_lo, germ.beta_hi, static_cast<std::size_t>(grid_points));
  const auto x_of = half_trace_function(cell, gamma, 1.0, Regime::Bound);

  std::vector<DosSample> samples(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    samples[i].beta = betas[i];
    samples[i].energy = -betas[i] * betas[i];
    samples[i].kb = std::acos(std::clamp(x_of(betas[i]), -1.0, 1.0));
  }
  const std::size_t last = samples.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i == last ? last : i + 1;
    samples[i].dkb_dbeta = (samples[hi].kb - samples[lo].kb) / (betas[hi] - betas[lo]);
    // dE/dbeta = -2 beta
    samples[i].density = std::abs(samples[i].dkb_dbeta) / (2.0 * betas[i]);
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < last; ++i) {
    integral += 0.5 * (samples[i].density + samples[i + 1].density) *
                std::abs(samples[i + 1].energy - samples[i].energy);
  }
  for (auto& s : samples) s.density /= integral;
  return samples;
}

}  // namespace deltachain
