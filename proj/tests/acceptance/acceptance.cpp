// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned here.
//
// Exit status is 0 when the set of failing criteria equals the set given
// with --expect-fail (empty by default), so a known, documented failure is
// still printed as FAIL but does not hide a new regression.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deltachain/scattering.hpp"
#include "deltachain/states.hpp"
#include "support/scattering_oracle.hpp"

using namespace deltachain;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = std::numbers::phi;

// Pinned tolerances.
constexpr double kSingleWellTol = 1e-9;
constexpr double kPowerTol = 1e-9;
constexpr double kCrossPathTol = 1e-9;
constexpr double kCommutatorTol = 1e-10;
constexpr double kGluingTol = 1e-8;
constexpr double kUnitarityTol = 1e-10;
constexpr double kOracleTol = 1e-10;
constexpr double kOracleMinD = 1e-6;
constexpr double kBandEdgeTol = 5e-2;
constexpr double kPeakOffsetTol = 0.02;
constexpr double kCommutingTol = 1e-9;
constexpr double kPeriodicTol = 1e-8;
constexpr double kWronskianTol = 1e-9;
constexpr double kBracketTol = 1e-9;
constexpr double kJumpTol = 1e-8;
constexpr int kCountSteps = 300000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

bool inside_some_germ(double beta, const std::vector<BandGerm>& germs) {
  return std::any_of(germs.begin(), germs.end(),
                     [beta](const BandGerm& g) { return beta >= g.beta_lo && beta <= g.beta_hi; });
}

Outcome single_well() {
  double worst = 0.0;
  bool counts = true;
  for (double gamma : {1.0, 2.0, 4.0, 8.0}) {
    const auto roots = bound_states(Word::from_letters("S"), gamma, kTau);
    if (roots.size() != 1) {
      counts = false;
      continue;
    }
    worst = std::max(worst, std::abs(roots[0].beta_star - gamma / 2));
  }
  return {counts && worst <= kSingleWellTol, "one root each, max |beta* - gamma/2| = " + fmt("%.3g", worst)};
}

Outcome power_identity() {
  double worst = 0.0;
  for (Regime r : {Regime::Bound, Regime::Scattering}) {
    for (double beta : linspace(0.1, 5.0, 20)) {
      for (double gamma : linspace(-8.0, 8.0, 20)) {
        const ChainParams p{beta, gamma, kTau, r};
        const TransferMatrix m = cell_matrix(p, CellKind::S);
        TransferMatrix product = TransferMatrix::identity();
        for (int n = 1; n <= 50; ++n) {
          product = compose(product, m);
          worst = std::max(worst, relative_distance(power_closed(m, n), product));
        }
      }
    }
  }
  return {worst <= kPowerTol, "max relative error " + fmt("%.3g", worst) + " over n <= 50, 2 x 400 points"};
}

Outcome cross_path() {
  double worst = 0.0;
  for (Regime r : {Regime::Bound, Regime::Scattering}) {
    // W_12 has length ratio about 232; beta <= 1.2 keeps the Bound entries finite.
    for (double beta : linspace(0.1, 1.2, 20)) {
      for (double gamma : linspace(0.5, 8.0, 20)) {
        const ChainParams p{beta, gamma, kTau, r};
        const auto rows = trace_map_sequence(p, 12);
        for (int m = 1; m <= 12; ++m) {
          worst = std::max(worst, relative_distance(rows[m - 1].matrix(), word_matrix(fibonacci_word(m), p)));
        }
      }
    }
  }
  return {worst <= kCrossPathTol, "max relative error " + fmt("%.3g", worst) + " for m <= 12"};
}

Outcome commutator_formula() {
  double worst = 0.0;
  bool above_one = true;
  for (Regime r : {Regime::Bound, Regime::Scattering}) {
    for (double beta : linspace(0.1, 4.0, 20)) {
      for (double gamma : linspace(-8.0, 8.0, 20)) {
        const ChainParams p{beta, gamma, kTau, r};
        const double k =
            commutator(cell_matrix(p, CellKind::S), cell_matrix(p, CellKind::L)).half_trace().real();
        const double arg = (kTau - 1.0) * beta;
        const double s = r == Regime::Bound ? std::sinh(arg) : std::sin(arg);
        const double expected = 1.0 + 0.5 * p.delta() * p.delta() * s * s;
        worst = std::max(worst, std::abs(k - expected) / std::max(1.0, std::abs(expected)));
        if (r == Regime::Bound && gamma != 0.0 && !(k > 1.0)) above_one = false;
      }
    }
  }
  return {worst <= kCommutatorTol && above_one,
          "max deviation " + fmt("%.3g", worst) + (above_one ? ", Bound value > 1" : ", Bound value <= 1 seen")};
}

Outcome germ_bound_counts() {
  Outcome o;
  std::ostringstream detail;
  for (int m = 3; m <= 6; ++m) {
    const Word w = fibonacci_word(m);
    const ScanOptions options{0.05, 6.0, kCountSteps};
    const auto germs = band_germs(w, 10.0, kTau, options);
    const auto roots = bound_states(w, 10.0, kTau, options);
    const auto fm = static_cast<std::size_t>(fibonacci_number(m));
    const auto inside = static_cast<std::size_t>(std::count_if(
        roots.begin(), roots.end(), [&](const BoundState& r) { return inside_some_germ(r.beta_star, germs); }));
    if (germs.size() != fm || roots.size() != fm || inside != roots.size()) o.pass = false;
    detail << (m > 3 ? "; " : "") << "m=" << m << ": " << germs.size() << " germs, " << roots.size()
           << " roots, " << inside << " inside (f_m=" << fm << ")";
  }
  o.detail = detail.str();
  return o;
}

Outcome gluing() {
  double worst = 0.0;
  bool ok = true;
  const auto single = band_germs(Word::from_letters("S"), 4.0, 1.0);
  if (single.size() != 1) return {false, "single cell has " + std::to_string(single.size()) + " germs"};
  for (int n : {2, 3}) {
    const auto germs = band_germs(Word::repeat(CellKind::S, n), 4.0, 1.0);
    if (germs.empty()) {
      ok = false;
      continue;
    }
    worst = std::max(worst, std::abs(germs.front().beta_lo - single[0].beta_lo));
    worst = std::max(worst, std::abs(germs.back().beta_hi - single[0].beta_hi));
    for (std::size_t i = 1; i < germs.size(); ++i) {
      worst = std::max(worst, std::abs(germs[i].beta_lo - germs[i - 1].beta_hi));
    }
  }
  return {ok && worst <= kGluingTol, "max edge mismatch " + fmt("%.3g", worst) + " for n = 2, 3"};
}

Outcome census() {
  bool ok = true;
  for (int n : {2, 3, 5, 10}) {
    for (const auto& c : partial_band_census(n, 4.0)) ok = ok && c.bound_count == 1;
  }
  const std::size_t meets = binding_intersections(10, 4.0).size();
  return {ok && meets == 10, std::string(ok ? "all partial bands hold one state" : "census not all ones") +
                                 ", " + std::to_string(meets) + " binding intersections at n = 10"};
}

Outcome unitarity_and_oracle() {
  std::vector<Word> words;
  for (int m = 1; m <= 10; ++m) words.push_back(fibonacci_word(m));
  for (int n = 1; n <= 50; ++n) words.push_back(Word::repeat(CellKind::S, n));
  double unitarity = 0.0, oracle = 0.0;
  std::size_t compared = 0;
  for (double beta : linspace(0.1, 6.0, 20)) {
    for (double gamma : linspace(-8.0, 8.0, 20)) {
      const ChainParams p = ChainParams::scattering(beta, gamma);
      for (const Word& w : words) {
        const TransferMatrix m = word_matrix(w, p);
        if (std::abs(m.d) < 1e-12) continue;
        const SMatrix s = s_matrix_from_transfer(m, beta, w.length_ratio(kTau));
        const complex e11 = std::norm(s.s_pp) + std::norm(s.s_pm) - 1.0;
        const complex e22 = std::norm(s.s_mp) + std::norm(s.s_mm) - 1.0;
        const complex e12 = s.s_pp * std::conj(s.s_mp) + s.s_pm * std::conj(s.s_mm);
        unitarity = std::max({unitarity, std::abs(e11), std::abs(e22), std::abs(e12)});
        if (std::abs(m.d) <= kOracleMinD) continue;
        if (w.size() > 21) continue;  // oracle on W_1..W_8 and S^1..S^21 keeps the solve cheap
        const SMatrix ref = testing::linear_solve_oracle(w, beta, gamma, kTau);
        oracle = std::max({oracle, std::abs(s.s_pp - ref.s_pp), std::abs(s.s_pm - ref.s_pm),
                           std::abs(s.s_mp - ref.s_mp), std::abs(s.s_mm - ref.s_mm)});
        ++compared;
      }
    }
  }
  return {unitarity <= kUnitarityTol && oracle <= kOracleTol,
          "max unitarity defect " + fmt("%.3g", unitarity) + ", max oracle deviation " + fmt("%.3g", oracle) +
              " over " + std::to_string(compared) + " solves"};
}

Outcome band_edge_scattering() {
  const int n = 10;
  const double gamma = 1.0;
  bool peaks_ok = true;
  double worst_offset = 0.0;
  for (int mu : {29, 30, 31}) {
    const double edge = mu * kPi;
    const auto scan = backscatter_scan(n, gamma, edge - 0.3, edge + 0.3, 6001);
    const BackscatterPeak* best = nullptr;
    for (const auto& p : scan.peaks) {
      if (!best || p.abs_s_mp > best->abs_s_mp) best = &p;
    }
    if (!best || best->mu != mu) {
      peaks_ok = false;
      continue;
    }
    worst_offset = std::max(worst_offset, std::abs(best->beta - edge));
  }
  double worst = 0.0;
  for (int mu : {29, 30, 31}) {
    for (double eps : {0.0, 1e-3}) {
      const double beta = mu * kPi + eps;
      const SMatrix s = s_matrix(Word::repeat(CellKind::S, n), ChainParams::scattering(beta, gamma, 1.0));
      const auto lim = band_edge_limit(n, gamma / beta);
      worst = std::max({worst, std::abs(s.s_pp - lim.s_pp), std::abs(s.s_mp - lim.s_mp)});
    }
  }
  return {peaks_ok && worst_offset <= kPeakOffsetTol && worst <= kBandEdgeTol,
          "largest |s_mp| peak within " + fmt("%.3g", worst_offset) + " of mu pi (mu = 29..31), max closed-form deviation " +
              fmt("%.3g", worst)};
}

Outcome commuting() {
  double comm = 0.0, prop = 0.0, periodic = 0.0;
  for (double gamma : {0.5, 1.0, 2.0, 4.0}) {
    for (const auto& r : commuting_points(2, gamma)) {
      comm = std::max(comm, r.commutator_deviation);
      prop = std::max(prop, r.proportional_deviation);
    }
    for (int p : {1, 2}) {
      for (int m = 2; m <= 10; ++m) periodic = std::max(periodic, fibonacci_periodic_equivalence(m, p, gamma));
    }
  }
  return {comm <= kCommutingTol && prop <= kCommutingTol && periodic <= kPeriodicTol,
          "commutator " + fmt("%.3g", comm) + ", proportionality " + fmt("%.3g", prop) + ", periodic equivalence " +
              fmt("%.3g", periodic)};
}

Outcome wavefunctions() {
  // Wronskian of the bound/companion pair at gamma = 4.
  const auto grid = linspace(0.0, 1.0, 129);
  const auto pair = bound_companion_pair(4.0, kTau, CellKind::S, grid);
  double wronskian = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const complex w =
        pair.psi1.values[i] * pair.psi2.derivatives[i] - pair.psi1.derivatives[i] * pair.psi2.values[i];
    wronskian = std::max(wronskian, std::abs(w - 1.0));
  }

  // Bracket constancy: Bloch states on a cell, and two solutions along W_8.
  double bracket = 0.0;
  for (CellKind kind : {CellKind::S, CellKind::L}) {
    // Bloch states exist inside the cell's own germ; take its midpoint.
    const auto germs = band_germs(Word{std::vector<CellKind>{kind}}, 3.0, kTau);
    if (germs.empty()) return {false, "no germ for the Bloch states"};
    const ChainParams p = ChainParams::bound(0.5 * (germs[0].beta_lo + germs[0].beta_hi), 3.0);
    const auto xs = linspace(0.0, length_ratio(kind, kTau), 129);
    const auto phi1 = bloch_wavefunction(p, kind, 1, xs);
    const auto phi2 = bloch_wavefunction(p, kind, 2, xs);
    for (auto [f, g] : {std::pair{&phi1, &phi1}, std::pair{&phi2, &phi2}, std::pair{&phi1, &phi2}}) {
      const complex first = scalar_product(f->point(0), g->point(0));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        bracket = std::max(bracket, std::abs(scalar_product(f->point(i), g->point(i)) - first));
      }
    }
  }
  const Word w8 = fibonacci_word(8);
  const ChainParams scattering = ChainParams::scattering(1.3, 2.0);
  const auto u = sample_wavefunction(w8, scattering, {1.0, 0.0}, 16);
  const auto v = sample_wavefunction(w8, scattering, {0.0, 1.0}, 16);
  const complex first = scalar_product(u.point(0), v.point(0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    bracket = std::max(bracket, std::abs(scalar_product(u.point(i), v.point(i)) - first));
  }

  // Derivative jump -gamma psi at every delta of W_8, both regimes.
  double jump = 0.0;
  for (const ChainParams& p : {ChainParams::bound(0.4, 2.0), ChainParams::scattering(kTau * kPi, 2.0)}) {
    const auto w = sample_wavefunction(w8, p, {1.0, 0.3}, 16);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w.cell_index[i] == w.cell_index[i + 1]) continue;
      const complex expected = -p.gamma * w.values[i];
      const complex actual = w.derivatives[i + 1] - w.derivatives[i];
      jump = std::max(jump, std::abs(actual - expected) / std::max(std::abs(expected), 1e-300));
    }
  }
  return {wronskian <= kWronskianTol && bracket <= kBracketTol && jump <= kJumpTol,
          "Wronskian " + fmt("%.3g", wronskian) + ", bracket spread " + fmt("%.3g", bracket) +
              ", relative jump error " + fmt("%.3g", jump)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const std::string cli = DELTACHAIN_CLI_PATH;
  const std::vector<std::string> configs = {
      "bands --word fib:m=4 --q 1.6180339887 --gamma 10 --beta-min 0.05 --beta-max 6 --steps 4000",
      "bound --word SL --gamma 6 --format json",
      "scatter --word fib:m=7 --gamma 2 --beta-min 0.1 --beta-max 8 --steps 500",
      "wave --word fib:m=6 --beta 1.5 --regime scattering --grid-per-cell 12",
      "atlas --gamma-min -6 --gamma-max 6 --gamma-steps 7 --steps 600 --format json",
  };
  std::size_t identical = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const std::string path = "acceptance_determinism_" + std::to_string(i) + "_" + std::to_string(run);
      if (std::system((cli + " " + configs[i] + " --out " + path).c_str()) != 0) return {false, "CLI run failed: " + configs[i]};
      outputs[run] = read_file(path);
      std::remove(path.c_str());
    }
    if (!outputs[0].empty() && outputs[0] == outputs[1]) ++identical;
  }
  return {identical == configs.size(),
          std::to_string(identical) + " of " + std::to_string(configs.size()) + " configs byte-identical"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "criteria whose failure is known and documented");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "single-well bound state", single_well},
      {2, "power identity", power_identity},
      {3, "cross-path Fibonacci matrices", cross_path},
      {4, "commutator formula", commutator_formula},
      {5, "germ and bound counts with encapsulation", germ_bound_counts},
      {6, "gap-free gluing at q = 1", gluing},
      {7, "partial band census and binding intersections", census},
      {8, "S-matrix unitarity and linear-solve oracle", unitarity_and_oracle},
      {9, "band-edge scattering limits", band_edge_scattering},
      {10, "commuting points and periodic equivalence", commuting},
      {11, "wavefunction invariants", wavefunctions},
      {12, "CLI determinism", determinism},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const Error& e) {
      o = {false, std::string(e.token()) + ": " + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(c.id);
    std::printf("%s %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), seconds);
  }

  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::printf("%zu of %zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  for (int id : expected) {
    if (!failed.count(id)) std::printf("criterion %d was expected to fail but passed\n", id);
  }
  for (int id : failed) {
    if (!expected.count(id)) std::printf("criterion %d failed unexpectedly\n", id);
  }
  return failed == expected ? 0 : 1;
}
