#include "deltachain/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

#include "deltachain/scattering.hpp"
#include "deltachain/spectra.hpp"
#include "deltachain/states.hpp"

namespace deltachain::cli {

namespace {

using Value = std::variant<std::string, double, long long, bool>;
using Row = std::vector<Value>;

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
};

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::Bands, "bands"},     {Command::Bound, "bound"},     {Command::Atlas, "atlas"},
    {Command::Scatter, "scatter"}, {Command::Wave, "wave"},       {Command::Dos, "dos"},
    {Command::Binding, "binding"}, {Command::FibInfo, "fib-info"}, {Command::Commute, "commute"},
};

std::string_view command_help(Command command) {
  switch (command) {
    case Command::Bands: return "band germ edges of a word over a beta scan";
    case Command::Bound: return "bound states (roots of d) of a finite word";
    case Command::Atlas: return "band edges of both cells over a gamma grid, with commuting-line markers";
    case Command::Scatter: return "S-matrix elements over a positive-energy beta scan";
    case Command::Wave: return "wavefunction samples along a word";
    case Command::Dos: return "density of states of the single-cell periodic chain (q = 1)";
    case Command::Binding: return "both sides of the binding equation for S^n";
    case Command::FibInfo: return "letters, counts and length of a word";
    case Command::Commute: return "commuting energies beta = tau p pi of the two cells";
  }
  return "";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string quoted = "\"";
    for (char ch : *s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + '"';
  }
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  return std::get<bool>(v) ? "true" : "false";
}

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& line : table.comments) os << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const Row& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

void write_json(const Table& table, Command command, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["command"] = command_name(command);
  doc["parameters"] = table.parameters;
  doc["notes"] = table.comments;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const Row& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

ScanOptions scan_options(const RunConfig& c) { return {c.beta_min, c.beta_max, c.steps}; }

std::string_view regime_name(Regime r) { return r == Regime::Bound ? "bound" : "scattering"; }

void common_parameters(const RunConfig& c, Table& t) {
  t.parameters["gamma"] = c.gamma;
  t.parameters["q"] = c.q;
  t.parameters["beta_min"] = c.beta_min;
  t.parameters["beta_max"] = c.beta_max;
  t.parameters["steps"] = c.steps;
}

Table run_bands(const RunConfig& c) {
  const Word word = parse_word_spec(c.word_spec);
  Table t;
  common_parameters(c, t);
  t.parameters["word"] = word.str();
  t.parameters["regime"] = regime_name(c.regime);
  t.columns = {"word", "gamma", "q", "germ_index", "beta_lo", "beta_hi", "edge_kind_lo", "edge_kind_hi"};
  const auto germs = band_germs(word, c.gamma, c.q, scan_options(c), c.regime);
  for (std::size_t i = 0; i < germs.size(); ++i) {
    const auto& g = germs[i];
    t.rows.push_back({word.str(), c.gamma, c.q, static_cast<long long>(i), g.beta_lo, g.beta_hi,
                      std::string(edge_kind_name(g.edge_kind_lo)),
                      std::string(edge_kind_name(g.edge_kind_hi))});
  }
  return t;
}

Table run_bound(const RunConfig& c) {
  const Word word = parse_word_spec(c.word_spec);
  Table t;
  common_parameters(c, t);
  t.parameters["word"] = word.str();
  t.columns = {"word", "gamma", "q", "index", "beta_star", "energy"};
  for (const BoundState& s : bound_states(word, c.gamma, c.q, scan_options(c))) {
    t.rows.push_back({word.str(), c.gamma, c.q, static_cast<long long>(s.index), s.beta_star,
                      -s.beta_star * s.beta_star});
  }
  return t;
}

Table run_atlas(const RunConfig& c) {
  if (c.gamma_steps < 2 || !(c.gamma_max > c.gamma_min)) {
    throw Error(ErrorKind::InvalidParameter, "atlas needs gamma_min < gamma_max and gamma_steps >= 2");
  }
  Table t;
  common_parameters(c, t);
  t.parameters.erase("gamma");
  t.parameters["gamma_min"] = c.gamma_min;
  t.parameters["gamma_max"] = c.gamma_max;
  t.parameters["gamma_steps"] = c.gamma_steps;
  t.parameters["p_max"] = c.p_max;
  t.comments = {"beta > 0: negative energy (Bound regime); beta < 0: positive energy "
                "(Scattering regime), stored as -beta for display"};
  t.columns = {"gamma", "cell", "edge_kind", "beta"};
  const ScanOptions options = scan_options(c);
  for (int j = 0; j < c.gamma_steps; ++j) {
    const double gamma = c.gamma_min + (c.gamma_max - c.gamma_min) * j / (c.gamma_steps - 1);
    for (CellKind kind : {CellKind::S, CellKind::L}) {
      const Word word{std::vector<CellKind>{kind}};
      const std::string cell = word.str();
      for (Regime regime : {Regime::Bound, Regime::Scattering}) {
        const double sign = regime == Regime::Bound ? 1.0 : -1.0;
        for (const BandGerm& g : band_germs(word, gamma, c.q, options, regime)) {
          t.rows.push_back({gamma, cell, std::string(edge_kind_name(g.edge_kind_lo)), sign * g.beta_lo});
          t.rows.push_back({gamma, cell, std::string(edge_kind_name(g.edge_kind_hi)), sign * g.beta_hi});
        }
      }
    }
    for (int p = 1; p <= c.p_max; ++p) {
      const double beta = kGoldenRatio * p * std::numbers::pi;
      if (beta > c.beta_max) break;
      t.rows.push_back({gamma, std::string("SL"), std::string("commuting_line"), -beta});
    }
  }
  return t;
}

Table run_scatter(const RunConfig& c) {
  const Word word = parse_word_spec(c.word_spec);
  Table t;
  common_parameters(c, t);
  t.parameters["word"] = word.str();
  t.columns = {"beta",      "re_s_pp",  "im_s_pp",  "re_s_pm",  "im_s_pm",  "re_s_mp",
               "im_s_mp",   "re_s_mm",  "im_s_mm",  "abs_s_pp", "abs_s_mp"};
  for (int i = 0; i < c.steps; ++i) {
    const double beta = c.beta_min + (c.beta_max - c.beta_min) * i / (c.steps - 1);
    const SMatrix s = s_matrix(word, ChainParams::scattering(beta, c.gamma, c.q));
    t.rows.push_back({beta, s.s_pp.real(), s.s_pp.imag(), s.s_pm.real(), s.s_pm.imag(),
                      s.s_mp.real(), s.s_mp.imag(), s.s_mm.real(), s.s_mm.imag(),
                      std::abs(s.s_pp), std::abs(s.s_mp)});
  }
  return t;
}

Table run_wave(const RunConfig& c) {
  const Word word = parse_word_spec(c.word_spec);
  const ChainParams params{c.beta, c.gamma, c.q, c.regime};
  params.validate();
  // Default initial data: exp(beta x) (Bound) or the incoming wave exp(i beta x).
  const complex slope = c.regime == Regime::Bound ? complex(c.beta) : complex(0.0, c.beta);
  const WavePoint initial{c.psi0.value_or(1.0),
                          c.dpsi0 ? complex(*c.dpsi0) : slope * c.psi0.value_or(1.0)};
  Table t;
  t.parameters["word"] = word.str();
  t.parameters["gamma"] = c.gamma;
  t.parameters["q"] = c.q;
  t.parameters["beta"] = c.beta;
  t.parameters["regime"] = regime_name(c.regime);
  t.parameters["grid_per_cell"] = c.grid_per_cell;
  t.columns = {"position", "cell", "re_psi", "im_psi", "re_dpsi", "im_dpsi", "abs_psi"};
  const WaveSamples w = sample_wavefunction(word, params, initial, c.grid_per_cell);
  for (std::size_t i = 0; i < w.size(); ++i) {
    t.rows.push_back({w.positions[i], static_cast<long long>(w.cell_index[i]), w.values[i].real(),
                      w.values[i].imag(), w.derivatives[i].real(), w.derivatives[i].imag(),
                      std::abs(w.values[i])});
  }
  return t;
}

Table run_dos(const RunConfig& c) {
  Table t;
  common_parameters(c, t);
  t.parameters.erase("q");
  t.parameters["points"] = c.points;
  t.columns = {"beta", "energy", "kb", "dkb_dbeta", "density"};
  for (const DosSample& s : dos_estimate(c.gamma, c.points, scan_options(c))) {
    t.rows.push_back({s.beta, s.energy, s.kb, s.dkb_dbeta, s.density});
  }
  return t;
}

Table run_binding(const RunConfig& c) {
  Table t;
  common_parameters(c, t);
  t.parameters.erase("q");
  t.parameters["n"] = c.n;
  t.columns = {"kind", "beta", "kb", "lhs", "rhs"};
  const Word cell = Word::from_letters("S");
  const ScanOptions options = scan_options(c);
  for (const BandGerm& g : band_germs(cell, c.gamma, 1.0, options)) {
    for (int i = 1; i + 1 < c.points; ++i) {
      const double beta = g.beta_lo + (g.beta_hi - g.beta_lo) * i / (c.points - 1);
      const auto r = binding_equation_residual(c.n, beta, c.gamma);
      const double kb = bloch_label(half_trace_at(cell, ChainParams::bound(beta, c.gamma, 1.0)));
      t.rows.push_back({std::string("curve"), beta, kb, r.lhs, r.rhs});
    }
  }
  for (double beta : binding_intersections(c.n, c.gamma, options)) {
    const auto r = binding_equation_residual(c.n, beta, c.gamma);
    const double kb = bloch_label(half_trace_at(cell, ChainParams::bound(beta, c.gamma, 1.0)));
    t.rows.push_back({std::string("intersection"), beta, kb, r.lhs, r.rhs});
  }
  return t;
}

Table run_fib_info(const RunConfig& c) {
  const Word word = parse_word_spec(c.word_spec);
  Table t;
  t.parameters["word_spec"] = c.word_spec;
  t.parameters["q"] = c.q;
  t.columns = {"word", "order", "length", "count_s", "count_l", "length_ratio"};
  t.rows.push_back({word.str(), static_cast<long long>(word.order().value_or(0)),
                    static_cast<long long>(word.size()),
                    static_cast<long long>(word.count(CellKind::S)),
                    static_cast<long long>(word.count(CellKind::L)), word.length_ratio(c.q)});
  return t;
}

Table run_commute(const RunConfig& c) {
  Table t;
  t.parameters["gamma"] = c.gamma;
  t.parameters["p_max"] = c.p_max;
  t.columns = {"p", "beta", "commutator_deviation", "proportional_deviation", "proportional",
               "in_overlap", "x1", "x2"};
  for (const CommutingReport& r : commuting_points(c.p_max, c.gamma)) {
    t.rows.push_back({static_cast<long long>(r.p), r.beta, r.commutator_deviation,
                      r.proportional_deviation, r.proportional, r.in_overlap, r.x1, r.x2});
  }
  return t;
}

Table dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::Bands: return run_bands(c);
    case Command::Bound: return run_bound(c);
    case Command::Atlas: return run_atlas(c);
    case Command::Scatter: return run_scatter(c);
    case Command::Wave: return run_wave(c);
    case Command::Dos: return run_dos(c);
    case Command::Binding: return run_binding(c);
    case Command::FibInfo: return run_fib_info(c);
    case Command::Commute: return run_commute(c);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown command");
}

void report(std::ostream& err, std::string_view token, const std::string& message) {
  err << token << '\n' << "deltachain: " << message << '\n';
}

int parse_positive_int(std::string_view text, std::size_t offset) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || value < 1) {
    const std::size_t pos = offset + static_cast<std::size_t>(ptr - text.data());
    throw Error(ErrorKind::ParseError, "expected a positive integer at position " + std::to_string(pos));
  }
  return value;
}

}  // namespace

std::string_view command_name(Command command) {
  for (const auto& [c, name] : kCommandNames) {
    if (c == command) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommandNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (!(beta_min > 0.0) || !(beta_max > beta_min)) {
    throw Error(ErrorKind::InvalidParameter, "need 0 < beta_min < beta_max");
  }
  if (steps < 100) {
    throw Error(ErrorKind::InvalidParameter, "steps must be >= 100");
  }
  if (points < 3) {
    throw Error(ErrorKind::InvalidParameter, "points must be >= 3");
  }
}

Word parse_word_spec(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::ParseError, "empty word spec");
  }
  constexpr std::string_view kFib = "fib:m=";
  if (text.substr(0, kFib.size()) == kFib) {
    return fibonacci_word(parse_positive_int(text.substr(kFib.size()), kFib.size()));
  }
  if (text.size() > 2 && text[1] == '^') {
    const Word letter = Word::from_letters(text.substr(0, 1));
    return Word::repeat(letter.letters().front(), parse_positive_int(text.substr(2), 2));
  }
  return Word::from_letters(text);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const Table table = dispatch(config);
    std::ostringstream buffer;
    if (config.format == OutputFormat::Json) {
      write_json(table, config.command, buffer);
    } else {
      write_csv(table, buffer);
    }
    if (config.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.out_path, std::ios::binary);
      file << buffer.str();
      if (!file) {
        report(err, "IoError", "cannot write " + config.out_path);
        return 2;
      }
    }
    return 0;
  } catch (const Error& e) {
    report(err, e.token(), e.what());
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer-matrix spectra and scattering of delta-potential chains"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string regime = "bound";
  std::string format = "csv";
  double psi0 = 1.0, dpsi0 = 0.0;
  CLI::Option* psi0_option = nullptr;
  CLI::Option* dpsi0_option = nullptr;

  for (const auto& [command, name] : kCommandNames) {
    CLI::App* sub = app.add_subcommand(std::string(name), std::string(command_help(command)));
    sub->callback([&config, command = command] { config.command = command; });
    sub->add_option("--word", config.word_spec, "fib:m=<m>, S^<n>, L^<n> or a literal S/L string");
    sub->add_option("--gamma", config.gamma, "dimensionless strength u b (> 0 attractive)");
    sub->add_option("--q", config.q, "length ratio of cell L to cell S");
    sub->add_option("--beta-min", config.beta_min);
    sub->add_option("--beta-max", config.beta_max);
    sub->add_option("--steps", config.steps, "grid points of the beta scan");
    sub->add_option("--regime", regime)->check(CLI::IsMember({"bound", "scattering"}));
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out_path, "output file (default: standard output)");
    switch (command) {
      case Command::Wave:
        sub->add_option("--beta", config.beta);
        sub->add_option("--grid-per-cell", config.grid_per_cell);
        psi0_option = sub->add_option("--psi0", psi0, "initial value at the left end");
        dpsi0_option = sub->add_option("--dpsi0", dpsi0, "initial derivative at the left end");
        break;
      case Command::Binding:
        sub->add_option("--n", config.n, "number of cells in S^n");
        sub->add_option("--points", config.points, "curve samples per germ");
        break;
      case Command::Dos:
        sub->add_option("--points", config.points, "samples across the germ");
        break;
      case Command::Commute:
        sub->add_option("--p-max", config.p_max);
        break;
      case Command::Atlas:
        sub->add_option("--gamma-min", config.gamma_min);
        sub->add_option("--gamma-max", config.gamma_max);
        sub->add_option("--gamma-steps", config.gamma_steps);
        sub->add_option("--p-max", config.p_max);
        break;
      default:
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, error_token(ErrorKind::ParseError), e.what());
    return 2;
  }

  config.regime = regime == "scattering" ? Regime::Scattering : Regime::Bound;
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (psi0_option && psi0_option->count()) config.psi0 = psi0;
  if (dpsi0_option && dpsi0_option->count()) config.dpsi0 = dpsi0;
  return run(config, out, err);
}

}  // namespace deltachain::cli
