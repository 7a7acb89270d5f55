#pragma once

// Command-line front end: configuration, word specs and the command runner
// that serializes scans as CSV or JSON.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "deltachain/substitution.hpp"

namespace deltachain::cli {

enum class Command { Bands, Bound, Atlas, Scatter, Wave, Dos, Binding, FibInfo, Commute };
enum class OutputFormat { Csv, Json };

std::string_view command_name(Command command);
std::optional<Command> parse_command(std::string_view name);

struct RunConfig {
  Command command = Command::Bands;
  std::string word_spec = "S";
  double gamma = 4.0;
  double q = kGoldenRatio;
  double beta_min = 0.05;
  double beta_max = 6.0;
  int steps = 2000;
  Regime regime = Regime::Bound;
  std::string out_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  double beta = 1.0;         // wave
  int grid_per_cell = 64;    // wave
  // wave initial data; default exp(beta x) (Bound) or exp(i beta x) (Scattering)
  std::optional<double> psi0, dpsi0;
  int n = 10;                // binding
  int points = 200;          // dos
  int p_max = 2;             // commute, atlas markers
  double gamma_min = -10.0;  // atlas
  double gamma_max = 10.0;
  int gamma_steps = 41;

  /// Throws InvalidParameter unless beta_min < beta_max and steps >= 100.
  void validate() const;
};

/// "fib:m=<int>" gives W_m, "S^<n>" or "L^<n>" n repeats, anything else is
/// read as a literal S/L string. Throws ParseError with the offending
/// position.
Word parse_word_spec(std::string_view text);

/// Runs one command. Output goes to config.out_path when set, else to out.
/// Errors print the error token on one line and a human message on the
/// next to err; the return value is 0 on success and 2 on error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments into a config and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace deltachain::cli
