#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dunbar/diffusion.hpp"
#include "dunbar/trust_distribution.hpp"

namespace dunbar::cli {

enum class Command { Trajectory, Sweep, Layers, AlphaCurve, PopulationCurve, MonteCarlo };
enum class OutputFormat { Csv, Svg, Both };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kInfeasible = 3;
inline constexpr int kWriteFailed = 4;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::Trajectory;

  int n = 150;
  double beta = 0.25;
  double tc = 0.0;
  std::optional<double> r0;  // defaults to 1/n
  TrustKind dist = TrustKind::Uniform;
  double alpha = 2.1;
  std::optional<double> lo;  // 0 for uniform, 0.1 for power law
  double hi = 1.0;
  DriverRange driver = DriverRange::FullUnit;

  double dt = 0.01;
  double t_end = 100.0;
  double step = 0.01;
  int layer = 150;
  std::vector<int> layers{5, 15, 50, 150};
  std::vector<double> alphas{2.1, 2.2, 2.3, 2.4, 2.5, 2.6, 2.7, 2.8, 2.9};
  std::vector<int> populations{150, 500, 1500, 5000};

  std::uint64_t seed = 1;
  int runs = 100;
  unsigned threads = 1;

  std::filesystem::path output;
  OutputFormat format = OutputFormat::Csv;
};

const char* command_name(Command c);

TrustDistribution make_distribution(const RunConfig& cfg);
ModelParams make_params(const RunConfig& cfg);

struct ParseOutcome {
  std::optional<RunConfig> config;  // set when parsing succeeded
  int exit_code = exit_code::kOk;   // meaningful when config is empty
  std::string message;              // help text or error
};

/// Parses a command line (without the program name). Precedence is
/// flag > DUNBAR_* environment variable > --config file > default.
ParseOutcome parse_config(const std::vector<std::string>& args);

struct Rendered {
  std::size_t rows = 0;
  std::vector<std::pair<std::filesystem::path, std::string>> files;
};

/// Runs the analysis and renders output files in memory. Throws
/// DomainError / InfeasibleError from the library.
Rendered render(const RunConfig& cfg, std::ostream& warnings);

/// Renders, writes atomically and prints a one-line summary to `out`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config followed by execute.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dunbar::cli
