#include "dunbar/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "dunbar/dunbar_analysis.hpp"
#include "dunbar/errors.hpp"
#include "dunbar/monte_carlo.hpp"
#include "dunbar/output.hpp"

namespace dunbar::cli {

namespace {

using output::format_number;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string env_name(const std::string& flag) {
  std::string out = "DUNBAR_";
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const CLI::Validator kOpenUnit(
    [](std::string& v) -> std::string {
      double x = 0.0;
      if (!CLI::detail::lexical_cast(v, x) || !(x > 0.0 && x < 1.0)) {
        return "value " + v + " must lie strictly between 0 and 1";
      }
      return {};
    },
    "(0,1)");

const CLI::Validator kExponent(
    [](std::string& v) -> std::string {
      double x = 0.0;
      if (!CLI::detail::lexical_cast(v, x) || !std::isfinite(x) || x <= 1.0) {
        return "exponent " + v + " must be a finite number above 1";
      }
      return {};
    },
    "ALPHA>1");

// Builds the option set of every subcommand on top of one RunConfig.
class Parser {
 public:
  Parser() : app_("Trust-gated information diffusion across Dunbar layers", "dunbar_sim") {
    app_.require_subcommand(1);
    app_.add_option("--config", config_path_, "key = value file; flags and environment win")
        ->envname("DUNBAR_CONFIG")
        ->check(CLI::ExistingFile);

    auto* traj = add_sub(Command::Trajectory, "trajectory",
                         "RK4 trajectory of the mean-field dynamics (t,i,s,r,informed)");
    add_population(traj);
    add_distribution(traj);
    add_dynamics(traj);
    add(traj, "dt", cfg_.dt, "RK4 step")->check(CLI::PositiveNumber);
    add(traj, "t-end", cfg_.t_end, "integration horizon")->check(CLI::PositiveNumber);
    add_output(traj);
    required_[traj].push_back("tc");

    auto* sweep = add_sub(Command::Sweep, "sweep",
                          "asymptotic informed count for every cutoff on a grid (tc,informed)");
    add_population(sweep);
    add_distribution(sweep);
    add(sweep, "step", cfg_.step, "cutoff increment")->check(kOpenUnit);
    add_output(sweep);

    auto* layers = add_sub(Command::Layers, "layers",
                           "trust cutoff reaching each Dunbar layer (layer,cutoff,feasible)");
    add_population(layers);
    add_distribution(layers);
    add(layers, "layers", cfg_.layers, "comma-separated layer sizes")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    add_output(layers);

    auto* alpha = add_sub(Command::AlphaCurve, "alpha-curve",
                          "power-law cutoff per exponent (alpha,cutoff,alpha_times_cutoff)");
    add_population(alpha);
    add(alpha, "layer", cfg_.layer, "target layer size")->check(CLI::PositiveNumber);
    add(alpha, "alphas", cfg_.alphas, "comma-separated exponents")
        ->delimiter(',')
        ->check(kExponent);
    add_support(alpha);
    add_output(alpha);
    required_[alpha].push_back("layer");

    auto* pop = add_sub(Command::PopulationCurve, "population-curve",
                        "cutoff for one layer as the population grows (n,cutoff)");
    add(pop, "layer", cfg_.layer, "target layer size")->check(CLI::PositiveNumber);
    add(pop, "populations", cfg_.populations, "comma-separated population sizes")
        ->delimiter(',')
        ->check(CLI::Range(2, std::numeric_limits<int>::max()));
    add_distribution(pop);
    add_output(pop);
    required_[pop].push_back("layer");

    auto* mc = add_sub(Command::MonteCarlo, "montecarlo",
                       "agent-level stochastic ensemble (t,mean_r,std_r)");
    add_population(mc);
    add_distribution(mc);
    add_dynamics(mc);
    add(mc, "t-end", cfg_.t_end, "simulation horizon")->check(CLI::PositiveNumber);
    add(mc, "runs", cfg_.runs, "number of independent runs")
        ->check(CLI::Range(1, std::numeric_limits<int>::max()));
    add(mc, "seed", cfg_.seed, "base seed; run k uses a hash of the seed xor k");
    add(mc, "threads", cfg_.threads, "worker threads, 0 = all cores");
    add_output(mc);
    required_[mc].push_back("tc");
  }

  ParseOutcome parse(const std::vector<std::string>& args) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app_.parse(reversed);
      CLI::App* sub = app_.get_subcommands().front();
      if (!config_path_.empty()) apply_config_file(sub);
      for (const auto& name : required_[sub]) {
        if (sub->get_option("--" + name)->count() == 0) {
          throw UsageError("missing required flag --" + name);
        }
      }
      cfg_.command = commands_.at(sub);
      finish();
    } catch (const CLI::CallForHelp&) {
      return {std::nullopt, exit_code::kOk, help_text()};
    } catch (const CLI::CallForAllHelp&) {
      return {std::nullopt, exit_code::kOk, help_text()};
    } catch (const CLI::ParseError& e) {
      return {std::nullopt, exit_code::kUsage, e.what()};
    } catch (const UsageError& e) {
      return {std::nullopt, exit_code::kUsage, e.what()};
    } catch (const DomainError& e) {
      return {std::nullopt, exit_code::kUsage, e.what()};
    }
    return {cfg_, exit_code::kOk, {}};
  }

 private:
  CLI::App* add_sub(Command c, const std::string& name, const std::string& desc) {
    auto* sub = app_.add_subcommand(name, desc);
    sub->fallthrough();
    commands_[sub] = c;
    return sub;
  }

  template <class T>
  CLI::Option* add(CLI::App* sub, const std::string& flag, T& target, const std::string& desc) {
    return sub->add_option("--" + flag, target, desc)->envname(env_name(flag))->capture_default_str();
  }

  void add_population(CLI::App* sub) {
    add(sub, "n", cfg_.n, "population size N")->check(CLI::Range(2, std::numeric_limits<int>::max()));
  }

  void add_support(CLI::App* sub) {
    add(sub, "lo", lo_, "lower trust bound (uniform 0, power law 0.1)")->check(CLI::Range(0.0, 1.0));
    add(sub, "hi", cfg_.hi, "upper trust bound")->check(CLI::Range(0.0, 1.0));
    add(sub, "driver", cfg_.driver, "power-law driver range: full-unit or truncated")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, DriverRange>{{"full-unit", DriverRange::FullUnit},
                                               {"truncated", DriverRange::Truncated}},
            CLI::ignore_case));
  }

  void add_distribution(CLI::App* sub) {
    add(sub, "dist", cfg_.dist, "trust distribution: uniform or power-law")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, TrustKind>{{"uniform", TrustKind::Uniform},
                                             {"power-law", TrustKind::BoundedPowerLaw}},
            CLI::ignore_case));
    add(sub, "alpha", cfg_.alpha, "power-law exponent")->check(kExponent);
    add_support(sub);
  }

  void add_dynamics(CLI::App* sub) {
    add(sub, "tc", cfg_.tc, "critical trust value")->check(CLI::Range(0.0, 1.0));
    add(sub, "beta", cfg_.beta, "transmission rate per unit time")->check(CLI::Range(0.0, 1.0));
    add(sub, "r0", r0_, "initial transmitter fraction (default 1/N)")->check(kOpenUnit);
  }

  void add_output(CLI::App* sub) {
    add(sub, "output", output_, "output path; with --format both the extension is replaced");
    add(sub, "format", cfg_.format, "csv, svg or both")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"csv", OutputFormat::Csv},
                                                {"svg", OutputFormat::Svg},
                                                {"both", OutputFormat::Both}},
            CLI::ignore_case));
    required_[sub].push_back("output");
  }

  void apply_config_file(CLI::App* sub) {
    std::ifstream in(config_path_);
    if (!in) throw UsageError("cannot read config file " + config_path_);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw UsageError(config_path_ + ":" + std::to_string(lineno) + ": expected key = value");
      }
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      std::replace(key.begin(), key.end(), '_', '-');
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        value = value.substr(1, value.size() - 2);
      }
      CLI::Option* opt = key == "help" ? nullptr : sub->get_option_no_throw("--" + key);
      if (opt == nullptr) {
        throw UsageError(config_path_ + ":" + std::to_string(lineno) + ": unknown key '" + key +
                         "' for " + sub->get_name());
      }
      if (opt->count() > 0) continue;
      const char delim = opt->get_delimiter();
      if (delim != '\0') {
        for (auto& part : CLI::detail::split(value, delim)) opt->add_result(trim(part));
      } else {
        opt->add_result(value);
      }
      opt->run_callback();
    }
  }

  void finish() {
    if (!output_.empty()) cfg_.output = output_;
    if (lo_) cfg_.lo = *lo_;
    if (r0_) cfg_.r0 = *r0_;
    // Builds the distribution purely to reject bad support / exponent combos now.
    if (cfg_.command == Command::AlphaCurve) {
      for (double a : cfg_.alphas) {
        (void)TrustDistribution::power_law(a, cfg_.lo.value_or(0.1), cfg_.hi, cfg_.driver);
      }
      if (!std::is_sorted(cfg_.alphas.begin(), cfg_.alphas.end()) ||
          std::adjacent_find(cfg_.alphas.begin(), cfg_.alphas.end()) != cfg_.alphas.end()) {
        throw UsageError("--alphas: values must be strictly increasing");
      }
    } else {
      (void)make_distribution(cfg_);
    }
    if (cfg_.command == Command::Layers) DunbarLayers{cfg_.layers}.validate();
    if (cfg_.command == Command::PopulationCurve &&
        std::adjacent_find(cfg_.populations.begin(), cfg_.populations.end(),
                           [](int a, int b) { return a >= b; }) != cfg_.populations.end()) {
      throw UsageError("--populations: values must be strictly increasing");
    }
    if (cfg_.command == Command::Trajectory && cfg_.t_end < cfg_.dt) {
      throw UsageError("--t-end: must be at least --dt");
    }
  }

  std::string help_text() const {
    // CLI11 marks the subcommand whose --help fired as parsed.
    for (const auto* sub : app_.get_subcommands()) return sub->help();
    return app_.help();
  }

  CLI::App app_;
  RunConfig cfg_;
  std::string config_path_;
  std::string output_;
  std::optional<double> lo_;
  std::optional<double> r0_;
  std::map<const CLI::App*, Command> commands_;
  std::map<const CLI::App*, std::vector<std::string>> required_;
};

// ---------------------------------------------------------------------------
// Rendering

std::vector<std::pair<std::filesystem::path, std::string>> place(
    const RunConfig& cfg, std::string csv, std::string svg) {
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  switch (cfg.format) {
    case OutputFormat::Csv:
      files.emplace_back(cfg.output, std::move(csv));
      break;
    case OutputFormat::Svg:
      files.emplace_back(cfg.output, std::move(svg));
      break;
    case OutputFormat::Both: {
      auto base = cfg.output;
      files.emplace_back(std::filesystem::path(base).replace_extension(".csv"), std::move(csv));
      files.emplace_back(std::filesystem::path(base).replace_extension(".svg"), std::move(svg));
      break;
    }
  }
  return files;
}

std::vector<double> column(const SweepTable& t, bool axis) {
  std::vector<double> v;
  for (const auto& row : t.rows) {
    v.push_back(axis ? row.axis_value : row.value.value_or(std::nan("")));
  }
  return v;
}

Rendered render_trajectory(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const Trajectory traj = integrate(params, cfg.dt, cfg.t_end);
  output::CsvTable csv({"t", "i", "s", "r", "informed"});
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& st = traj.states[k];
    csv.add_row({format_number(traj.times[k]), format_number(st.i), format_number(st.s),
                 format_number(st.r), format_number(traj.informed[k])});
  }
  output::LineChart chart("Informed population, N=" + std::to_string(cfg.n) + ", Tc=" +
                              format_number(cfg.tc) + ", beta=" + format_number(cfg.beta),
                          "t", "informed (N r)");
  chart.add_series({"RK4", traj.times, traj.informed});
  return {csv.row_count(), place(cfg, csv.str(), chart.render())};
}

Rendered render_sweep(const RunConfig& cfg) {
  const auto dist = make_distribution(cfg);
  const auto table = sweep_cutoffs(dist, cfg.n, cfg.step);
  output::CsvTable csv({"tc", "informed"});
  for (const auto& row : table.rows) {
    csv.add_row({format_number(row.axis_value), format_number(*row.value)});
  }
  output::LineChart chart("Asymptotic informed count, N=" + std::to_string(cfg.n) + ", " +
                              dist.describe(),
                          "trust cutoff Tc", "informed");
  chart.add_series({"N f(Tc)", column(table, true), column(table, false)});
  return {csv.row_count(), place(cfg, csv.str(), chart.render())};
}

Rendered render_layers(const RunConfig& cfg) {
  const auto dist = make_distribution(cfg);
  const auto results = cutoffs_for_layers(dist, cfg.n, DunbarLayers{cfg.layers});
  output::CsvTable csv({"layer", "cutoff", "feasible"});
  output::Series series{"cutoff", {}, {}};
  for (const auto& res : results) {
    csv.add_row({std::to_string(res.layer),
                 res.cutoff ? std::optional(format_number(*res.cutoff)) : std::nullopt,
                 res.feasible() ? "true" : "false"});
    if (res.cutoff) {
      series.x.push_back(res.layer);
      series.y.push_back(*res.cutoff);
    }
  }
  output::LineChart chart("Cutoff per layer, N=" + std::to_string(cfg.n) + ", " + dist.describe(),
                          "layer size", "trust cutoff");
  chart.add_series(std::move(series));
  return {csv.row_count(), place(cfg, csv.str(), chart.render())};
}

Rendered render_alpha_curve(const RunConfig& cfg, std::ostream& warnings) {
  for (double a : cfg.alphas) {
    if (!(a > 2.0 && a < 3.0)) {
      warnings << "warning: alpha " << format_number(a) << " lies outside (2, 3)\n";
    }
  }
  const auto table = alpha_cutoff_curve(cfg.n, cfg.layer, cfg.alphas, cfg.lo.value_or(0.1),
                                        cfg.hi, cfg.driver);
  output::CsvTable csv({"alpha", "cutoff", "alpha_times_cutoff"});
  for (const auto& row : table.rows) {
    csv.add_row({format_number(row.axis_value), format_number(*row.value),
                 format_number(row.axis_value * *row.value)});
  }
  output::LineChart chart("Cutoff vs exponent, N=" + std::to_string(cfg.n) + ", layer " +
                              std::to_string(cfg.layer),
                          "alpha", "trust cutoff");
  chart.add_series({"cutoff", column(table, true), column(table, false)});
  return {csv.row_count(), place(cfg, csv.str(), chart.render())};
}

Rendered render_population_curve(const RunConfig& cfg) {
  const auto dist = make_distribution(cfg);
  const auto table = cutoff_vs_population(dist, cfg.layer, cfg.populations);
  output::CsvTable csv({"n", "cutoff"});
  for (const auto& row : table.rows) {
    csv.add_row({format_number(row.axis_value),
                 row.value ? std::optional(format_number(*row.value)) : std::nullopt});
  }
  output::LineChart chart("Cutoff for layer " + std::to_string(cfg.layer) + ", " + dist.describe(),
                          "population N", "trust cutoff");
  chart.add_series({"cutoff", column(table, true), column(table, false)});
  return {csv.row_count(), place(cfg, csv.str(), chart.render())};
}

Rendered render_montecarlo(const RunConfig& cfg) {
  const ModelParams params = make_params(cfg);
  const auto ens = simulate_ensemble(params, cfg.runs, cfg.t_end, cfg.seed, cfg.threads);
  output::CsvTable csv({"t", "mean_r", "std_r"});
  std::vector<double> mean_field;
  const double i = params.ignorant_fraction();
  for (std::size_t k = 0; k < ens.times.size(); ++k) {
    csv.add_row({format_number(ens.times[k]), format_number(ens.mean_r[k]),
                 format_number(ens.std_r[k])});
    mean_field.push_back(closed_form_r(ens.times[k], i, params.r0, params.beta));
  }
  output::LineChart chart("Ensemble of " + std::to_string(cfg.runs) + " runs, N=" +
                              std::to_string(cfg.n) + ", Tc=" + format_number(cfg.tc),
                          "t", "transmitter fraction r");
  chart.add_series({"ensemble mean", ens.times, ens.mean_r});
  chart.add_series({"mean field", ens.times, mean_field});
  return {csv.row_count(), place(cfg, csv.str(), chart.render())};
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Trajectory: return "trajectory";
    case Command::Sweep: return "sweep";
    case Command::Layers: return "layers";
    case Command::AlphaCurve: return "alpha-curve";
    case Command::PopulationCurve: return "population-curve";
    case Command::MonteCarlo: return "montecarlo";
  }
  return "?";
}

TrustDistribution make_distribution(const RunConfig& cfg) {
  if (cfg.dist == TrustKind::Uniform) return TrustDistribution::uniform(cfg.lo.value_or(0.0), cfg.hi);
  return TrustDistribution::power_law(cfg.alpha, cfg.lo.value_or(0.1), cfg.hi, cfg.driver);
}

ModelParams make_params(const RunConfig& cfg) {
  ModelParams p{cfg.n, cfg.beta, cfg.tc, cfg.r0.value_or(1.0 / cfg.n), make_distribution(cfg)};
  p.validate();
  return p;
}

ParseOutcome parse_config(const std::vector<std::string>& args) { return Parser().parse(args); }

Rendered render(const RunConfig& cfg, std::ostream& warnings) {
  if (cfg.dist == TrustKind::BoundedPowerLaw && cfg.command != Command::AlphaCurve &&
      !(cfg.alpha > 2.0 && cfg.alpha < 3.0)) {
    warnings << "warning: alpha " << format_number(cfg.alpha) << " lies outside (2, 3)\n";
  }
  switch (cfg.command) {
    case Command::Trajectory: return render_trajectory(cfg);
    case Command::Sweep: return render_sweep(cfg);
    case Command::Layers: return render_layers(cfg);
    case Command::AlphaCurve: return render_alpha_curve(cfg, warnings);
    case Command::PopulationCurve: return render_population_curve(cfg);
    case Command::MonteCarlo: return render_montecarlo(cfg);
  }
  throw std::logic_error("unhandled command");
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Rendered rendered;
  try {
    rendered = render(cfg, err);
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInfeasible;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  try {
    output::write_files_atomically(rendered.files);
  } catch (const output::WriteError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kWriteFailed;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::ostringstream line;
  line << command_name(cfg.command) << ": " << rendered.rows << " rows ->";
  for (const auto& f : rendered.files) line << ' ' << f.first.string();
  line << " (" << std::fixed << std::setprecision(3) << elapsed.count() << " s)";
  out << line.str() << '\n';
  return exit_code::kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_config(args);
  if (!parsed.config) {
    (parsed.exit_code == exit_code::kOk ? out : err) << parsed.message << '\n';
    return parsed.exit_code;
  }
  return execute(*parsed.config, out, err);
}

}  // namespace dunbar::cli
