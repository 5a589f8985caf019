#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "config_file.hpp"
#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "debias/randmat.hpp"
#include "debias/regression.hpp"
#include "debias/report.hpp"
#include "debias/sampling.hpp"
#include "debias/target.hpp"

namespace debias::cli {
namespace {

using nlohmann::json;

constexpr double kResidualFloor = 1e-14;

struct CliConfig {
  std::string kind;
  std::string measure = "uniform";
  int degree = 0;
  std::size_t n = 0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string target;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  std::string config_path;
  std::string fit_path;
};

std::string_view source_name(NodeSource s) { return s == NodeSource::kDpp ? "dpp" : "leverage"; }

// Writes to --out (atomically) or to stdout.
void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
  } else {
    write_file_atomic(cfg.out, text);
  }
}

int cmd_sample(const CliConfig& cfg, std::ostream& out) {
  if (cfg.degree < 0) throw InvalidArgument("--d must be nonnegative");
  if (cfg.format != "csv" && cfg.format != "json") throw InvalidArgument("--format must be csv or json");
  const Measure measure = cfg.kind == "haar" ? Measure::circle() : parse_measure(cfg.measure);
  if (cfg.kind == "haar" && cfg.measure != "uniform" && cfg.measure != "circle") {
    throw InvalidArgument("haar sampling is defined on the circle only");
  }
  const bool as_json = cfg.format == "json";
  std::ostringstream os;
  json doc = json::array();

  if (cfg.kind == "dpp" || cfg.kind == "haar") {
    if (cfg.count == 0) throw InvalidArgument("--count must be at least 1");
    if (!as_json) os << (measure.is_real() ? "draw,node,t,weight\n" : "draw,node,re,im\n");
    for (std::size_t draw = 0; draw < cfg.count; ++draw) {
      Rng rng(trial_stream(cfg.seed, draw));
      const NodeSet nodes = sample_dpp_nodes(measure, cfg.degree, rng);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (measure.is_real()) {
          if (as_json) {
            doc.push_back({{"draw", draw}, {"t", nodes.points[i]}, {"weight", nodes.weights[i]}});
          } else {
            os << draw << ',' << i << ',' << format_double(nodes.points[i]) << ','
               << format_double(nodes.weights[i]) << '\n';
          }
        } else {
          const auto z = nodes.circle_points[i];
          if (as_json) {
            doc.push_back({{"draw", draw}, {"re", z.real()}, {"im", z.imag()}});
          } else {
            os << draw << ',' << i << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
          }
        }
      }
    }
  } else {
    Rng rng(trial_stream(cfg.seed, 0));
    const NodeSet nodes = sample_leverage_nodes(measure, cfg.degree, cfg.count, rng);
    if (!as_json) os << (measure.is_real() ? "t,weight\n" : "re,im,weight\n");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (measure.is_real()) {
        if (as_json) {
          doc.push_back({{"t", nodes.points[i]}, {"weight", nodes.weights[i]}});
        } else {
          os << format_double(nodes.points[i]) << ',' << format_double(nodes.weights[i]) << '\n';
        }
      } else {
        const auto z = nodes.circle_points[i];
        if (as_json) {
          doc.push_back({{"re", z.real()}, {"im", z.imag()}, {"weight", 1.0}});
        } else {
          os << format_double(z.real()) << ',' << format_double(z.imag()) << ",1\n";
        }
      }
    }
  }
  if (as_json) os << doc.dump(2) << '\n';
  emit(cfg, os.str(), out);
  return kOk;
}

struct ErrorReport {
  double value;
  std::string_view kind;
};

// Relative error when the best fit leaves a residual, excess error otherwise.
ErrorReport fit_error(std::span<const double> flat, const TargetReference& ref) {
  if (ref.optimal_residual() > kResidualFloor) return {relative_error(flat, ref), "relative"};
  std::vector<double> oracle = ref.coeffs;
  if (!ref.measure.is_real()) {
    oracle.clear();
    for (const auto& c : ref.fourier_coeffs) {
      oracle.push_back(c.real());
      oracle.push_back(c.imag());
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) sum += (flat[i] - oracle[i]) * (flat[i] - oracle[i]);
  return {sum, "excess"};
}

int cmd_fit(const CliConfig& cfg, std::ostream& out) {
  if (cfg.degree < 0) throw InvalidArgument("--d must be nonnegative");
  if (cfg.n < static_cast<std::size_t>(cfg.degree) + 1) throw InvalidArgument("n must be at least d+1");
  Measure measure = parse_measure(cfg.measure);
  if (cfg.kind == "fourier") measure = Measure::circle();
  const Target target = cfg.target.empty()
                            ? (measure.is_real() ? Target(Indicator{-0.5, 0.5}) : Target(Arc{0.75 * std::numbers::pi, 1.25 * std::numbers::pi}))
                            : Target::parse(cfg.target);
  target.check_compatible(measure);
  const Method method = cfg.kind == "leverage" ? Method::kLeverageOnly : Method::kDebiased;

  std::optional<OrthoBasis> basis;
  if (measure.is_real()) basis.emplace(measure, cfg.degree);
  const PolyFit fit = run_method(method, basis ? &*basis : nullptr, cfg.degree, cfg.n, target,
                                 trial_stream(cfg.seed, 0));
  const TargetReference ref = make_reference(measure, cfg.degree, target);
  const std::vector<double> flat = flatten_coeffs(fit);
  const ErrorReport err = fit_error(flat, ref);

  json doc;
  doc["method"] = cfg.kind;
  doc["measure"] = std::string(measure.name());
  doc["target"] = target.to_string();
  doc["d"] = cfg.degree;
  doc["n"] = cfg.n;
  doc["seed"] = cfg.seed;
  json coeffs = json::array();
  json nodes = json::array();
  if (measure.is_real()) {
    for (double c : fit.coeffs) coeffs.push_back(c);
    for (std::size_t i = 0; i < fit.nodes.size(); ++i) {
      nodes.push_back({{"t", fit.nodes.points[i]},
                       {"weight", fit.nodes.weights[i]},
                       {"source", source_name(fit.nodes.sources[i])}});
    }
  } else {
    for (const auto& c : fit.fourier_coeffs) coeffs.push_back({c.real(), c.imag()});
    for (std::size_t i = 0; i < fit.nodes.size(); ++i) {
      const auto z = fit.nodes.circle_points[i];
      nodes.push_back({{"re", z.real()}, {"im", z.imag()}, {"source", source_name(fit.nodes.sources[i])}});
    }
  }
  doc["coefficients"] = std::move(coeffs);
  doc["nodes"] = std::move(nodes);
  doc["epsilon"] = err.value;
  doc["epsilon_kind"] = err.kind;
  doc["optimal_residual"] = ref.optimal_residual();
  emit(cfg, doc.dump(2) + "\n", out);
  return kOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream in(cfg.fit_path);
  if (!in) throw InvalidArgument("cannot open '" + cfg.fit_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed fit JSON: ") + e.what());
  }
  try {
    const Measure measure = parse_measure(doc.at("measure").get<std::string>());
    const int degree = doc.at("d").get<int>();
    const Target target = Target::parse(doc.at("target").get<std::string>());
    const double reported = doc.at("epsilon").get<double>();
    std::vector<double> flat;
    for (const auto& c : doc.at("coefficients")) {
      if (measure.is_real()) {
        flat.push_back(c.get<double>());
      } else {
        flat.push_back(c.at(0).get<double>());
        flat.push_back(c.at(1).get<double>());
      }
    }
    const std::size_t expected = (measure.is_real() ? 1u : 2u) * (static_cast<std::size_t>(degree) + 1);
    if (degree < 0 || flat.size() != expected) throw InvalidArgument("coefficient count does not match d");
    const TargetReference ref = make_reference(measure, degree, target);
    const ErrorReport recomputed = fit_error(flat, ref);
    const double diff = std::abs(recomputed.value - reported);
    out << "epsilon_reported=" << format_double(reported)
        << " epsilon_recomputed=" << format_double(recomputed.value)
        << " abs_diff=" << format_double(diff) << '\n';
    if (diff > 1e-10) {
      err << "verify: epsilon mismatch\n";
      return kNumericFailure;
    }
    return kOk;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("fit JSON is missing fields: ") + e.what());
  }
}

int cmd_experiment(const CliConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.config_path);
  if (!in) throw InvalidArgument("cannot open config '" + cfg.config_path + "'");
  ExperimentFile file = parse_experiment_config(in);
  if (cfg.threads > 0) file.config.threads = cfg.threads;
  if (file.config.threads == 0) file.config.threads = std::max(1u, std::thread::hardware_concurrency());
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(file.out_dir) : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);

  const auto render = [](auto writer, const auto& value) {
    std::ostringstream os;
    writer(os, value);
    return os.str();
  };
  if (cfg.kind == "bias") {
    const BiasStudyResult result = run_bias_study(file.config);
    write_file_atomic(dir / "bias.csv", render(write_bias_csv, result));
    write_file_atomic(dir / "bias_grid.csv", render(write_bias_grid_csv, result));
    write_file_atomic(dir / "bias.svg", render(write_bias_svg, result));
    if (file.write_trials) {
      write_file_atomic(dir / "trials.csv", render(write_trials_csv, std::span<const TrialRecord>(result.trials)));
    }
    out << "wrote " << (dir / "bias.csv").string() << '\n';
  } else {
    const ErrorCurveResult result = run_error_curves(file.config);
    write_file_atomic(dir / "curves.csv", render(write_curves_csv, result));
    write_file_atomic(dir / "curves.svg", render(write_curves_svg, result));
    if (file.write_trials) {
      write_file_atomic(dir / "trials.csv", render(write_trials_csv, std::span<const TrialRecord>(result.trials)));
    }
    out << "wrote " << (dir / "curves.csv").string() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unbiased polynomial and Fourier regression from random-matrix node sets", "debias"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* sample = app.add_subcommand("sample", "Draw evaluation nodes");
  sample->add_option("kind", cfg.kind, "dpp | leverage | haar")
      ->required()
      ->check(CLI::IsMember({"dpp", "leverage", "haar"}));
  sample->add_option("--measure", cfg.measure, "gaussian | uniform | circle");
  sample->add_option("--d", cfg.degree, "Polynomial degree d (d + 1 nodes per DPP draw)")->required();
  sample->add_option("--count", cfg.count, "DPP/Haar draws, or leverage nodes");
  sample->add_option("--seed", cfg.seed, "Base seed");
  sample->add_option("--out", cfg.out, "Output file (default stdout)");
  sample->add_option("--format", cfg.format, "csv | json");

  auto* fit = app.add_subcommand("fit", "Run one fit and report coefficients as JSON");
  fit->add_option("method", cfg.kind, "debiased | leverage | fourier")
      ->required()
      ->check(CLI::IsMember({"debiased", "leverage", "fourier"}));
  fit->add_option("--measure", cfg.measure, "gaussian | uniform | circle");
  fit->add_option("--target", cfg.target, "indicator:a,b | arc:a,b | poly:c0,c1,...");
  fit->add_option("--d", cfg.degree, "Polynomial degree")->required();
  fit->add_option("--n", cfg.n, "Number of function evaluations")->required();
  fit->add_option("--seed", cfg.seed, "Base seed");
  fit->add_option("--out", cfg.out, "Output file (default stdout)");

  auto* experiment = app.add_subcommand("experiment", "Run a bias study or error curves from a config file");
  experiment->add_option("kind", cfg.kind, "bias | curves")
      ->required()
      ->check(CLI::IsMember({"bias", "curves"}));
  experiment->add_option("config", cfg.config_path, "key=value config file")->required();
  experiment->add_option("--threads", cfg.threads, "Worker cap (default: config, else all cores)");
  experiment->add_option("--out", cfg.out, "Output directory (overrides out_dir)");

  auto* verify = app.add_subcommand("verify", "Recompute epsilon for a fit JSON file");
  verify->add_option("fit", cfg.fit_path, "JSON written by `fit`")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(cfg, out);
    if (fit->parsed()) return cmd_fit(cfg, out);
    if (experiment->parsed()) return cmd_experiment(cfg, out);
    return cmd_verify(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace debias::cli
