#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "debias/experiments.hpp"

namespace debias::cli {

/// Malformed experiment config; `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "config line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentFile {
  ExperimentConfig config;
  std::string out_dir = ".";
  bool write_trials = false;
};

/// Flat `key = value` text; `#` starts a comment. Keys:
///   measure, d, n (comma list), trials, target, seed, methods (comma list),
///   threads, out_dir, write_trials (true/false)
ExperimentFile parse_experiment_config(std::istream& in);

}  // namespace debias::cli
