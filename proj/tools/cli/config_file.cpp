#include "config_file.hpp"

#include <charconv>
#include <set>

#include "debias/errors.hpp"

namespace debias::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_integer(std::string_view text, std::size_t line, std::string_view key) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(line, "'" + std::string(key) + "' expects a nonnegative integer, got '" +
                                std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return items;
}

}  // namespace

ExperimentFile parse_experiment_config(std::istream& in) {
  ExperimentFile file;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key=value");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key before '='");
    if (!seen.insert(key).second) throw ConfigError(line, "duplicate key '" + key + "'");

    try {
      auto& cfg = file.config;
      if (key == "measure") {
        cfg.measure = parse_measure(value);
      } else if (key == "d") {
        cfg.degree = parse_integer<int>(value, line, key);
      } else if (key == "n") {
        cfg.sample_counts.clear();
        for (const auto& item : split_list(value)) {
          cfg.sample_counts.push_back(parse_integer<std::size_t>(item, line, key));
        }
      } else if (key == "trials") {
        cfg.trials = parse_integer<std::size_t>(value, line, key);
      } else if (key == "target") {
        cfg.target = Target::parse(value);
      } else if (key == "seed") {
        cfg.seed = parse_integer<std::uint64_t>(value, line, key);
      } else if (key == "methods") {
        cfg.methods.clear();
        for (const auto& item : split_list(value)) cfg.methods.push_back(parse_method(item));
      } else if (key == "threads") {
        cfg.threads = parse_integer<unsigned>(value, line, key);
      } else if (key == "out_dir") {
        file.out_dir = value;
      } else if (key == "write_trials") {
        if (value != "true" && value != "false") throw ConfigError(line, "write_trials expects true or false");
        file.write_trials = value == "true";
      } else {
        throw ConfigError(line, "unknown key '" + key + "'");
      }
    } catch (const InvalidArgument& e) {
      throw ConfigError(line, e.what());
    }
  }
  try {
    file.config.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, std::string("invalid experiment: ") + e.what());
  }
  file.config.keep_trials = file.write_trials;
  return file;
}

}  // namespace debias::cli
