#include "phylosub/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "phylosub/csv.hpp"

namespace phylosub {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

std::string to_string(ExecMode mode) { return mode == ExecMode::serial ? "serial" : "openmp"; }

ExecMode parse_exec(const std::string& text) {
  if (text == "serial") return ExecMode::serial;
  if (text == "openmp") return ExecMode::openmp;
  throw ConfigError("unknown exec mode '" + text + "'");
}

bool parse_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("expected true or false, got '" + text + "'");
}

std::size_t parse_size(const std::string& text) {
  return static_cast<std::size_t>(csv::parse_u64(text));
}

}  // namespace

std::size_t ExperimentConfig::cases_per_individual() const {
  return regime == RegimeKind::full ? num_cases() : sample_size(subsample_rate, num_cases());
}

std::string ExperimentConfig::condition() const {
  return phylosub::to_string(diagnostic) + "-" + phylosub::to_string(selection) + "-" +
         phylosub::to_string(regime) + "-r" + csv::format_double(subsample_rate);
}

void ExperimentConfig::validate() const {
  if (num_genes == 0) throw ConfigError("num_genes must be positive");
  if (pop_size == 0) throw ConfigError("pop_size must be positive");
  if (mutation_rate < 0.0 || mutation_rate > 1.0) {
    throw ConfigError("mutation_rate must be in [0, 1]");
  }
  if (mutation_sigma <= 0.0) throw ConfigError("mutation_sigma must be positive");
  if (tournament_size == 0) throw ConfigError("tournament_size must be positive");
  if (subsample_rate <= 0.0 || subsample_rate > 1.0) {
    throw ConfigError("subsample_rate must be in (0, 1]");
  }
  if (!max_generations.has_value() && !max_evaluations.has_value()) {
    throw ConfigError("at least one of max_generations and max_evaluations is required");
  }
  if (max_evaluations.has_value() && *max_evaluations == 0) {
    throw ConfigError("max_evaluations must be positive");
  }
  if (metric_interval == 0) throw ConfigError("metric_interval must be positive");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("diagnostic", phylosub::to_string(diagnostic));
  out.emplace_back("num_genes", csv::format_u64(num_genes));
  out.emplace_back("pop_size", csv::format_u64(pop_size));
  out.emplace_back("mutation_rate", csv::format_double(mutation_rate));
  out.emplace_back("mutation_sigma", csv::format_double(mutation_sigma));
  out.emplace_back("selection", phylosub::to_string(selection));
  out.emplace_back("tournament_size", csv::format_u64(tournament_size));
  out.emplace_back("regime", phylosub::to_string(regime));
  out.emplace_back("subsample_rate", csv::format_double(subsample_rate));
  out.emplace_back("depth_limit", csv::format_u64(depth_limit));
  out.emplace_back("worst_score", csv::format_double(worst_score));
  if (max_generations.has_value()) {
    out.emplace_back("max_generations", csv::format_u64(*max_generations));
  }
  if (max_evaluations.has_value()) {
    out.emplace_back("max_evaluations", csv::format_u64(*max_evaluations));
  }
  out.emplace_back("metric_interval", csv::format_u64(metric_interval));
  out.emplace_back("audit_estimation", audit_estimation ? "true" : "false");
  out.emplace_back("dump_phylogeny", dump_phylogeny ? "true" : "false");
  out.emplace_back("exec", to_string(exec));
  out.emplace_back("seed", csv::format_u64(seed));
  out.emplace_back("replicate", csv::format_u64(replicate));
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_number) + ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_number) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    try {
      if (key == "diagnostic") {
        config.diagnostic = parse_diagnostic(value);
      } else if (key == "num_genes") {
        config.num_genes = parse_size(value);
      } else if (key == "pop_size") {
        config.pop_size = parse_size(value);
      } else if (key == "mutation_rate") {
        config.mutation_rate = csv::parse_double(value);
      } else if (key == "mutation_sigma") {
        config.mutation_sigma = csv::parse_double(value);
      } else if (key == "selection") {
        config.selection = parse_selection(value);
      } else if (key == "tournament_size") {
        config.tournament_size = parse_size(value);
      } else if (key == "regime") {
        config.regime = parse_regime(value);
      } else if (key == "subsample_rate") {
        config.subsample_rate = csv::parse_double(value);
      } else if (key == "depth_limit") {
        config.depth_limit = parse_size(value);
      } else if (key == "worst_score") {
        config.worst_score = csv::parse_double(value);
      } else if (key == "max_generations") {
        config.max_generations = parse_size(value);
      } else if (key == "max_evaluations") {
        config.max_evaluations = csv::parse_u64(value);
      } else if (key == "metric_interval") {
        config.metric_interval = parse_size(value);
      } else if (key == "audit_estimation") {
        config.audit_estimation = parse_bool(value);
      } else if (key == "dump_phylogeny") {
        config.dump_phylogeny = parse_bool(value);
      } else if (key == "exec") {
        config.exec = parse_exec(value);
      } else if (key == "seed") {
        config.seed = csv::parse_u64(value);
      } else if (key == "replicate") {
        config.replicate = parse_size(value);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& error) {
      throw ConfigError("line " + std::to_string(line_number) + ", key '" + key +
                        "': " + error.what());
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace phylosub
