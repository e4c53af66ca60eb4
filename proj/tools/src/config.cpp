#include "rankpc_cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "rankpc/text.hpp"

namespace rankpc::cli {

std::vector<double> default_log10_alpha_grid() {
  return {-7.0, -6.0, -5.0, -4.25, -3.5, -2.75, -2.0, -1.5, -1.0, -0.75};
}

void ExperimentConfig::validate() const {
  if (p_values.empty()) throw ConfigError("experiment.p is empty");
  if (n_values.empty()) throw ConfigError("experiment.n is empty");
  if (degrees.empty()) throw ConfigError("experiment.degree is empty");
  if (regimes.empty()) throw ConfigError("experiment.regimes is empty");
  if (methods.empty()) throw ConfigError("experiment.methods is empty");
  if (log10_alpha.empty()) throw ConfigError("experiment.log10_alpha is empty");
  for (int p : p_values) {
    if (p < 2) throw ConfigError("p = " + std::to_string(p) + " must be at least 2");
  }
  for (long long n : n_values) {
    // Fisher-z needs n - |S| - 3 >= 1 even for |S| = 0.
    if (n < 4) throw ConfigError("n = " + std::to_string(n) + " must be at least 4");
  }
  for (double d : degrees) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("degree must be a nonnegative number");
    for (int p : p_values) {
      if (d > p - 1) {
        throw ConfigError("degree " + text::format_double(d) + " is not below p = " + std::to_string(p) +
                          " (edge probability d / (p - 1) would exceed 1)");
      }
    }
  }
  for (double x : log10_alpha) {
    if (!(x < 0.0) || !std::isfinite(x) || !(std::pow(10.0, x) > 0.0)) {
      throw ConfigError("log10_alpha value " + text::format_double(x) + " does not give alpha in (0, 1)");
    }
  }
  if (std::set<double>(log10_alpha.begin(), log10_alpha.end()).size() != log10_alpha.size()) {
    throw ConfigError("log10_alpha contains duplicates");
  }
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  if (max_cond && *max_cond < 0) throw ConfigError("max_cond must be nonnegative");
  if (threads < 0) throw ConfigError("threads must be nonnegative");
}

namespace {

using Tree = boost::property_tree::ptree;

template <class T, class F>
std::vector<T> parse_list(const std::string& key, const std::string& raw, F parse_one) {
  std::vector<T> out;
  for (std::string_view item : text::split(raw, ',')) {
    item = text::trim(item);
    if (item.empty()) throw ConfigError(key + ": empty list element");
    try {
      out.push_back(parse_one(item));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& raw) {
  try {
    return text::parse_int(text::trim(raw));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string_view v = text::trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + std::string(v) + "'");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  Tree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config syntax error: " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  ExperimentConfig cfg;
  const std::map<std::string, std::set<std::string>> schema{
      {"experiment", {"p", "n", "degree", "regimes", "methods", "log10_alpha", "replicates", "seed"}},
      {"run", {"max_cond", "stable", "threads", "timing"}},
  };

  for (const auto& [section, body] : tree) {
    const auto known = schema.find(section);
    if (known == schema.end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' must sit inside a section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, node] : body) {
      const std::string qualified = section + "." + key;
      if (!known->second.contains(key)) throw ConfigError("unknown key '" + qualified + "'");
      const std::string raw = node.data();

      if (qualified == "experiment.p") {
        cfg.p_values = parse_list<int>(qualified, raw, [](std::string_view s) {
          return static_cast<int>(text::parse_int(s));
        });
      } else if (qualified == "experiment.n") {
        cfg.n_values = parse_list<long long>(qualified, raw, [](std::string_view s) { return text::parse_int(s); });
      } else if (qualified == "experiment.degree") {
        cfg.degrees = parse_list<double>(qualified, raw, [](std::string_view s) { return text::parse_double(s); });
      } else if (qualified == "experiment.regimes") {
        cfg.regimes = parse_list<Regime>(qualified, raw, [](std::string_view s) { return parse_regime(s); });
      } else if (qualified == "experiment.methods") {
        cfg.methods = parse_list<CorrelationMethod>(qualified, raw,
                                                    [](std::string_view s) { return parse_correlation_method(s); });
      } else if (qualified == "experiment.log10_alpha") {
        cfg.log10_alpha = text::trim(raw).empty()
                              ? std::vector<double>{}
                              : parse_list<double>(qualified, raw, [](std::string_view s) {
                                  return text::parse_double(s);
                                });
      } else if (qualified == "experiment.replicates") {
        cfg.replicates = static_cast<int>(parse_integer(qualified, raw));
      } else if (qualified == "experiment.seed") {
        const long long seed = parse_integer(qualified, raw);
        if (seed < 0) throw ConfigError("experiment.seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(seed);
      } else if (qualified == "run.max_cond") {
        cfg.max_cond = static_cast<int>(parse_integer(qualified, raw));
      } else if (qualified == "run.stable") {
        cfg.stable = parse_bool(qualified, raw);
      } else if (qualified == "run.threads") {
        cfg.threads = static_cast<int>(parse_integer(qualified, raw));
      } else if (qualified == "run.timing") {
        cfg.timing = parse_bool(qualified, raw);
      }
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

}  // namespace rankpc::cli
