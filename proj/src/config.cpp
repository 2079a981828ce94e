#include "condmorph/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <toml.hpp>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

using Setter = std::function<void(ExperimentConfig&, const toml::node&, const std::string&)>;

[[noreturn]] void type_error(const std::string& key, const char* expected) {
  fail(ErrorCode::kConfig, "'" + key + "' must be " + expected);
}

std::int64_t as_int(const toml::node& n, const std::string& key) {
  if (auto v = n.value_exact<std::int64_t>()) return *v;
  type_error(key, "an integer");
}

std::size_t as_count(const toml::node& n, const std::string& key) {
  const auto v = as_int(n, key);
  if (v < 0) type_error(key, "a non-negative integer");
  return static_cast<std::size_t>(v);
}

double as_real(const toml::node& n, const std::string& key) {
  if (auto v = n.value_exact<double>()) return *v;
  if (auto v = n.value_exact<std::int64_t>()) return static_cast<double>(*v);
  type_error(key, "a number");
}

std::string as_string(const toml::node& n, const std::string& key) {
  if (auto v = n.value_exact<std::string>()) return *v;
  type_error(key, "a string");
}

std::vector<std::string> as_string_list(const toml::node& n, const std::string& key) {
  const auto* arr = n.as_array();
  if (!arr) {
    // a single comma-separated string is accepted too (handy for overrides)
    std::vector<std::string> out;
    std::stringstream ss(as_string(n, key));
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }
  std::vector<std::string> out;
  for (const auto& item : *arr) out.push_back(as_string(item, key));
  return out;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"data.path", [](auto& c, auto& n, auto& k) { c.dataset = as_string(n, k); }},
      {"data.train_first", [](auto& c, auto& n, auto& k) { c.train.first = as_count(n, k); }},
      {"data.train_count", [](auto& c, auto& n, auto& k) { c.train.count = as_count(n, k); }},
      {"data.val_first", [](auto& c, auto& n, auto& k) { c.validation.first = as_count(n, k); }},
      {"data.val_count", [](auto& c, auto& n, auto& k) { c.validation.count = as_count(n, k); }},
      {"ordering.voters", [](auto& c, auto& n, auto& k) { c.voters = as_string_list(n, k); }},
      {"training.tau", [](auto& c, auto& n, auto& k) { c.soft.tau = as_real(n, k); }},
      {"training.epochs",
       [](auto& c, auto& n, auto& k) {
         const auto v = as_int(n, k);
         if (v < 0 || v > std::numeric_limits<int>::max()) type_error(k, "a non-negative integer");
         c.soft.epochs = static_cast<int>(v);
       }},
      {"training.batch_size", [](auto& c, auto& n, auto& k) { c.soft.batch_size = as_count(n, k); }},
      {"training.learning_rate", [](auto& c, auto& n, auto& k) { c.soft.learning_rate = as_real(n, k); }},
      {"training.beta1", [](auto& c, auto& n, auto& k) { c.soft.beta1 = as_real(n, k); }},
      {"training.beta2", [](auto& c, auto& n, auto& k) { c.soft.beta2 = as_real(n, k); }},
      {"training.epsilon", [](auto& c, auto& n, auto& k) { c.soft.epsilon = as_real(n, k); }},
      {"training.seed", [](auto& c, auto& n, auto& k) { c.seed = as_count(n, k); }},
      {"morphology.se", [](auto& c, auto& n, auto& k) { c.structuring_element = as_string(n, k); }},
      {"morphology.op", [](auto& c, auto& n, auto& k) { c.operation = parse_morph_op(as_string(n, k)); }},
      {"evaluation.eval_count", [](auto& c, auto& n, auto& k) { c.eval_count = as_count(n, k); }},
      {"evaluation.alpha", [](auto& c, auto& n, auto& k) { c.alpha = as_real(n, k); }},
      {"evaluation.color_cap", [](auto& c, auto& n, auto& k) { c.color_cap = as_count(n, k); }},
      {"evaluation.quantization_levels",
       [](auto& c, auto& n, auto& k) {
         const auto v = as_int(n, k);
         if (v < 1 || v > 256) type_error(k, "an integer in [1, 256]");
         c.quantization_levels = static_cast<int>(v);
       }},
      {"output.dir", [](auto& c, auto& n, auto& k) { c.output_dir = as_string(n, k); }},
      {"output.showcase_count", [](auto& c, auto& n, auto& k) { c.showcase_count = as_count(n, k); }},
  };
  return table;
}

toml::table parse_toml(const std::string& text) {
  try {
    return toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config line " << e.source().begin.line << ": " << e.description();
    fail(ErrorCode::kConfig, msg.str());
  }
}

void apply_table(ExperimentConfig& cfg, const toml::table& root) {
  for (const auto& [section, node] : root) {
    const auto* tbl = node.as_table();
    if (!tbl) fail(ErrorCode::kConfig, "top-level key '" + std::string(section.str()) + "' outside a section");
    for (const auto& [key, value] : *tbl) {
      const std::string full = std::string(section.str()) + "." + std::string(key.str());
      auto it = setters().find(full);
      if (it == setters().end()) fail(ErrorCode::kConfig, "unknown config key '" + full + "'");
      it->second(cfg, value, full);
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  soft.validate();
  if (train.count == 0) fail(ErrorCode::kConfig, "training range is empty");
  if (train.overlaps(validation)) {
    fail(ErrorCode::kConfig, "training and validation ranges overlap");
  }
  if (voters.empty()) fail(ErrorCode::kConfig, "the voting family is empty");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::kConfig, "alpha must lie in (0, 1)");
  if (showcase_count > validation.count) {
    fail(ErrorCode::kConfig, "showcase_count exceeds the validation range");
  }
  if (eval_count > validation.count) {
    fail(ErrorCode::kConfig, "eval_count exceeds the validation range");
  }
  if (eval_count > 0 && eval_count < 10) {
    fail(ErrorCode::kConfig, "eval_count must be 0 or at least 10 (signed-rank test minimum)");
  }
  if (output_dir.empty()) fail(ErrorCode::kConfig, "output directory is empty");
  if (quantization_levels < 1) fail(ErrorCode::kConfig, "quantization_levels must be >= 1");
  StructuringElement::parse(structuring_element);
}

ExperimentConfig parse_experiment_config(const std::string& text, const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  apply_table(cfg, parse_toml(text));
  cfg.soft.seed = cfg.seed;
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kConfig, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

ExperimentConfig apply_overrides(const ExperimentConfig& cfg,
                                 const std::vector<std::string>& overrides) {
  ExperimentConfig out = cfg;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    const auto dot = item.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      fail(ErrorCode::kConfig, "override '" + item + "' is not of the form section.key=value");
    }
    const std::string section = item.substr(0, dot);
    const std::string key = item.substr(dot + 1, eq - dot - 1);
    const std::string value = item.substr(eq + 1);
    toml::table doc;
    try {
      doc = toml::parse("[" + section + "]\n" + key + " = " + value + "\n");
    } catch (const toml::parse_error&) {
      toml::table sec;
      sec.insert(key, value);
      doc.insert(section, std::move(sec));
    }
    apply_table(out, doc);
  }
  out.soft.seed = out.seed;
  return out;
}

std::string experiment_config_to_toml(const ExperimentConfig& cfg) {
  auto count = [](std::size_t v) { return static_cast<std::int64_t>(v); };
  toml::array voters;
  for (const auto& v : cfg.voters) voters.push_back(v);
  toml::table root{
      {"data", toml::table{{"path", cfg.dataset},
                           {"train_first", count(cfg.train.first)},
                           {"train_count", count(cfg.train.count)},
                           {"val_first", count(cfg.validation.first)},
                           {"val_count", count(cfg.validation.count)}}},
      {"ordering", toml::table{{"voters", voters}}},
      {"training", toml::table{{"tau", cfg.soft.tau},
                               {"epochs", cfg.soft.epochs},
                               {"batch_size", count(cfg.soft.batch_size)},
                               {"learning_rate", cfg.soft.learning_rate},
                               {"beta1", cfg.soft.beta1},
                               {"beta2", cfg.soft.beta2},
                               {"epsilon", cfg.soft.epsilon},
                               {"seed", static_cast<std::int64_t>(cfg.seed)}}},
      {"morphology", toml::table{{"se", cfg.structuring_element}, {"op", to_string(cfg.operation)}}},
      {"evaluation", toml::table{{"eval_count", count(cfg.eval_count)},
                                 {"alpha", cfg.alpha},
                                 {"color_cap", count(cfg.color_cap)},
                                 {"quantization_levels", cfg.quantization_levels}}},
      {"output", toml::table{{"dir", cfg.output_dir}, {"showcase_count", count(cfg.showcase_count)}}},
  };
  std::ostringstream out;
  out << root << "\n";
  return out.str();
}

}  // namespace condmorph
