#include "netq/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netq {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key \"" + key + "\" in " + where);
  }
}

void require_keys(const json& obj, std::initializer_list<const char*> keys,
                  const std::string& where) {
  for (const char* k : keys)
    if (!obj.contains(k)) throw ConfigError("missing key \"" + std::string(k) + "\" in " + where);
}

DistributionSpec parse_service(const json& j, int node_1based) {
  const std::string where = "services[" + std::to_string(node_1based) + "]";
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  require_keys(j, {"type"}, where);
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") {
    reject_unknown_keys(j, {"type", "value"}, where);
    require_keys(j, {"value"}, where);
    return Constant{j.at("value").get<double>()};
  }
  if (type == "exponential") {
    reject_unknown_keys(j, {"type", "mean"}, where);
    require_keys(j, {"mean"}, where);
    return Exponential{j.at("mean").get<double>()};
  }
  if (type == "scaled-erlang") {
    reject_unknown_keys(j, {"type", "shape"}, where);
    require_keys(j, {"shape"}, where);
    if (!j.at("shape").is_number_integer())
      throw ConfigError(where + ": shape must be an integer");
    return ScaledErlang{j.at("shape").get<int>()};
  }
  throw ConfigError(where + ": unknown service type \"" + type + "\"");
}

}  // namespace

NetworkSpec parse_network_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(doc, {"n", "arcs", "buffers", "services", "correlation"}, "config");
  require_keys(doc, {"n", "arcs", "buffers"}, "config");

  NetworkSpec spec;
  if (!doc.at("n").is_number_integer()) throw ConfigError("\"n\" must be an integer");
  spec.node_count = doc.at("n").get<int>();

  if (!doc.at("arcs").is_array()) throw ConfigError("\"arcs\" must be an array of [i,j]");
  for (const auto& arc : doc.at("arcs")) {
    if (!arc.is_array() || arc.size() != 2 || !arc[0].is_number_integer() ||
        !arc[1].is_number_integer())
      throw ConfigError("each arc must be a pair of 1-based node indices");
    spec.arcs.emplace_back(arc[0].get<int>() - 1, arc[1].get<int>() - 1);
  }

  if (!doc.at("buffers").is_array()) throw ConfigError("\"buffers\" must be an array");
  for (const auto& b : doc.at("buffers")) {
    if (b.is_string()) {
      if (b.get<std::string>() != "inf")
        throw ConfigError("buffer entries must be \"inf\" or an integer");
      spec.buffers.emplace_back(std::nullopt);
    } else if (b.is_number_integer()) {
      spec.buffers.emplace_back(b.get<int>());
    } else {
      throw ConfigError("buffer entries must be \"inf\" or an integer");
    }
  }

  const bool has_services = doc.contains("services");
  const bool has_correlation = doc.contains("correlation");
  if (has_services == has_correlation)
    throw ConfigError("config needs exactly one of \"services\" or \"correlation\"");

  if (has_services) {
    if (!doc.at("services").is_array()) throw ConfigError("\"services\" must be an array");
    std::vector<DistributionSpec> services;
    int idx = 1;
    for (const auto& s : doc.at("services")) services.push_back(parse_service(s, idx++));
    spec.services = std::move(services);
  } else {
    const auto& corr = doc.at("correlation");
    if (!corr.is_object()) throw ConfigError("\"correlation\" must be an object");
    reject_unknown_keys(corr, {"type", "a"}, "correlation");
    require_keys(corr, {"type", "a"}, "correlation");
    if (corr.at("type").get<std::string>() != "correlated-exponential")
      throw ConfigError("correlation type must be \"correlated-exponential\"");
    spec.services = CorrelatedExponential{corr.at("a").get<double>()};
  }
  return spec;
}

NetworkSpec load_network_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network_config(buf.str());
}

std::string to_canonical_json(const NetworkSpec& spec) {
  ordered_json doc;
  doc["n"] = spec.node_count;
  doc["arcs"] = ordered_json::array();
  for (auto [i, j] : spec.arcs) doc["arcs"].push_back({i + 1, j + 1});
  doc["buffers"] = ordered_json::array();
  for (const auto& b : spec.buffers) {
    if (b.has_value())
      doc["buffers"].push_back(*b);
    else
      doc["buffers"].push_back("inf");
  }
  if (const auto* per_node = std::get_if<std::vector<DistributionSpec>>(&spec.services)) {
    doc["services"] = ordered_json::array();
    for (const auto& s : *per_node) {
      ordered_json rec;
      if (const auto* c = std::get_if<Constant>(&s)) {
        rec["type"] = "constant";
        rec["value"] = c->value;
      } else if (const auto* e = std::get_if<Exponential>(&s)) {
        rec["type"] = "exponential";
        rec["mean"] = e->mean;
      } else {
        rec["type"] = "scaled-erlang";
        rec["shape"] = std::get<ScaledErlang>(s).shape;
      }
      doc["services"].push_back(rec);
    }
  } else {
    const auto& corr = std::get<CorrelatedExponential>(spec.services);
    doc["correlation"] = {{"type", "correlated-exponential"}, {"a", corr.a}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace netq
