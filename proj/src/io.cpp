#include "obo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "obo/error.hpp"

namespace obo::io {
namespace {

[[noreturn]] void fail(std::string_view source, const std::string& msg) {
  throw Error(ErrorCode::ParseError, std::string(source) + ": " + msg);
}

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // The library message carries "line L, column C".
    fail(source, e.what());
  }
}

const Json& require(const Json& obj, const char* key, std::string_view source) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(source, std::string("missing field '") + key + "'");
  return *it;
}

double number_at(const Json& v, const std::string& field, std::string_view source) {
  if (!v.is_number()) fail(source, "field '" + field + "': expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& obj, const char* key, std::string_view source) {
  const Json& arr = require(obj, key, source);
  if (!arr.is_array()) fail(source, std::string("field '") + key + "': expected an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(number_at(arr[i], std::string(key) + "[" + std::to_string(i) + "]", source));
  return out;
}

}  // namespace

RawInstance parse_instance(std::string_view text, std::string_view source) {
  const Json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "top level must be an object");

  RawInstance raw;
  const Json& agents = require(doc, "agents", source);
  if (!agents.is_array()) fail(source, "field 'agents': expected an array");
  if (agents.empty()) fail(source, "field 'agents': list is empty");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!agents[i].is_string()) fail(source, "field 'agents[" + std::to_string(i) + "]': expected a string");
    raw.agents.push_back(agents[i].get<std::string>());
  }
  {
    std::vector<std::string> sorted = raw.agents;
    std::sort(sorted.begin(), sorted.end());
    if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
      fail(source, "field 'agents': duplicate agent id '" + *dup + "'");
  }

  const Json& edges = require(doc, "edges", source);
  if (!edges.is_array()) fail(source, "field 'edges': expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (!e.is_object()) fail(source, "field '" + field + "': expected an object");
    const Json& from = require(e, "from", source);
    const Json& to = require(e, "to", source);
    if (!from.is_string() || !to.is_string())
      fail(source, "field '" + field + "': 'from' and 'to' must be strings");
    raw.edges.push_back({from.get<std::string>(), to.get<std::string>(),
                         number_at(require(e, "w", source), field + ".w", source)});
  }

  raw.opinions = numbers(doc, "opinions", source);
  raw.costs = numbers(doc, "costs", source);
  if (const auto it = doc.find("cost_unit"); it != doc.end()) {
    if (*it == "per_unit") {
      raw.cost_unit = CostUnit::PerUnit;
    } else if (*it == "per_0.1") {
      raw.cost_unit = CostUnit::PerTenth;
    } else {
      fail(source, "field 'cost_unit': expected \"per_unit\" or \"per_0.1\"");
    }
  }
  raw.threshold = number_at(require(doc, "threshold", source), "threshold", source);
  raw.budget = number_at(require(doc, "budget", source), "budget", source);
  return raw;
}

Instance instance_from_string(std::string_view text) { return validate(parse_instance(text)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::filesystem::path& path) {
  return validate(parse_instance(read_file(path), path.string()));
}

Json instance_to_json(const Instance& instance) {
  Json doc;
  doc["agents"] = instance.agents;
  Json edges = Json::array();
  for (const auto& e : instance.edges)
    edges.push_back({{"from", instance.agents[e.from]}, {"to", instance.agents[e.to]}, {"w", e.weight}});
  doc["edges"] = std::move(edges);
  doc["opinions"] = instance.true_opinions;
  doc["costs"] = instance.costs;
  doc["cost_unit"] = "per_unit";
  doc["threshold"] = instance.threshold;
  doc["budget"] = instance.budget;
  return doc;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, path.string() + ": cannot open for writing");
  out << text;
}

}  // namespace

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text(path, instance_to_json(instance).dump(2) + "\n");
}

double round_sig(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value == 0.0 ? 0.0 : value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json plan_to_json(const Instance& instance, const PaymentPlan& plan) {
  Json doc;
  Json payments = Json::object();
  for (std::size_t i = 0; i < instance.size(); ++i)
    payments[instance.agents[i]] = round_sig(plan.payments[i]);
  doc["payments"] = std::move(payments);
  Json supporters = Json::array();
  for (std::size_t i : plan.supporters) supporters.push_back(instance.agents[i]);
  doc["supporters"] = std::move(supporters);
  doc["total_spend"] = round_sig(plan.total_spend);
  return doc;
}

void save_plan(const Instance& instance, const PaymentPlan& plan, const std::filesystem::path& path) {
  write_text(path, plan_to_json(instance, plan).dump(2) + "\n");
}

std::vector<double> parse_plan_payments(const Instance& instance, std::string_view text,
                                        std::string_view source) {
  const Json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "top level must be an object");
  const Json& payments = require(doc, "payments", source);
  if (!payments.is_object()) fail(source, "field 'payments': expected an object");
  std::vector<double> out(instance.size(), 0.0);
  for (const auto& [agent, value] : payments.items()) {
    const auto it = std::find(instance.agents.begin(), instance.agents.end(), agent);
    if (it == instance.agents.end()) fail(source, "field 'payments': unknown agent '" + agent + "'");
    const double p = number_at(value, "payments." + agent, source);
    if (!(p >= 0.0)) fail(source, "field 'payments." + agent + "': payment must be >= 0");
    out[static_cast<std::size_t>(it - instance.agents.begin())] = p;
  }
  return out;
}

std::vector<double> load_plan_payments(const Instance& instance, const std::filesystem::path& path) {
  return parse_plan_payments(instance, read_file(path), path.string());
}

}  // namespace obo::io
