#pragma once
// JSON file formats for instances and payment plans.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "obo/model.hpp"

#include <json.hpp>

namespace obo::io {

using Json = nlohmann::ordered_json;

// Structural parse only; throws Error{ParseError} with line or field context.
RawInstance parse_instance(std::string_view text, std::string_view source = "<input>");
// Parse and validate.
Instance load_instance(const std::filesystem::path& path);
Instance instance_from_string(std::string_view text);

// Full-precision serialization, so load(save(x)) == x.
Json instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

// Reals rounded to 12 significant digits.
double round_sig(double value, int digits = 12);

Json plan_to_json(const Instance& instance, const PaymentPlan& plan);
void save_plan(const Instance& instance, const PaymentPlan& plan, const std::filesystem::path& path);
// Reads the "payments" object of a plan file into a dense vector in agent
// order; agents missing from the object are paid 0.
std::vector<double> parse_plan_payments(const Instance& instance, std::string_view text,
                                        std::string_view source = "<input>");
std::vector<double> load_plan_payments(const Instance& instance, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace obo::io
