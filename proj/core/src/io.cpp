#include "fairdiv/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fairdiv/error.hpp"

namespace fairdiv {

namespace {

using nlohmann::json;

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, e.what());
  }
}

void require_keys(const json& doc, const std::set<std::string>& keys, std::string_view what) {
  if (!doc.is_object()) fail(ErrorCode::schema_error, std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!keys.contains(key)) fail(ErrorCode::schema_error, "unknown key '" + key + "' in " + std::string(what));
  }
  for (const auto& key : keys) {
    if (!doc.contains(key)) fail(ErrorCode::schema_error, "missing key '" + key + "' in " + std::string(what));
  }
}

std::int64_t as_int(const json& j, std::string_view where) {
  if (!j.is_number_integer()) fail(ErrorCode::schema_error, std::string(where) + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    fail(ErrorCode::overflow, std::string(where) + " does not fit in 64 bits");
  }
  return j.get<std::int64_t>();
}

std::size_t as_count(const json& j, std::string_view where) {
  const auto v = as_int(j, where);
  if (v < 0) fail(ErrorCode::schema_error, std::string(where) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

Rational as_rational(const json& j, std::string_view where) {
  if (j.is_number_integer()) return Rational(as_int(j, where));
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::schema_error, std::string(where) + ": " + e.what());
    }
  }
  fail(ErrorCode::schema_error, std::string(where) + " must be an integer or a \"p/q\" string");
}

const json& as_array(const json& j, std::string_view where) {
  if (!j.is_array()) fail(ErrorCode::schema_error, std::string(where) + " must be an array");
  return j;
}

std::vector<std::int64_t> int_row(const json& j, std::string_view where) {
  std::vector<std::int64_t> row;
  for (const auto& e : as_array(j, where)) row.push_back(as_int(e, where));
  return row;
}

}  // namespace

InstancePtr parse_instance(std::string_view text) {
  const auto doc = parse_text(text);
  require_keys(doc, {"n", "t", "m", "valuations"}, "instance");
  const auto n = as_count(doc["n"], "n");
  const auto t = as_count(doc["t"], "t");
  auto m = int_row(doc["m"], "m");
  if (m.size() != t) fail(ErrorCode::schema_error, "m has " + std::to_string(m.size()) + " entries, t = " + std::to_string(t));
  const auto& rows = as_array(doc["valuations"], "valuations");
  if (rows.size() != n) {
    fail(ErrorCode::schema_error, "valuations has " + std::to_string(rows.size()) + " rows, n = " + std::to_string(n));
  }
  std::vector<AdditiveValuation> valuations;
  for (std::size_t i = 0; i < n; ++i) {
    const auto where = "valuations[" + std::to_string(i) + "]";
    const auto& row = as_array(rows[i], where);
    if (row.size() != t) fail(ErrorCode::schema_error, where + " must have t entries");
    std::vector<Rational> values;
    for (const auto& e : row) values.push_back(as_rational(e, where));
    valuations.emplace_back(std::move(values));
  }
  return make_instance(ItemVector(std::move(m)), std::move(valuations));
}

std::vector<ItemVector> parse_bundles(std::string_view text) {
  const auto doc = parse_text(text);
  require_keys(doc, {"bundles"}, "allocation");
  std::vector<ItemVector> bundles;
  for (const auto& row : as_array(doc["bundles"], "bundles")) bundles.emplace_back(int_row(row, "bundles"));
  return bundles;
}

Allocation parse_allocation(const InstancePtr& instance, std::string_view text) {
  return Allocation(instance, parse_bundles(text));
}

std::string instance_to_json(const Instance& instance) {
  json vals = json::array();
  for (const auto& v : instance.valuations()) {
    json row = json::array();
    for (const auto& x : v.values()) {
      if (x.is_integer()) {
        row.push_back(x.num());
      } else {
        row.push_back(x.str());
      }
    }
    vals.push_back(std::move(row));
  }
  json doc = {{"n", instance.agents()},
              {"t", instance.types()},
              {"m", std::vector<std::int64_t>(instance.supply().counts().begin(), instance.supply().counts().end())},
              {"valuations", std::move(vals)}};
  return doc.dump();
}

std::string allocation_to_json(const Allocation& alloc) {
  json bundles = json::array();
  for (const auto& b : alloc.bundles()) bundles.push_back(std::vector<std::int64_t>(b.counts().begin(), b.counts().end()));
  return json{{"bundles", std::move(bundles)}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fairdiv
