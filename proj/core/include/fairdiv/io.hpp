#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

// Instance:   {"n": int, "t": int, "m": [int], "valuations": [[int | "p/q"]]}
// Allocation: {"bundles": [[int]]}
// Agents and types are 0-indexed. Unknown keys are rejected (schema_error);
// malformed JSON raises parse_error.
InstancePtr parse_instance(std::string_view text);
std::vector<ItemVector> parse_bundles(std::string_view text);
Allocation parse_allocation(const InstancePtr& instance, std::string_view text);

std::string instance_to_json(const Instance& instance);
std::string allocation_to_json(const Allocation& alloc);

std::string read_file(const std::string& path);

}  // namespace fairdiv
