#pragma once

#include <string>

#include "irshcn/netmodel.hpp"

namespace irshcn {

// Strict JSON scenario I/O.  Unknown keys are a hard ConfigError (misspelled
// parameters must not silently fall back to defaults).  Serialization is
// canonical (sorted keys, shortest round-trip numbers), so
// parse(serialize(s)) == s bit-for-bit.
Scenario scenario_from_json(const std::string& json_text);
std::string scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

} // namespace irshcn
