#pragma once

// JSON encoding shared by the CLI and the tests: deterministic key order,
// integers as plain numbers up to 2^53 - 1 and as decimal strings beyond,
// rationals as {num, den}, and the endoclass list file format.

#include <string>
#include <vector>

#include "json.hpp"

#include "cuspcount/arith.hpp"
#include "cuspcount/reps.hpp"

namespace cuspcount {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Exact integer encoding: a JSON number when representable without loss in
/// a double-backed consumer, a decimal string otherwise.
Json json_int(const Int& value);

Int parse_json_int(const Json& value);

/// {"den": ..., "num": ...}, lowest terms.
Json json_rat(const Rat& value);

Rat parse_json_rat(const Json& value);

Json json_endoclass(const EndoclassRecord& endo);

/// Endoclass list: a JSON array of {"deg", "res_deg", "level_num",
/// "level_den"}; unknown keys are rejected, levels are exact fractions.
std::vector<EndoclassRecord> parse_endoclass_list(const Json& doc);

std::vector<EndoclassRecord> load_endoclass_file(const std::string& path);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
/// Identical inputs yield byte-identical output.
std::string dump_report(const Json& doc);

} // namespace cuspcount
