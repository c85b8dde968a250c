#pragma once

#include "rotsync/errors.hpp"
#include "rotsync/homeo.hpp"
#include "rotsync/reconstruct.hpp"
#include "rotsync/system.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace rotsync::io {

using nlohmann::json;

/// Malformed or out-of-range input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Map description. Primitive kinds:
///   {"kind": "rotation", "alpha": a}
///   {"kind": "pl", "breakpoints": [[x, y], ...]}
///   {"kind": "moebius", "matrix": [[a, b], [c, d]]}
/// Derived kinds: "cover" and "quotient" ({"l", "of"}), "inverse" ({"of"}),
/// "conjugate" ({"of", "by"}: by o of o by^-1), "chain" ({"maps"}, applied in
/// order) and "word" ({"generators", "word"}). Any map may carry an integer
/// "shift" added to its lift. The string "bundled_conjugator" names the
/// bundled PL map.
Homeo homeo_from_json(const json& j);
json to_json(const Homeo& h);

/// A system is either a bundled fixture name, {"fixture": name}, or
/// {"generators": [...], "nu": [...]} (nu defaults to uniform). Objects may
/// add "cover": l and "conjugated_by": map, applied in that order.
GeneratorSystem system_from_json(const json& j);
json to_json(const GeneratorSystem& system);

json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

/// CSV with header "x,psi" and 17 significant digits.
void write_table_csv(const std::filesystem::path& path, const ConjugacyTable& table);

/// Writes every bundled fixture as <name>.json and the bundled conjugator as
/// bundled_conjugator.json. Returns the file names written.
std::vector<std::string> emit_fixtures(const std::filesystem::path& dir);

} // namespace rotsync::io
