#pragma once

#include <string>

#include "json.hpp"
#include "qlab/rep/rep.hpp"

namespace qlab {

using Json = nlohmann::json;

// {"dims": {vertex: d}, "field": p, "mats": {arrow: rows}}; keys sorted.
Json rep_to_json(const Rep& m);
// Errors: BadParameter on shape or field mismatch, UnknownVertex for unknown names.
Rep rep_from_json(const AlgebraPtr& alg, const Json& j);

std::string sha256_hex(const std::string& data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace qlab
