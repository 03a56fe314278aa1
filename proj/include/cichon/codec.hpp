#pragma once

// JSON codecs for the file formats the CLI reads and writes. Decoders throw
// Error(MalformedInput) on any shape problem; structural checks of the
// decoded value (widths, cell counts) come from the value constructors.

#include <string>
#include <string_view>

#include <json.hpp>

#include "cichon/combinatorics.hpp"
#include "cichon/constructions.hpp"
#include "cichon/posets.hpp"

namespace cichon::codec {

using nlohmann::json;

/// Parses text, mapping parse errors to MalformedInput.
json parse(std::string_view text);
/// Reads and parses a file.
json readFile(const std::string& path);

json toJson(const FinFunc& f);
FinFunc finFuncFrom(const json& j);

json toJson(const Family& family);
Family familyFrom(const json& j);

json toJson(const Slalom& sigma);
Slalom slalomFrom(const json& j);

json toJson(const BlockPartition& p);
BlockPartition blockPartitionFrom(const json& j);

json toJson(const StringFunc& g);
StringFunc stringFuncFrom(const json& j);

json toJson(const Condition& c);
Condition conditionFrom(const json& j);

struct LiftPair {
  LocCond loc;
  Condition target;
};

/// {"loc": <loc condition>, "target": <hechler or e condition>}.
LiftPair liftPairFrom(const json& j);

}  // namespace cichon::codec
