#include "cichon/codec.hpp"

#include <fstream>
#include <sstream>

#include "cichon/error.hpp"

namespace cichon::codec {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedInput, what);
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string(what) + " needs \"" + key + "\"");
  return j.at(key);
}

Nat natFrom(const json& j, const char* what) {
  if (!j.is_number_unsigned()) malformed(std::string(what) + " must be a natural number");
  return j.get<Nat>();
}

std::vector<Nat> natsFrom(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<Nat> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(natFrom(v, what));
  return out;
}

NatSet natSetFrom(const json& j, const char* what) {
  const auto values = natsFrom(j, what);
  NatSet out(values.begin(), values.end());
  if (out.size() != values.size()) malformed(std::string(what) + " has duplicate entries");
  return out;
}

json toJson(const NatSet& s) { return json(std::vector<Nat>(s.begin(), s.end())); }

json treeToJson(const FiniteTree& t) {
  json j;
  j["kind"] = t.kind == TreeKind::Sacks ? "sacks" : "laver";
  json nodes = json::array();
  for (const auto& n : t.nodes) nodes.push_back(n);
  j["nodes"] = std::move(nodes);
  if (t.depth) j["depth"] = *t.depth;
  if (t.kind == TreeKind::Laver) {
    j["budget"] = t.budget;
    j["miller"] = t.miller;
  }
  return j;
}

FiniteTree treeFrom(const json& j, TreeKind kind) {
  FiniteTree t;
  t.kind = kind;
  const auto& nodes = field(j, "nodes", "tree");
  if (!nodes.is_array()) malformed("tree nodes must be an array");
  for (const auto& n : nodes) t.nodes.insert(natsFrom(n, "tree node"));
  if (j.contains("depth") && !j.at("depth").is_null()) t.depth = natFrom(j.at("depth"), "depth");
  if (j.contains("budget")) t.budget = natFrom(j.at("budget"), "budget");
  if (j.contains("miller")) {
    if (!j.at("miller").is_boolean()) malformed("miller must be a boolean");
    t.miller = j.at("miller").get<bool>();
  }
  return t;
}

}  // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
}

json readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

json toJson(const FinFunc& f) { return json(f.values); }

FinFunc finFuncFrom(const json& j) { return FinFunc(natsFrom(j, "function")); }

json toJson(const Family& family) {
  json functions = json::array();
  for (const auto& f : family) functions.push_back(toJson(f));
  return {{"horizon", family.horizon()}, {"functions", std::move(functions)}};
}

Family familyFrom(const json& j) {
  const auto horizon = natFrom(field(j, "horizon", "family"), "horizon");
  const auto& functions = field(j, "functions", "family");
  if (!functions.is_array()) malformed("family functions must be an array");
  std::vector<FinFunc> members;
  for (const auto& f : functions) members.push_back(finFuncFrom(f));
  return Family(static_cast<std::size_t>(horizon), std::move(members));
}

json toJson(const Slalom& sigma) {
  json cells = json::array();
  for (const auto& c : sigma.cells()) cells.push_back(toJson(c));
  return {{"width", sigma.width().widths}, {"cells", std::move(cells)}};
}

Slalom slalomFrom(const json& j) {
  WidthProfile width(natsFrom(field(j, "width", "slalom"), "width"));
  const auto& cells = field(j, "cells", "slalom");
  if (!cells.is_array()) malformed("slalom cells must be an array");
  std::vector<NatSet> out;
  for (const auto& c : cells) out.push_back(natSetFrom(c, "slalom cell"));
  return Slalom(std::move(out), std::move(width));
}

json toJson(const BlockPartition& p) {
  return {{"width", p.width().widths}, {"cells", p.allCells()}};
}

BlockPartition blockPartitionFrom(const json& j) {
  WidthProfile width(natsFrom(field(j, "width", "block partition"), "width"));
  const auto& blocks = field(j, "cells", "block partition");
  if (!blocks.is_array()) malformed("block partition cells must be an array");
  std::vector<std::vector<BlockPartition::Cell>> cells;
  for (const auto& block : blocks) {
    if (!block.is_array()) malformed("each block must be an array of cells");
    std::vector<BlockPartition::Cell> b;
    for (const auto& cell : block) {
      const auto positions = natsFrom(cell, "cell");
      b.emplace_back(positions.begin(), positions.end());
    }
    cells.push_back(std::move(b));
  }
  return BlockPartition(std::move(width), std::move(cells));
}

json toJson(const StringFunc& g) {
  json out = json::array();
  for (const auto& s : g.values) out.push_back({{"bits", s.bits()}});
  return out;
}

StringFunc stringFuncFrom(const json& j) {
  if (!j.is_array()) malformed("string function must be an array");
  StringFunc out;
  for (const auto& e : j) {
    const auto& bits = field(e, "bits", "string entry");
    if (!bits.is_string()) malformed("bits must be a string");
    out.values.emplace_back(bits.get<std::string>());
  }
  return out;
}

json toJson(const Condition& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CohenCond>) {
          return {{"kind", "cohen"}, {"stem", toJson(v.stem)}};
        } else if constexpr (std::is_same_v<T, HechlerCond>) {
          return {{"kind", "hechler"}, {"stem", toJson(v.stem)}, {"side", toJson(v.side)}};
        } else if constexpr (std::is_same_v<T, ECond>) {
          return {{"kind", "e"}, {"stem", toJson(v.stem)}, {"side", toJson(v.side)}};
        } else if constexpr (std::is_same_v<T, LocCond>) {
          json prefix = json::array();
          for (const auto& cell : v.prefix) prefix.push_back(toJson(cell));
          return {{"kind", "loc"}, {"prefix", std::move(prefix)}, {"side", toJson(v.side)}};
        } else if constexpr (std::is_same_v<T, FiniteTree>) {
          return treeToJson(v);
        } else {
          return {{"kind", "product"}, {"sacks", treeToJson(v.sacksPart)},
                  {"laver", treeToJson(v.laverPart)}};
        }
      },
      c);
}

Condition conditionFrom(const json& j) {
  const auto& kindField = field(j, "kind", "condition");
  if (!kindField.is_string()) malformed("condition kind must be a string");
  switch (parseKind(kindField.get<std::string>())) {
    case PosetKind::Cohen:
      return CohenCond{finFuncFrom(field(j, "stem", "cohen condition"))};
    case PosetKind::Hechler:
      return HechlerCond{finFuncFrom(field(j, "stem", "hechler condition")),
                         finFuncFrom(field(j, "side", "hechler condition"))};
    case PosetKind::E:
      return ECond{finFuncFrom(field(j, "stem", "e condition")),
                   familyFrom(field(j, "side", "e condition"))};
    case PosetKind::Loc: {
      const auto& prefix = field(j, "prefix", "loc condition");
      if (!prefix.is_array()) malformed("loc prefix must be an array");
      LocCond c;
      for (const auto& cell : prefix) c.prefix.push_back(natSetFrom(cell, "loc cell"));
      c.side = familyFrom(field(j, "side", "loc condition"));
      return c;
    }
    case PosetKind::Sacks:
      return treeFrom(j, TreeKind::Sacks);
    case PosetKind::Laver:
      return treeFrom(j, TreeKind::Laver);
    case PosetKind::Product:
      return ProductCond{treeFrom(field(j, "sacks", "product condition"), TreeKind::Sacks),
                         treeFrom(field(j, "laver", "product condition"), TreeKind::Laver)};
  }
  malformed("unhandled condition kind");
}

LiftPair liftPairFrom(const json& j) {
  auto loc = conditionFrom(field(j, "loc", "lift pair"));
  if (!std::holds_alternative<LocCond>(loc)) malformed("lift pair \"loc\" must be a loc condition");
  return {std::get<LocCond>(std::move(loc)), conditionFrom(field(j, "target", "lift pair"))};
}

}  // namespace cichon::codec
