#include "cichon/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cichon/error.hpp"
#include "forcing_kb_data.hpp"

namespace cichon {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kNodeCount> kNames{
    "Empty", "BIn", "BLeq", "BNeq", "DNeq", "DLeq", "DIn", "AllNew"};

constexpr std::array<std::string_view, kNodeCount> kLabels{
    "∅", "B(∈*)", "B(≤*)", "B(≠*)", "D(≠*)", "D(≤*)", "D(∈*)", "ω^ω ∖ V"};

Node nodeAt(std::size_t i) { return static_cast<Node>(i); }

// reach[a][b]: b is reachable from a along the arrows.
std::array<NodeSet, kNodeCount> computeReach() {
  std::array<NodeSet, kNodeCount> reach{};
  for (std::size_t i = 0; i < kNodeCount; ++i) reach[i].set(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : diagramSpec().edges) {
      for (std::size_t i = 0; i < kNodeCount; ++i) {
        if (reach[i][index(e.from)] && !reach[i][index(e.to)]) {
          reach[i].set(index(e.to));
          changed = true;
        }
      }
    }
  }
  return reach;
}

const std::array<NodeSet, kNodeCount>& reachTable() {
  static const auto table = computeReach();
  return table;
}

// Implication graph for nonemptiness: arrows forward plus class links both ways.
std::array<std::vector<Node>, kNodeCount> implications(const DiagramState& s) {
  std::array<std::vector<Node>, kNodeCount> out;
  for (const auto& e : diagramSpec().edges) out[index(e.from)].push_back(e.to);
  if (s.classes) {
    for (const auto& cls : *s.classes) {
      for (Node a : cls) {
        for (Node b : cls) {
          if (a != b) out[index(a)].push_back(b);
        }
      }
    }
  }
  for (auto& succ : out) {
    std::sort(succ.begin(), succ.end(), std::greater<>());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return out;
}

std::string joinNames(const std::vector<Node>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += " -> ";
    out += nodeName(chain[i]);
  }
  return out;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedInput, what);
}

DiagramState stateFromJson(const json& j) {
  if (!j.is_object()) malformed("diagram state must be an object");
  DiagramState s = DiagramState::blank();
  if (j.contains("emptiness")) {
    const auto& e = j.at("emptiness");
    if (!e.is_object()) malformed("emptiness must be an object");
    for (const auto& [key, value] : e.items()) {
      if (!value.is_string()) malformed("emptiness of " + key + " must be a string");
      s[parseNode(key)] = parseEmptiness(value.get<std::string>());
    }
  }
  if (j.contains("classes") && !j.at("classes").is_null()) {
    const auto& c = j.at("classes");
    if (!c.is_array()) malformed("classes must be an array");
    std::vector<std::vector<Node>> classes;
    for (const auto& cls : c) {
      if (!cls.is_array()) malformed("each class must be an array");
      std::vector<Node> members;
      for (const auto& n : cls) {
        if (!n.is_string()) malformed("class members must be node names");
        members.push_back(parseNode(n.get<std::string>()));
      }
      classes.push_back(std::move(members));
    }
    s.classes = std::move(classes);
  }
  if (j.contains("open")) {
    const auto& o = j.at("open");
    if (!o.is_array()) malformed("open must be an array");
    for (const auto& p : o) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        malformed("open pairs must be two node names");
      }
      s.open.emplace_back(parseNode(p[0].get<std::string>()), parseNode(p[1].get<std::string>()));
    }
  }
  if (j.contains("citation")) {
    if (!j.at("citation").is_string()) malformed("citation must be a string");
    s.citation = j.at("citation").get<std::string>();
  }
  return s;
}

json stateToJson(const DiagramState& s) {
  json j;
  json e = json::object();
  for (Node n : kAllNodes) e[std::string(nodeName(n))] = std::string(emptinessName(s[n]));
  j["emptiness"] = std::move(e);
  if (s.classes) {
    json classes = json::array();
    for (const auto& cls : *s.classes) {
      json members = json::array();
      for (Node n : cls) members.push_back(std::string(nodeName(n)));
      classes.push_back(std::move(members));
    }
    j["classes"] = std::move(classes);
  } else {
    j["classes"] = nullptr;
  }
  json open = json::array();
  for (const auto& [a, b] : s.open) {
    open.push_back(json::array({std::string(nodeName(a)), std::string(nodeName(b))}));
  }
  j["open"] = std::move(open);
  j["citation"] = s.citation;
  return j;
}

// Checks one knowledge-base state; `who` names it in error messages.
void checkState(const DiagramState& s, const std::string& who) {
  for (Node n : kAllNodes) {
    if (s[n] == Emptiness::Unknown) malformed(who + ": emptiness of " + std::string(nodeName(n)) + " missing");
  }
  const auto result = propagate(s);
  if (const auto* c = std::get_if<Contradiction>(&result)) {
    malformed(who + ": contradiction at " + std::string(nodeName(c->node)) + ": " + c->reason);
  }
  if (std::get<DiagramState>(result).emptiness != s.emptiness) {
    malformed(who + ": emptiness is not closed under the inclusions");
  }
  if (!isCut(s.nonempty())) malformed(who + ": nonempty nodes do not form a cut");

  if (!s.classes) malformed(who + ": classes missing");
  std::array<int, kNodeCount> classOf{};
  classOf.fill(-1);
  for (std::size_t i = 0; i < s.classes->size(); ++i) {
    const auto& cls = (*s.classes)[i];
    if (cls.empty()) malformed(who + ": empty class");
    for (Node n : cls) {
      if (n == Node::Empty) malformed(who + ": the Empty node is not classified");
      if (classOf[index(n)] != -1) malformed(who + ": " + std::string(nodeName(n)) + " in two classes");
      classOf[index(n)] = static_cast<int>(i);
    }
  }
  int emptyClass = -1;
  for (std::size_t i = 1; i < kNodeCount; ++i) {
    if (classOf[i] == -1) malformed(who + ": " + std::string(nodeName(nodeAt(i))) + " has no class");
    if (s.emptiness[i] != Emptiness::Empty) continue;
    if (emptyClass == -1) emptyClass = classOf[i];
    if (classOf[i] != emptyClass) malformed(who + ": empty nodes split across classes");
  }
  for (std::size_t a = 1; a < kNodeCount; ++a) {
    for (std::size_t b = 1; b < kNodeCount; ++b) {
      if (classOf[a] != classOf[b]) continue;
      if (s.emptiness[a] != s.emptiness[b]) malformed(who + ": class mixes empty and nonempty");
      // A class must be convex: a <= m <= b forces m into it.
      for (std::size_t m = 1; m < kNodeCount; ++m) {
        if (reaches(nodeAt(a), nodeAt(m)) && reaches(nodeAt(m), nodeAt(b)) && classOf[m] != classOf[a]) {
          malformed(who + ": class containing " + std::string(nodeName(nodeAt(a))) + " is not convex");
        }
      }
    }
  }
  for (const auto& [a, b] : s.open) {
    if (a == Node::Empty || b == Node::Empty) malformed(who + ": open pair mentions Empty");
    if (classOf[index(a)] == classOf[index(b)]) malformed(who + ": open pair inside one class");
  }
}

}  // namespace

std::string_view nodeName(Node n) noexcept { return kNames[index(n)]; }
std::string_view nodeLabel(Node n) noexcept { return kLabels[index(n)]; }

Node parseNode(std::string_view name) {
  for (std::size_t i = 0; i < kNodeCount; ++i) {
    if (kNames[i] == name) return nodeAt(i);
  }
  throw Error(ErrorCode::MalformedInput, "unknown node '" + std::string(name) + "'");
}

const DiagramSpec& diagramSpec() {
  static const DiagramSpec spec{
      {kAllNodes.begin(), kAllNodes.end()},
      {{Node::Empty, Node::BIn},
       {Node::BIn, Node::BLeq},
       {Node::BLeq, Node::BNeq},
       {Node::BIn, Node::DNeq},
       {Node::BLeq, Node::DLeq},
       {Node::BNeq, Node::DIn},
       {Node::DNeq, Node::DLeq},
       {Node::DLeq, Node::DIn},
       {Node::DIn, Node::AllNew}}};
  return spec;
}

bool reaches(Node from, Node to) { return reachTable()[index(from)][index(to)]; }

bool isCut(NodeSet nonempty) {
  if (nonempty[index(Node::Empty)]) return false;
  for (std::size_t i = 0; i < kNodeCount; ++i) {
    if (nonempty[i] && (reachTable()[i] & ~nonempty).any()) return false;
  }
  return true;
}

std::string_view emptinessName(Emptiness e) noexcept {
  switch (e) {
    case Emptiness::Empty:
      return "empty";
    case Emptiness::Nonempty:
      return "nonempty";
    case Emptiness::Unknown:
      break;
  }
  return "unknown";
}

Emptiness parseEmptiness(std::string_view name) {
  if (name == "empty") return Emptiness::Empty;
  if (name == "nonempty") return Emptiness::Nonempty;
  if (name == "unknown") return Emptiness::Unknown;
  throw Error(ErrorCode::MalformedInput, "unknown emptiness '" + std::string(name) + "'");
}

DiagramState DiagramState::blank() {
  DiagramState s;
  s.emptiness.fill(Emptiness::Unknown);
  s[Node::Empty] = Emptiness::Empty;
  return s;
}

NodeSet DiagramState::nonempty() const {
  NodeSet out;
  for (std::size_t i = 0; i < kNodeCount; ++i) out[i] = emptiness[i] == Emptiness::Nonempty;
  return out;
}

PropagationResult propagate(const DiagramState& state, std::size_t* iterations) {
  if (state[Node::Empty] == Emptiness::Nonempty) {
    return Contradiction{Node::Empty, {Node::Empty}, "the Empty node cannot be nonempty"};
  }
  const auto succ = implications(state);

  // Multi-source BFS from the nonempty nodes; hitting an empty node is a
  // contradiction and the BFS tree gives the shortest culprit chain.
  std::array<int, kNodeCount> parent{};
  parent.fill(-2);
  std::deque<Node> queue;
  for (Node n : kAllNodes) {
    if (state[n] == Emptiness::Nonempty) {
      parent[index(n)] = -1;
      queue.push_back(n);
    }
  }
  auto emptyInput = [&](Node n) { return n == Node::Empty || state[n] == Emptiness::Empty; };
  while (!queue.empty()) {
    const Node cur = queue.front();
    queue.pop_front();
    if (emptyInput(cur)) {
      std::vector<Node> chain;
      for (int at = static_cast<int>(index(cur)); at != -1; at = parent[static_cast<std::size_t>(at)]) {
        chain.push_back(nodeAt(static_cast<std::size_t>(at)));
      }
      std::reverse(chain.begin(), chain.end());
      std::string reason = std::string(nodeName(chain.front())) + " nonempty forces " +
                           std::string(nodeName(cur)) + " nonempty via " + joinNames(chain) +
                           ", but " + std::string(nodeName(cur)) + " is empty";
      return Contradiction{cur, std::move(chain), std::move(reason)};
    }
    for (Node next : succ[index(cur)]) {
      if (parent[index(next)] != -2) continue;
      parent[index(next)] = static_cast<int>(index(cur));
      queue.push_back(next);
    }
  }

  // No contradiction: close under both rules to a fixpoint.
  DiagramState out = state;
  out[Node::Empty] = Emptiness::Empty;
  std::size_t passes = 0;
  for (bool changed = true; changed;) {
    changed = false;
    ++passes;
    for (std::size_t a = 0; a < kNodeCount; ++a) {
      for (Node b : succ[a]) {
        auto& ea = out.emptiness[a];
        auto& eb = out.emptiness[index(b)];
        if (ea == Emptiness::Nonempty && eb == Emptiness::Unknown) {
          eb = Emptiness::Nonempty;
          changed = true;
        }
        if (eb == Emptiness::Empty && ea == Emptiness::Unknown) {
          ea = Emptiness::Empty;
          changed = true;
        }
      }
    }
  }
  if (iterations) *iterations = passes;
  return out;
}

KnowledgeBase KnowledgeBase::fromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("knowledge base: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc.at("version").is_number_integer()) {
    malformed("knowledge base: integer version required");
  }
  KnowledgeBase kb;
  kb.version_ = doc.at("version").get<int>();
  if (!doc.contains("profiles") || !doc.at("profiles").is_array()) {
    malformed("knowledge base: profiles array required");
  }
  std::set<std::string> names;
  std::set<std::string> cases;
  for (const auto& p : doc.at("profiles")) {
    if (!p.is_object() || !p.contains("name") || !p.at("name").is_string() || !p.contains("case") ||
        !p.at("case").is_string()) {
      malformed("knowledge base: profile needs a name and a case");
    }
    ForcingProfile profile{p.at("name").get<std::string>(), p.at("case").get<std::string>(),
                           stateFromJson(p)};
    if (!names.insert(profile.name).second) malformed("knowledge base: duplicate forcing " + profile.name);
    if (!cases.insert(profile.caseLabel).second) malformed("knowledge base: duplicate case " + profile.caseLabel);
    checkState(profile.state, profile.name);
    kb.profiles_.push_back(std::move(profile));
  }
  if (doc.contains("products")) {
    if (!doc.at("products").is_array()) malformed("knowledge base: products must be an array");
    for (const auto& p : doc.at("products")) {
      if (!p.is_object() || !p.contains("factors") || !p.at("factors").is_array()) {
        malformed("knowledge base: product needs factors");
      }
      ProductEntry entry;
      for (const auto& f : p.at("factors")) {
        if (!f.is_string()) malformed("knowledge base: factor names must be strings");
        entry.factors.push_back(f.get<std::string>());
        if (!names.contains(entry.factors.back())) {
          malformed("knowledge base: unknown factor " + entry.factors.back());
        }
      }
      entry.state = stateFromJson(p);
      checkState(entry.state, "product");
      kb.products_.push_back(std::move(entry));
    }
  }
  return kb;
}

const KnowledgeBase& KnowledgeBase::builtin() {
  static const KnowledgeBase kb = fromJson(kForcingKbJson);
  return kb;
}

const ForcingProfile& KnowledgeBase::lookup(std::string_view name) const {
  for (const auto& p : profiles_) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::UnknownForcing, "no profile for '" + std::string(name) + "'");
}

const ProductEntry* KnowledgeBase::product(std::vector<std::string> factors) const {
  std::sort(factors.begin(), factors.end());
  for (const auto& entry : products_) {
    auto recorded = entry.factors;
    std::sort(recorded.begin(), recorded.end());
    if (recorded == factors) return &entry;
  }
  return nullptr;
}

std::vector<NodeSet> upwardClosedSets() {
  std::set<unsigned long> seen;
  std::vector<NodeSet> out;
  // Subsets of the seven non-Empty nodes, kept when they are antichains.
  for (unsigned mask = 0; mask < (1u << (kNodeCount - 1)); ++mask) {
    NodeSet generators(static_cast<unsigned long>(mask) << 1);
    bool antichain = true;
    for (std::size_t a = 1; a < kNodeCount && antichain; ++a) {
      for (std::size_t b = 1; b < kNodeCount; ++b) {
        if (a != b && generators[a] && generators[b] && reachTable()[a][b]) {
          antichain = false;
          break;
        }
      }
    }
    if (!antichain) continue;
    NodeSet up;
    for (std::size_t a = 1; a < kNodeCount; ++a) {
      if (generators[a]) up |= reachTable()[a];
    }
    if (seen.insert(up.to_ulong()).second) out.push_back(up);
  }
  std::sort(out.begin(), out.end(), [](NodeSet x, NodeSet y) {
    if (x.count() != y.count()) return x.count() > y.count();
    return x.to_ulong() < y.to_ulong();
  });
  return out;
}

std::vector<Cut> enumerateCuts(const KnowledgeBase& kb) {
  std::vector<Cut> out;
  for (NodeSet up : upwardClosedSets()) {
    Cut cut{up, std::nullopt, std::nullopt};
    for (const auto& p : kb.profiles()) {
      if (p.state.nonempty() == up) {
        cut.caseLabel = p.caseLabel;
        cut.forcing = p.name;
        break;
      }
    }
    out.push_back(std::move(cut));
  }
  std::stable_sort(out.begin(), out.end(), [](const Cut& x, const Cut& y) {
    if (x.caseLabel.has_value() != y.caseLabel.has_value()) return x.caseLabel.has_value();
    return x.caseLabel < y.caseLabel;
  });
  return out;
}

DiagramState composeProfiles(const std::vector<std::string>& names, const KnowledgeBase& kb) {
  if (names.empty()) throw Error(ErrorCode::UnknownForcing, "no forcing named");
  std::vector<const ForcingProfile*> factors;
  for (const auto& n : names) factors.push_back(&kb.lookup(n));
  if (factors.size() == 1) return factors.front()->state;
  if (const auto* entry = kb.product(names)) return entry->state;

  DiagramState out = DiagramState::blank();
  for (std::size_t i = 1; i < kNodeCount; ++i) {
    bool anyNonempty = false;
    bool allEmpty = true;
    for (const auto* f : factors) {
      anyNonempty = anyNonempty || f->state.emptiness[i] == Emptiness::Nonempty;
      allEmpty = allEmpty && f->state.emptiness[i] == Emptiness::Empty;
    }
    out.emptiness[i] = anyNonempty ? Emptiness::Nonempty : allEmpty ? Emptiness::Empty : Emptiness::Unknown;
  }
  out.citation = "composition of";
  for (std::size_t i = 0; i < names.size(); ++i) out.citation += (i ? ", " : " ") + names[i];
  return out;
}

std::string emitDot(const DiagramState& state) {
  std::ostringstream os;
  os << "digraph cichon {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Node n : kAllNodes) {
    os << "  " << nodeName(n) << " [label=\"" << nodeLabel(n) << "\"";
    switch (state[n]) {
      case Emptiness::Empty:
        os << ", style=filled, fillcolor=gray80";
        break;
      case Emptiness::Unknown:
        os << ", style=dashed";
        break;
      case Emptiness::Nonempty:
        break;
    }
    os << "];\n";
  }
  for (const auto& e : diagramSpec().edges) {
    os << "  " << nodeName(e.from) << " -> " << nodeName(e.to) << ";\n";
  }
  if (state.classes) {
    std::size_t i = 0;
    for (const auto& cls : *state.classes) {
      if (cls.size() < 2) continue;
      os << "  subgraph cluster_" << i++ << " {\n    rank=same;\n    style=rounded;\n";
      for (Node n : cls) os << "    " << nodeName(n) << ";\n";
      os << "  }\n";
    }
  }
  std::string label = state.citation;
  if (!state.open.empty()) {
    label += label.empty() ? "open:" : "\\nopen:";
    for (std::size_t i = 0; i < state.open.size(); ++i) {
      label += std::string(i ? "," : "") + " " + std::string(nodeName(state.open[i].first)) + " = " +
               std::string(nodeName(state.open[i].second)) + "?";
    }
  }
  if (!label.empty()) {
    std::string escaped;
    for (char c : label) {
      if (c == '"') escaped += '\\';
      escaped += c;
    }
    os << "  label=\"" << escaped << "\";\n";
  }
  os << "}\n";
  return os.str();
}

std::string emitJson(const DiagramState& state) { return stateToJson(state).dump(2); }

DiagramState parseState(std::string_view text) {
  try {
    return stateFromJson(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("diagram state: ") + e.what());
  }
}

}  // namespace cichon
