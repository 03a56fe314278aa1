#include "cichon/posets.hpp"

#include <algorithm>
#include <map>

#include "cichon/error.hpp"

namespace cichon {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

std::string show(const TreeNode& node) {
  std::string out = "<";
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(node[i]);
  }
  return out + ">";
}

bool extends(const std::vector<Nat>& longer, const std::vector<Nat>& shorter) {
  return longer.size() >= shorter.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

bool extends(const std::vector<NatSet>& longer, const std::vector<NatSet>& shorter) {
  return longer.size() >= shorter.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

void validateTree(const FiniteTree& t, const std::string& prefix, std::vector<Violation>& out) {
  auto add = [&](std::string clause, std::string detail) {
    out.push_back({prefix + clause, std::move(detail)});
  };
  if (!t.nodes.contains(TreeNode{})) {
    add("root ∈ T", "the empty sequence is missing");
    return;
  }
  for (const auto& node : t.nodes) {
    if (!node.empty() && !t.nodes.contains(TreeNode(node.begin(), node.end() - 1))) {
      add("prefix-closed", "parent of " + show(node) + " is missing");
    }
  }
  const Nat alphabet = t.kind == TreeKind::Sacks ? 2 : t.budget;
  for (const auto& node : t.nodes) {
    for (auto letter : node) {
      if (letter >= alphabet) {
        add(t.kind == TreeKind::Sacks ? "alphabet {0,1}" : "branching < budget",
            "node " + show(node) + " uses letter " + std::to_string(letter));
        break;
      }
    }
  }
  if (t.kind == TreeKind::Laver && t.budget < 1) add("budget ≥ 1", "branching budget is 0");

  const auto depth = t.workingDepth();
  const bool needsSplitting = t.kind == TreeKind::Sacks || t.miller;
  // A node reaches a split iff it splits or one of its children reaches one.
  std::map<TreeNode, bool> reachesSplit;
  for (auto it = t.nodes.rbegin(); it != t.nodes.rend(); ++it) {
    const auto kids = t.children(*it);
    bool reaches = kids.size() >= 2;
    for (const auto& kid : kids) reaches = reaches || reachesSplit[kid];
    reachesSplit[*it] = reaches;
  }
  for (const auto& node : t.nodes) {
    if (node.size() >= depth) continue;
    const auto kids = t.children(node);
    if (kids.empty()) continue;  // leaves are exempt
    if (needsSplitting && !reachesSplit[node]) {
      add("splitting descendant", "node " + show(node) + " has no splitting descendant");
    }
  }
  if (t.kind == TreeKind::Laver) {
    const auto stem = t.stem();
    for (const auto& node : t.nodes) {
      if (node.size() >= depth || node.size() < stem.size()) continue;
      if (t.children(node).empty()) {
        add("branching above the stem", "node " + show(node) + " has no child below depth " +
                                            str(depth));
      }
    }
  }
}

void requireKind(PosetKind kind, const Condition& c) {
  if (kindOf(c) != kind) {
    throw Error(ErrorCode::KindMismatch,
                "expected a " + kindName(kind) + " condition, got " + kindName(kindOf(c)));
  }
}

void requireValid(const Condition& c) {
  const auto violations = validate(c);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidCondition,
                violations.front().clause + " (" + violations.front().detail + ")");
  }
}

void requireSameHorizon(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::HorizonMismatch,
                "working horizons " + str(a) + " and " + str(b) + " differ");
  }
}

std::optional<std::string> treeLeq(const FiniteTree& q, const FiniteTree& p) {
  for (const auto& node : q.nodes) {
    if (!p.nodes.contains(node)) return "q ⊆ p fails at " + show(node);
  }
  return std::nullopt;
}

std::optional<std::string> sacksFusion(const FiniteTree& q, const FiniteTree& p, std::size_t n) {
  if (auto v = treeLeq(q, p)) return v;
  for (std::size_t m = 0; m <= n; ++m) {
    const auto inP = splittingNodes(p, m);
    for (const auto& node : splittingNodes(q, m)) {
      if (!std::binary_search(inP.begin(), inP.end(), node)) {
        return "splitting node " + show(node) + " of level " + str(m) + " in q is not of level " +
               str(m) + " in p";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> laverFusion(const FiniteTree& q, const FiniteTree& p, std::size_t n) {
  if (auto v = treeLeq(q, p)) return v;
  auto eq = canonicalEnum(q);
  auto ep = canonicalEnum(p);
  const auto keep = n + 1;
  if (eq.size() > keep) eq.resize(keep);
  if (ep.size() > keep) ep.resize(keep);
  if (eq != ep) return "first " + str(keep) + " canonical nodes above the stem differ";
  return std::nullopt;
}

}  // namespace

std::size_t FiniteTree::height() const {
  std::size_t h = 0;
  for (const auto& node : nodes) h = std::max(h, node.size());
  return h;
}

std::vector<TreeNode> FiniteTree::children(const TreeNode& node) const {
  std::vector<TreeNode> out;
  auto probe = node;
  probe.push_back(0);
  for (auto it = nodes.lower_bound(probe); it != nodes.end(); ++it) {
    if (it->size() <= node.size() || !extends(*it, node)) break;
    if (it->size() == node.size() + 1) out.push_back(*it);
  }
  return out;
}

TreeNode FiniteTree::stem() const {
  TreeNode node;
  if (!nodes.contains(node)) return node;
  for (;;) {
    auto kids = children(node);
    if (kids.size() != 1) return node;
    node = std::move(kids.front());
  }
}

FiniteTree FiniteTree::fullBinary(std::size_t height) {
  FiniteTree t;
  t.kind = TreeKind::Sacks;
  std::vector<TreeNode> frontier{TreeNode{}};
  for (std::size_t len = 0; len <= height; ++len) {
    std::vector<TreeNode> next;
    for (auto& node : frontier) {
      t.nodes.insert(node);
      if (len == height) continue;
      for (Nat bit : {Nat{0}, Nat{1}}) {
        auto kid = node;
        kid.push_back(bit);
        next.push_back(std::move(kid));
      }
    }
    frontier = std::move(next);
  }
  return t;
}

PosetKind kindOf(const Condition& c) {
  struct Visitor {
    PosetKind operator()(const CohenCond&) const { return PosetKind::Cohen; }
    PosetKind operator()(const HechlerCond&) const { return PosetKind::Hechler; }
    PosetKind operator()(const ECond&) const { return PosetKind::E; }
    PosetKind operator()(const LocCond&) const { return PosetKind::Loc; }
    PosetKind operator()(const FiniteTree& t) const {
      return t.kind == TreeKind::Sacks ? PosetKind::Sacks : PosetKind::Laver;
    }
    PosetKind operator()(const ProductCond&) const { return PosetKind::Product; }
  };
  return std::visit(Visitor{}, c);
}

std::string kindName(PosetKind kind) {
  switch (kind) {
    case PosetKind::Cohen: return "cohen";
    case PosetKind::Hechler: return "hechler";
    case PosetKind::E: return "e";
    case PosetKind::Loc: return "loc";
    case PosetKind::Sacks: return "sacks";
    case PosetKind::Laver: return "laver";
    case PosetKind::Product: return "product";
  }
  return "unknown";
}

PosetKind parseKind(const std::string& name) {
  for (auto kind : {PosetKind::Cohen, PosetKind::Hechler, PosetKind::E, PosetKind::Loc,
                    PosetKind::Sacks, PosetKind::Laver, PosetKind::Product}) {
    if (kindName(kind) == name) return kind;
  }
  throw Error(ErrorCode::MalformedInput, "unknown poset kind \"" + name + "\"");
}

std::vector<Violation> validate(const Condition& c) {
  std::vector<Violation> out;
  if (const auto* h = std::get_if<HechlerCond>(&c)) {
    if (h->stem.horizon() > h->side.horizon()) {
      out.push_back({"stem.horizon ≤ side.horizon",
                     str(h->stem.horizon()) + " > " + str(h->side.horizon())});
    }
  } else if (const auto* e = std::get_if<ECond>(&c)) {
    if (e->stem.horizon() > e->side.horizon()) {
      out.push_back({"stem.horizon ≤ side.horizon",
                     str(e->stem.horizon()) + " > " + str(e->side.horizon())});
    }
  } else if (const auto* loc = std::get_if<LocCond>(&c)) {
    for (std::size_t n = 0; n < loc->prefix.size(); ++n) {
      if (loc->prefix[n].size() > n) {
        out.push_back({"|s(n)| ≤ n at n=" + str(n),
                       "|s(" + str(n) + ")| = " + str(loc->prefix[n].size())});
      }
    }
    if (loc->side.size() > loc->length()) {
      out.push_back({"|ℱ| ≤ |s|", str(loc->side.size()) + " > " + str(loc->length())});
    }
    if (loc->length() > loc->side.horizon()) {
      out.push_back({"|s| ≤ side.horizon", str(loc->length()) + " > " + str(loc->side.horizon())});
    }
  } else if (const auto* t = std::get_if<FiniteTree>(&c)) {
    validateTree(*t, "", out);
  } else if (const auto* prod = std::get_if<ProductCond>(&c)) {
    if (prod->sacksPart.kind != TreeKind::Sacks) {
      out.push_back({"sacks part: kind", "first factor is not a sacks tree"});
    }
    if (prod->laverPart.kind != TreeKind::Laver) {
      out.push_back({"laver part: kind", "second factor is not a laver tree"});
    }
    validateTree(prod->sacksPart, "sacks part: ", out);
    validateTree(prod->laverPart, "laver part: ", out);
  }
  return out;
}

std::optional<std::string> leqViolation(PosetKind kind, const Condition& a, const Condition& b) {
  requireKind(kind, a);
  requireKind(kind, b);
  requireValid(a);
  requireValid(b);

  switch (kind) {
    case PosetKind::Cohen: {
      const auto& q = std::get<CohenCond>(a);
      const auto& p = std::get<CohenCond>(b);
      if (!extends(q.stem.values, p.stem.values)) return "q extends p";
      return std::nullopt;
    }
    case PosetKind::Hechler: {
      const auto& q = std::get<HechlerCond>(a);
      const auto& p = std::get<HechlerCond>(b);
      requireSameHorizon(q.side.horizon(), p.side.horizon());
      if (!extends(q.stem.values, p.stem.values)) return "q extends p";
      for (std::size_t n = p.stem.horizon(); n < q.stem.horizon(); ++n) {
        if (q.stem[n] < p.side[n]) return "q(n) ≥ f(n) at n=" + str(n);
      }
      for (std::size_t n = 0; n < p.side.horizon(); ++n) {
        if (q.side[n] < p.side[n]) return "g(n) ≥ f(n) at n=" + str(n);
      }
      return std::nullopt;
    }
    case PosetKind::E: {
      const auto& q = std::get<ECond>(a);
      const auto& p = std::get<ECond>(b);
      requireSameHorizon(q.side.horizon(), p.side.horizon());
      if (!extends(q.stem.values, p.stem.values)) return "q extends p";
      if (!q.side.includes(p.side)) return "𝒢 ⊇ ℱ";
      for (std::size_t n = p.stem.horizon(); n < q.stem.horizon(); ++n) {
        for (const auto& f : p.side) {
          if (q.stem[n] == f[n]) return "q(n) ≠ f(n) at n=" + str(n);
        }
      }
      return std::nullopt;
    }
    case PosetKind::Loc: {
      const auto& q = std::get<LocCond>(a);
      const auto& p = std::get<LocCond>(b);
      requireSameHorizon(q.side.horizon(), p.side.horizon());
      if (!extends(q.prefix, p.prefix)) return "t ⊇ s";
      if (!q.side.includes(p.side)) return "𝒢 ⊇ ℱ";
      for (std::size_t n = p.length(); n < q.length(); ++n) {
        for (const auto& f : p.side) {
          if (!q.prefix[n].contains(f[n])) return "f(n) ∈ t(n) at n=" + str(n);
        }
      }
      return std::nullopt;
    }
    case PosetKind::Sacks:
    case PosetKind::Laver:
      return treeLeq(std::get<FiniteTree>(a), std::get<FiniteTree>(b));
    case PosetKind::Product: {
      const auto& q = std::get<ProductCond>(a);
      const auto& p = std::get<ProductCond>(b);
      if (auto v = treeLeq(q.sacksPart, p.sacksPart)) return "sacks part: " + *v;
      if (auto v = treeLeq(q.laverPart, p.laverPart)) return "laver part: " + *v;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool leq(PosetKind kind, const Condition& a, const Condition& b) {
  return !leqViolation(kind, a, b).has_value();
}

std::vector<TreeNode> splittingNodes(const FiniteTree& t, std::size_t n) {
  if (t.kind != TreeKind::Sacks) {
    throw Error(ErrorCode::KindMismatch, "splitting levels are defined for sacks trees");
  }
  requireValid(Condition{t});
  std::vector<TreeNode> out;
  for (const auto& node : t.nodes) {
    if (!t.splits(node)) continue;
    std::size_t below = 0;
    for (std::size_t len = 0; len < node.size(); ++len) {
      below += t.splits(TreeNode(node.begin(), node.begin() + static_cast<std::ptrdiff_t>(len)))
                   ? 1
                   : 0;
    }
    if (below == n) out.push_back(node);
  }
  return out;
}

std::vector<TreeNode> canonicalEnum(const FiniteTree& t) {
  if (t.kind != TreeKind::Laver) {
    throw Error(ErrorCode::KindMismatch, "canonical enumeration is defined for laver trees");
  }
  requireValid(Condition{t});
  const auto stemLength = t.stem().size();
  std::vector<TreeNode> out;
  for (const auto& node : t.nodes) {
    if (node.size() > stemLength) out.push_back(node);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TreeNode& x, const TreeNode& y) { return x.size() < y.size(); });
  return out;
}

std::optional<std::string> fusionViolation(PosetKind kind, const Condition& a, const Condition& b,
                                           std::size_t n) {
  if (kind != PosetKind::Sacks && kind != PosetKind::Laver && kind != PosetKind::Product) {
    throw Error(ErrorCode::KindMismatch, "fusion orders exist for sacks, laver and product");
  }
  requireKind(kind, a);
  requireKind(kind, b);
  requireValid(a);
  requireValid(b);
  if (kind == PosetKind::Sacks) return sacksFusion(std::get<FiniteTree>(a), std::get<FiniteTree>(b), n);
  if (kind == PosetKind::Laver) return laverFusion(std::get<FiniteTree>(a), std::get<FiniteTree>(b), n);
  const auto& q = std::get<ProductCond>(a);
  const auto& p = std::get<ProductCond>(b);
  if (auto v = sacksFusion(q.sacksPart, p.sacksPart, n)) return "sacks part: " + *v;
  if (auto v = laverFusion(q.laverPart, p.laverPart, n)) return "laver part: " + *v;
  return std::nullopt;
}

bool fusionLeq(PosetKind kind, const Condition& a, const Condition& b, std::size_t n) {
  return !fusionViolation(kind, a, b, n).has_value();
}

}  // namespace cichon
