#pragma once

// Forcing conditions at finite scale: Cohen stems, simplified Hechler pairs,
// eventually-different pairs, localization pairs, and finite Sacks / Laver
// (Miller) trees together with their orders and fusion orders.
//
// Side families are total functions up to a shared working horizon; two
// conditions can only be compared when their working horizons agree.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cichon/combinatorics.hpp"

namespace cichon {

struct CohenCond {
  FinFunc stem;
  friend bool operator==(const CohenCond&, const CohenCond&) = default;
};

/// Single-side-function Hechler condition. (q, g) <= (p, f) iff q extends p,
/// q(n) >= f(n) on the new positions, and g >= f everywhere.
struct HechlerCond {
  FinFunc stem;
  FinFunc side;
  friend bool operator==(const HechlerCond&, const HechlerCond&) = default;
};

/// Eventually-different condition: new stem values must differ from every
/// side function of the weaker condition.
struct ECond {
  FinFunc stem;
  Family side;
  friend bool operator==(const ECond&, const ECond&) = default;
};

/// Localization condition (s, F) with |s(n)| <= n and |F| <= |s|.
/// `prefix` holds the raw cells so that invalid conditions stay representable.
struct LocCond {
  std::vector<NatSet> prefix;
  Family side;

  std::size_t length() const noexcept { return prefix.size(); }
  friend bool operator==(const LocCond&, const LocCond&) = default;
};

using TreeNode = std::vector<Nat>;

enum class TreeKind { Sacks, Laver };

/// A finite tree given by its node set. Sacks trees live in 2^{<omega};
/// Laver trees branch below `budget` and, with `miller` set, are read as
/// rational perfect trees (every node must reach a splitting node).
/// `depth` is the working depth up to which perfectness/branching is checked;
/// nullopt means the height of the tree.
struct FiniteTree {
  TreeKind kind = TreeKind::Sacks;
  std::set<TreeNode> nodes;
  Nat budget = 2;
  bool miller = false;
  std::optional<std::size_t> depth;

  std::size_t height() const;
  std::size_t workingDepth() const { return depth.value_or(height()); }
  /// Children of `node` present in the tree, in increasing order.
  std::vector<TreeNode> children(const TreeNode& node) const;
  bool splits(const TreeNode& node) const { return children(node).size() >= 2; }
  /// Longest node comparable with every node.
  TreeNode stem() const;

  /// All binary sequences of length <= height.
  static FiniteTree fullBinary(std::size_t height);

  friend bool operator==(const FiniteTree&, const FiniteTree&) = default;
};

struct ProductCond {
  FiniteTree sacksPart;
  FiniteTree laverPart;
  friend bool operator==(const ProductCond&, const ProductCond&) = default;
};

using Condition = std::variant<CohenCond, HechlerCond, ECond, LocCond, FiniteTree, ProductCond>;

enum class PosetKind { Cohen, Hechler, E, Loc, Sacks, Laver, Product };

PosetKind kindOf(const Condition& c);
std::string kindName(PosetKind kind);
/// Throws MalformedInput for unknown names.
PosetKind parseKind(const std::string& name);

struct Violation {
  std::string clause;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff every invariant of the condition's type holds.
std::vector<Violation> validate(const Condition& c);

/// First order clause that fails for a <= b, or nullopt when a <= b holds.
/// Throws KindMismatch, InvalidCondition or HorizonMismatch.
std::optional<std::string> leqViolation(PosetKind kind, const Condition& a, const Condition& b);
bool leq(PosetKind kind, const Condition& a, const Condition& b);

/// Splitting nodes of a Sacks tree with exactly n splitting proper predecessors.
std::vector<TreeNode> splittingNodes(const FiniteTree& t, std::size_t n);

/// Nodes strictly above the stem, shortest first, then lexicographically.
std::vector<TreeNode> canonicalEnum(const FiniteTree& t);

/// Sacks: q <= p and, for every m <= n, every m-th splitting node of q is an
/// m-th splitting node of p. Laver: q <= p and the first n + 1 nodes of the
/// canonical enumerations agree. Product: componentwise.
std::optional<std::string> fusionViolation(PosetKind kind, const Condition& a, const Condition& b,
                                           std::size_t n);
bool fusionLeq(PosetKind kind, const Condition& a, const Condition& b, std::size_t n);

}  // namespace cichon
