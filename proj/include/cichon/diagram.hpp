#pragma once

// The eight-node inclusion diagram, its upward-closed cuts, emptiness
// propagation along the inclusions, and the knowledge base of forcing
// profiles.

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cichon {

enum class Node : std::uint8_t { Empty, BIn, BLeq, BNeq, DNeq, DLeq, DIn, AllNew };

inline constexpr std::size_t kNodeCount = 8;
inline constexpr std::array<Node, kNodeCount> kAllNodes{Node::Empty, Node::BIn,  Node::BLeq,
                                                        Node::BNeq,  Node::DNeq, Node::DLeq,
                                                        Node::DIn,   Node::AllNew};

constexpr std::size_t index(Node n) noexcept { return static_cast<std::size_t>(n); }

std::string_view nodeName(Node n) noexcept;
/// Math label used in DOT output.
std::string_view nodeLabel(Node n) noexcept;
/// Throws MalformedInput.
Node parseNode(std::string_view name);

using NodeSet = std::bitset<kNodeCount>;

struct Edge {
  Node from;
  Node to;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct DiagramSpec {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

/// The 8 nodes and the 9 inclusion arrows.
const DiagramSpec& diagramSpec();

/// Reflexive-transitive reachability along the arrows.
bool reaches(Node from, Node to);

/// Upward closed under reachability and never containing Empty.
bool isCut(NodeSet nonempty);

enum class Emptiness { Empty, Nonempty, Unknown };

std::string_view emptinessName(Emptiness e) noexcept;
Emptiness parseEmptiness(std::string_view name);

struct DiagramState {
  std::array<Emptiness, kNodeCount> emptiness{};
  /// Equality classes partitioning the seven non-Empty nodes.
  std::optional<std::vector<std::vector<Node>>> classes;
  /// Pairs of nodes (in different classes) whose equality is undetermined.
  /// Classes not linked by an open pair are asserted distinct.
  std::vector<std::pair<Node, Node>> open;
  std::string citation;

  /// Empty node empty, everything else unknown, no classes.
  static DiagramState blank();

  Emptiness operator[](Node n) const { return emptiness[index(n)]; }
  Emptiness& operator[](Node n) { return emptiness[index(n)]; }
  NodeSet nonempty() const;

  friend bool operator==(const DiagramState&, const DiagramState&) = default;
};

struct Contradiction {
  Node node;
  /// Inclusion chain from a node forced nonempty to one forced empty, or the
  /// two members of an equality class that disagree.
  std::vector<Node> chain;
  std::string reason;
};

using PropagationResult = std::variant<DiagramState, Contradiction>;

/// Closes the state under: A -> B with A nonempty makes B nonempty, A -> B
/// with B empty makes A empty, and members of one class share emptiness.
PropagationResult propagate(const DiagramState& state, std::size_t* iterations = nullptr);

struct ForcingProfile {
  std::string name;
  std::string caseLabel;
  DiagramState state;
};

struct ProductEntry {
  std::vector<std::string> factors;
  DiagramState state;
};

class KnowledgeBase {
 public:
  /// Parses and checks a knowledge-base document: every state must
  /// propagate to itself without contradiction, have a cut as its nonempty
  /// set, and carry classes consistent with its emptiness.
  /// Throws MalformedInput.
  static KnowledgeBase fromJson(std::string_view text);
  /// The knowledge base compiled into the library.
  static const KnowledgeBase& builtin();

  int version() const noexcept { return version_; }
  const std::vector<ForcingProfile>& profiles() const noexcept { return profiles_; }
  const std::vector<ProductEntry>& products() const noexcept { return products_; }

  /// Throws UnknownForcing.
  const ForcingProfile& lookup(std::string_view name) const;
  /// Recorded entry whose factor multiset equals `factors`.
  const ProductEntry* product(std::vector<std::string> factors) const;

 private:
  int version_ = 0;
  std::vector<ForcingProfile> profiles_;
  std::vector<ProductEntry> products_;
};

struct Cut {
  NodeSet nonempty;
  std::optional<std::string> caseLabel;
  std::optional<std::string> forcing;
};

/// Up-sets generated by the antichains of the non-Empty nodes.
std::vector<NodeSet> upwardClosedSets();

/// Every cut, paired with the profile that realizes it, ordered by case label.
std::vector<Cut> enumerateCuts(const KnowledgeBase& kb = KnowledgeBase::builtin());

/// Recorded product entry if one matches; otherwise the per-node join
/// (nonempty if nonempty in some factor, empty if empty in all) without
/// class information. Throws UnknownForcing.
DiagramState composeProfiles(const std::vector<std::string>& names,
                             const KnowledgeBase& kb = KnowledgeBase::builtin());

std::string emitDot(const DiagramState& state);
std::string emitJson(const DiagramState& state);
/// Inverse of emitJson. Throws MalformedInput.
DiagramState parseState(std::string_view json);

}  // namespace cichon
