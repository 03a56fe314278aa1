#pragma once

// Finite-horizon surrogates for Baire-space reals and slaloms, and the three
// tail relations (<=*, !=*, in*) evaluated with explicit least witnesses.
//
// Every tail quantifier "for all but finitely many l" is replaced by "for all
// l in [k, N)" where N is the shared horizon. k = N is always admissible, so
// thresholds exist for every input; a threshold equal to the horizon is
// flagged as vacuous.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <set>
#include <variant>
#include <vector>

namespace cichon {

using Nat = std::uint64_t;
using NatSet = std::set<Nat>;

/// Prefix of an element of Baire space.
struct FinFunc {
  std::vector<Nat> values;

  FinFunc() = default;
  explicit FinFunc(std::vector<Nat> v) : values(std::move(v)) {}
  FinFunc(std::initializer_list<Nat> v) : values(v) {}

  std::size_t horizon() const noexcept { return values.size(); }
  Nat operator[](std::size_t n) const { return values[n]; }
  Nat& operator[](std::size_t n) { return values[n]; }

  /// Restriction to positions [from, horizon).
  FinFunc tail(std::size_t from) const;
  /// Pointwise successor n -> f(n) + 1.
  FinFunc successor() const;

  static FinFunc constant(std::size_t horizon, Nat value);

  friend bool operator==(const FinFunc&, const FinFunc&) = default;
  friend auto operator<=>(const FinFunc&, const FinFunc&) = default;
};

/// Width bound h for an h-slalom. Monotonicity is not required.
struct WidthProfile {
  std::vector<Nat> widths;

  WidthProfile() = default;
  explicit WidthProfile(std::vector<Nat> w) : widths(std::move(w)) {}
  WidthProfile(std::initializer_list<Nat> w) : widths(w) {}

  std::size_t horizon() const noexcept { return widths.size(); }
  Nat operator[](std::size_t n) const { return widths[n]; }

  /// h(n) = n.
  static WidthProfile identity(std::size_t horizon);
  static WidthProfile constant(std::size_t horizon, Nat width);

  friend bool operator==(const WidthProfile&, const WidthProfile&) = default;
};

/// A finite-horizon h-slalom: |cells[n]| <= width[n] for every n.
class Slalom {
 public:
  Slalom() = default;
  /// Throws ShapeMismatch if the lengths differ and WidthExceeded if a cell
  /// is wider than its bound.
  Slalom(std::vector<NatSet> cells, WidthProfile width);

  /// Slalom with identity width; cells[0] must be empty.
  static Slalom withIdentityWidth(std::vector<NatSet> cells);

  std::size_t horizon() const noexcept { return cells_.size(); }
  const NatSet& operator[](std::size_t n) const { return cells_[n]; }
  const std::vector<NatSet>& cells() const noexcept { return cells_; }
  const WidthProfile& width() const noexcept { return width_; }

  friend bool operator==(const Slalom&, const Slalom&) = default;

 private:
  std::vector<NatSet> cells_;
  WidthProfile width_;
};

/// Finite stand-in for the ground-model reals. Members may repeat.
class Family {
 public:
  Family() = default;
  explicit Family(std::size_t horizon) : horizon_(horizon) {}
  /// Throws HorizonMismatch when a member's horizon differs from `horizon`.
  Family(std::size_t horizon, std::vector<FinFunc> members);
  /// Horizon taken from the first member; the list must be nonempty.
  static Family of(std::vector<FinFunc> members);

  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const FinFunc& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<FinFunc>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  void add(FinFunc f);
  /// Pointwise sum over all members (multiplicity counts); 0 when empty.
  FinFunc pointwiseSum() const;
  /// Multiset inclusion: every member of `other` occurs at least as often here.
  bool includes(const Family& other) const;
  /// Restriction of every member to [0, horizon).
  Family truncated(std::size_t horizon) const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  std::size_t horizon_ = 0;
  std::vector<FinFunc> members_;
};

enum class Relation { Leq, Neq, In, Eq };

struct ThresholdReport {
  std::size_t threshold = 0;
  bool vacuous = false;

  friend bool operator==(const ThresholdReport&, const ThresholdReport&) = default;
};

/// Least k such that f(l) <= g(l) (Leq) or f(l) != g(l) (Neq) for all l in
/// [k, N). Other relations throw KindMismatch.
ThresholdReport leastThreshold(Relation rel, const FinFunc& f, const FinFunc& g);
/// Least k such that f(l) is in sigma(l) for all l in [k, N).
ThresholdReport leastThreshold(const FinFunc& f, const Slalom& sigma);

/// Number of positions where f and g agree.
std::size_t hitCount(const FinFunc& f, const FinFunc& g);
/// Number of positions l with f(l) in sigma(l).
std::size_t hitCount(const FinFunc& f, const Slalom& sigma);

enum class ReportMode { Bounding, Evading };

using Witness = std::variant<FinFunc, Slalom>;

inline constexpr std::size_t kUnboundedHits = std::numeric_limits<std::size_t>::max();

struct RelationReport {
  Relation relation = Relation::Leq;
  ReportMode mode = ReportMode::Bounding;
  std::vector<ThresholdReport> thresholds;  // bounding mode
  std::vector<std::size_t> hits;            // evading mode
  std::size_t maxThreshold = 0;
  std::size_t minHits = kUnboundedHits;
};

/// Checks a witness against every member of a family.
///
/// Bounding mode reports, per member z, the least threshold of z R witness:
/// Leq and Neq take a FinFunc witness, In takes a Slalom witness.
///
/// Evading mode reports, per member z, how often the witness y escapes z:
/// Eq/Neq count positions with y(l) = z(l) (infinitely-often-equal),
/// Leq counts positions with y(l) > z(l) (unbounded). In has no evading
/// form over a family of functions and throws KindMismatch.
RelationReport familyReport(Relation rel, const Witness& witness, const Family& family,
                            ReportMode mode);

}  // namespace cichon
