#pragma once

// Constructive cores of the diagram inclusions and of the separating
// diagonalizations: dominators and evaders built from slaloms, round-robin
// infinitely-often-equal functions, capturing slaloms, the block-partition
// recoding between h-slaloms and identity slaloms, and the binary-string
// recoding used to escape slaloms.
//
// Conventions: max(empty) = 0 and sum(empty) = 0. Partition cells inside a
// block are indexed k = 1..h(n).

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cichon/combinatorics.hpp"

namespace cichon {

/// z(n) = max sigma(n) + 1.
FinFunc slalomDominator(const Slalom& sigma);
/// z(n) = 1 + sum sigma(n). Any f with f(n) >= z(n) avoids sigma(n).
FinFunc sumEvaderBound(const Slalom& sigma);
/// d(n) = 1 + max over members of f(n); every member is <= d everywhere.
FinFunc familyDominator(const Family& family);
/// g(n) = f_{n mod |F|}(n). Throws EmptyFamily.
FinFunc roundRobinIOE(const Family& family);
/// The 1-slalom n -> {g(n)}.
Slalom singletonSlalom(const FinFunc& g);

struct CapturingSlalom {
  Slalom slalom;
  /// leastThreshold(in, f_i, slalom) for every member, in family order.
  std::vector<std::size_t> thresholds;
};

/// Identity-width slalom with cells(n) = {f_i(n) : i < min(n, |F|)}.
/// Member i is captured from position i + 1 on.
CapturingSlalom familySlalom(const Family& family);

using Position = std::size_t;
using PartialFunc = std::map<Position, Nat>;

/// Disjoint nonempty position sets J_{n,k}, n < blockCount, k = 1..h(n),
/// covering [0, coveredHorizon).
class BlockPartition {
 public:
  using Cell = std::vector<Position>;

  BlockPartition() = default;
  /// Validates the disjoint-cover and cell-count invariants; throws ZeroWidth
  /// or ShapeMismatch.
  BlockPartition(WidthProfile width, std::vector<std::vector<Cell>> cells);

  std::size_t blockCount() const noexcept { return cells_.size(); }
  std::size_t coveredHorizon() const noexcept { return covered_; }
  const WidthProfile& width() const noexcept { return width_; }
  /// Cells of block n; cell k (1-based) is cells(n)[k - 1].
  const std::vector<Cell>& cells(std::size_t n) const { return cells_[n]; }
  const std::vector<std::vector<Cell>>& allCells() const noexcept { return cells_; }
  /// J_n, sorted.
  std::vector<Position> block(std::size_t n) const;

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  WidthProfile width_;
  std::vector<std::vector<Cell>> cells_;
  std::size_t covered_ = 0;
};

/// Canonical partition: singleton cells assigned to consecutive positions.
BlockPartition blockPartition(const WidthProfile& h, std::size_t blockCount);
/// Same layout with every cell an interval of `cellLength` positions.
BlockPartition intervalBlockPartition(const WidthProfile& h, std::size_t blockCount,
                                      std::size_t cellLength);

/// Entry n is a partial function with domain J_n.
struct BlockFunc {
  std::vector<PartialFunc> entries;
  friend bool operator==(const BlockFunc&, const BlockFunc&) = default;
};

/// Entry n lists at most h(n) partial functions with domain J_n.
struct BlockSlalom {
  std::vector<std::vector<PartialFunc>> entries;
  WidthProfile width;
  friend bool operator==(const BlockSlalom&, const BlockSlalom&) = default;
};

/// f'(n) = f restricted to J_n. Throws HorizonTooShort.
BlockFunc blockEncode(const FinFunc& f, const BlockPartition& partition);

/// g(x) = w^n_k(x) for x in J_{n,k}. Entries with fewer than h(n) members are
/// padded with the constantly-0 function. Throws ShapeMismatch.
FinFunc weave(const BlockSlalom& sigma, const BlockPartition& partition);

/// w^n_k(l) = k-th greatest element of sigma(l), or 0 when |sigma(l)| < k.
BlockSlalom columnsSlalom(const Slalom& sigma, const WidthProfile& h,
                          const BlockPartition& partition);

/// weave(columnsSlalom(sigma, h, P), P).
FinFunc avoiderWitness(const Slalom& sigma, const WidthProfile& h, const BlockPartition& partition);

/// A finite binary string.
class BitString {
 public:
  BitString() = default;
  /// Throws MalformedInput on characters other than '0' and '1'.
  explicit BitString(std::string bits);

  const std::string& bits() const noexcept { return bits_; }
  std::size_t length() const noexcept { return bits_.size(); }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

/// tau_0 = "", tau_1 = "0", tau_2 = "1", tau_3 = "00", ...: length first,
/// then lexicographic. Strings of length n occupy [2^n - 1, 2^{n+1} - 1).
/// Lengths above kMaxLength throw Overflow.
struct StringEnumeration {
  static constexpr std::size_t kMaxLength = 62;

  static Nat indexOf(const BitString& s);
  static BitString stringAt(Nat index);
  /// First index holding a string of length n.
  static Nat firstIndexOfLength(std::size_t n);
};

struct StringFunc {
  std::vector<BitString> values;

  std::size_t horizon() const noexcept { return values.size(); }
  const BitString& operator[](std::size_t n) const { return values[n]; }

  friend bool operator==(const StringFunc&, const StringFunc&) = default;
};

/// g-hat(n) = index of g(n) in the enumeration.
FinFunc stringEncode(const StringFunc& g);

/// f_sigma(n) = tau_k for the least k not in sigma(n) with |tau_k| = n.
/// Throws NoAdmissibleString when sigma(n) covers every length-n index.
StringFunc evasionTarget(const Slalom& sigma);

}  // namespace cichon
