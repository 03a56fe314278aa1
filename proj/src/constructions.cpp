#include "cichon/constructions.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "cichon/error.hpp"

namespace cichon {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

Nat maxOf(const NatSet& s) { return s.empty() ? 0 : *s.rbegin(); }

void checkWidths(const WidthProfile& h, std::size_t blockCount) {
  if (h.horizon() < blockCount) {
    throw Error(ErrorCode::ShapeMismatch,
                "width profile covers " + str(h.horizon()) + " blocks, need " + str(blockCount));
  }
  for (std::size_t n = 0; n < blockCount; ++n) {
    if (h[n] == 0) throw Error(ErrorCode::ZeroWidth, "h(" + str(n) + ") = 0");
  }
}

WidthProfile firstWidths(const WidthProfile& h, std::size_t blockCount) {
  return WidthProfile(std::vector<Nat>(h.widths.begin(),
                                       h.widths.begin() + static_cast<std::ptrdiff_t>(blockCount)));
}

}  // namespace

FinFunc slalomDominator(const Slalom& sigma) {
  FinFunc z;
  z.values.reserve(sigma.horizon());
  for (const auto& cell : sigma.cells()) z.values.push_back(maxOf(cell) + 1);
  return z;
}

FinFunc sumEvaderBound(const Slalom& sigma) {
  FinFunc z;
  z.values.reserve(sigma.horizon());
  for (const auto& cell : sigma.cells()) {
    z.values.push_back(1 + std::accumulate(cell.begin(), cell.end(), Nat{0}));
  }
  return z;
}

FinFunc familyDominator(const Family& family) {
  auto d = FinFunc::constant(family.horizon(), 0);
  for (const auto& f : family) {
    for (std::size_t n = 0; n < d.horizon(); ++n) d[n] = std::max(d[n], f[n]);
  }
  for (auto& v : d.values) ++v;
  return d;
}

FinFunc roundRobinIOE(const Family& family) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "round robin needs at least one member");
  FinFunc g;
  g.values.reserve(family.horizon());
  for (std::size_t n = 0; n < family.horizon(); ++n) g.values.push_back(family[n % family.size()][n]);
  return g;
}

Slalom singletonSlalom(const FinFunc& g) {
  std::vector<NatSet> cells;
  cells.reserve(g.horizon());
  for (auto v : g.values) cells.push_back({v});
  return Slalom(std::move(cells), WidthProfile::constant(g.horizon(), 1));
}

CapturingSlalom familySlalom(const Family& family) {
  const auto horizon = family.horizon();
  std::vector<NatSet> cells(horizon);
  for (std::size_t n = 0; n < horizon; ++n) {
    for (std::size_t i = 0; i < std::min(n, family.size()); ++i) cells[n].insert(family[i][n]);
  }
  CapturingSlalom out{Slalom::withIdentityWidth(std::move(cells)), {}};
  for (const auto& f : family) out.thresholds.push_back(leastThreshold(f, out.slalom).threshold);
  return out;
}

BlockPartition::BlockPartition(WidthProfile width, std::vector<std::vector<Cell>> cells)
    : width_(std::move(width)), cells_(std::move(cells)) {
  checkWidths(width_, cells_.size());
  std::vector<Position> all;
  for (std::size_t n = 0; n < cells_.size(); ++n) {
    if (cells_[n].size() != width_[n]) {
      throw Error(ErrorCode::ShapeMismatch, "block " + str(n) + " has " + str(cells_[n].size()) +
                                                " cells but h(n) = " + str(width_[n]));
    }
    for (std::size_t k = 0; k < cells_[n].size(); ++k) {
      auto& cell = cells_[n][k];
      if (cell.empty()) {
        throw Error(ErrorCode::ShapeMismatch,
                    "J_{" + str(n) + "," + str(k + 1) + "} is empty");
      }
      std::sort(cell.begin(), cell.end());
      all.insert(all.end(), cell.begin(), cell.end());
    }
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] != i) {
      throw Error(ErrorCode::ShapeMismatch,
                  "cells are not a disjoint cover of [0, " + str(all.size()) + ")");
    }
  }
  covered_ = all.size();
}

std::vector<Position> BlockPartition::block(std::size_t n) const {
  std::vector<Position> out;
  for (const auto& cell : cells_[n]) out.insert(out.end(), cell.begin(), cell.end());
  std::sort(out.begin(), out.end());
  return out;
}

BlockPartition blockPartition(const WidthProfile& h, std::size_t blockCount) {
  return intervalBlockPartition(h, blockCount, 1);
}

BlockPartition intervalBlockPartition(const WidthProfile& h, std::size_t blockCount,
                                      std::size_t cellLength) {
  checkWidths(h, blockCount);
  if (cellLength == 0) throw Error(ErrorCode::ShapeMismatch, "cell length must be positive");
  std::vector<std::vector<BlockPartition::Cell>> cells(blockCount);
  Position next = 0;
  for (std::size_t n = 0; n < blockCount; ++n) {
    for (Nat k = 0; k < h[n]; ++k) {
      BlockPartition::Cell cell(cellLength);
      std::iota(cell.begin(), cell.end(), next);
      next += cellLength;
      cells[n].push_back(std::move(cell));
    }
  }
  return BlockPartition(firstWidths(h, blockCount), std::move(cells));
}

BlockFunc blockEncode(const FinFunc& f, const BlockPartition& partition) {
  if (f.horizon() < partition.coveredHorizon()) {
    throw Error(ErrorCode::HorizonTooShort, "function horizon " + str(f.horizon()) +
                                                " < covered horizon " +
                                                str(partition.coveredHorizon()));
  }
  BlockFunc out;
  out.entries.resize(partition.blockCount());
  for (std::size_t n = 0; n < partition.blockCount(); ++n) {
    for (auto x : partition.block(n)) out.entries[n][x] = f[x];
  }
  return out;
}

FinFunc weave(const BlockSlalom& sigma, const BlockPartition& partition) {
  if (sigma.width != partition.width() || sigma.entries.size() != partition.blockCount()) {
    throw Error(ErrorCode::ShapeMismatch, "block slalom and partition disagree on widths or blocks");
  }
  auto g = FinFunc::constant(partition.coveredHorizon(), 0);
  for (std::size_t n = 0; n < partition.blockCount(); ++n) {
    const auto& members = sigma.entries[n];
    const auto& cells = partition.cells(n);
    if (members.size() > cells.size()) {
      throw Error(ErrorCode::ShapeMismatch, "entry " + str(n) + " has " + str(members.size()) +
                                                " members, more than h(n) = " + str(cells.size()));
    }
    const auto domain = partition.block(n);
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto& w = members[k];
      const bool sameDomain =
          w.size() == domain.size() &&
          std::equal(w.begin(), w.end(), domain.begin(),
                     [](const auto& entry, Position x) { return entry.first == x; });
      if (!sameDomain) {
        throw Error(ErrorCode::ShapeMismatch,
                    "w^" + str(n) + "_" + str(k + 1) + " does not have domain J_" + str(n));
      }
      for (auto x : cells[k]) g[x] = w.at(x);
    }
    // Missing members are the constantly-0 function; g is already 0 there.
  }
  return g;
}

BlockSlalom columnsSlalom(const Slalom& sigma, const WidthProfile& h,
                          const BlockPartition& partition) {
  if (h.horizon() < partition.blockCount() ||
      firstWidths(h, partition.blockCount()) != partition.width()) {
    throw Error(ErrorCode::ShapeMismatch, "partition was not built from this width profile");
  }
  if (sigma.horizon() < partition.coveredHorizon()) {
    throw Error(ErrorCode::HorizonTooShort, "slalom horizon " + str(sigma.horizon()) +
                                                " < covered horizon " +
                                                str(partition.coveredHorizon()));
  }
  BlockSlalom out;
  out.width = partition.width();
  out.entries.resize(partition.blockCount());
  for (std::size_t n = 0; n < partition.blockCount(); ++n) {
    const auto domain = partition.block(n);
    for (Nat k = 1; k <= partition.width()[n]; ++k) {
      PartialFunc w;
      for (auto l : domain) {
        const auto& cell = sigma[l];
        if (cell.size() >= k) {
          w[l] = *std::next(cell.rbegin(), static_cast<std::ptrdiff_t>(k - 1));
        } else {
          w[l] = 0;
        }
      }
      out.entries[n].push_back(std::move(w));
    }
  }
  return out;
}

FinFunc avoiderWitness(const Slalom& sigma, const WidthProfile& h, const BlockPartition& partition) {
  return weave(columnsSlalom(sigma, h, partition), partition);
}

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  if (bits_.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorCode::MalformedInput, "\"" + bits_ + "\" is not a binary string");
  }
}

Nat StringEnumeration::firstIndexOfLength(std::size_t n) {
  if (n > kMaxLength) {
    throw Error(ErrorCode::Overflow, "strings longer than " + str(kMaxLength) + " are not indexed");
  }
  return (Nat{1} << n) - 1;
}

Nat StringEnumeration::indexOf(const BitString& s) {
  Nat value = 0;
  const auto first = firstIndexOfLength(s.length());
  for (char c : s.bits()) value = (value << 1) | static_cast<Nat>(c - '0');
  return first + value;
}

BitString StringEnumeration::stringAt(Nat index) {
  std::size_t n = 0;
  while (n < kMaxLength && firstIndexOfLength(n + 1) <= index) ++n;
  if (n == kMaxLength && index >= firstIndexOfLength(kMaxLength) + (Nat{1} << kMaxLength)) {
    throw Error(ErrorCode::Overflow, "index " + std::to_string(index) + " is out of range");
  }
  Nat value = index - firstIndexOfLength(n);
  std::string bits(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    bits[n - 1 - i] = static_cast<char>('0' + (value & 1));
    value >>= 1;
  }
  return BitString(std::move(bits));
}

FinFunc stringEncode(const StringFunc& g) {
  FinFunc out;
  out.values.reserve(g.horizon());
  for (const auto& s : g.values) out.values.push_back(StringEnumeration::indexOf(s));
  return out;
}

StringFunc evasionTarget(const Slalom& sigma) {
  StringFunc out;
  for (std::size_t n = 0; n < sigma.horizon(); ++n) {
    const Nat first = StringEnumeration::firstIndexOfLength(n);
    const Nat last = first + (Nat{1} << n) - 1;
    Nat k = first;
    // The cell is sorted, so one forward pass skips every occupied index.
    for (auto it = sigma[n].lower_bound(first); it != sigma[n].end() && *it == k; ++it) ++k;
    if (k > last) {
      throw Error(ErrorCode::NoAdmissibleString,
                  "sigma(" + str(n) + ") covers every string of length " + str(n));
    }
    out.values.push_back(StringEnumeration::stringAt(k));
  }
  return out;
}

}  // namespace cichon
