#include "cichon/projections.hpp"

#include <algorithm>
#include <numeric>

#include "cichon/error.hpp"

namespace cichon {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

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

NatSet sideValues(const Family& side, std::size_t n) {
  NatSet out;
  for (const auto& f : side) out.insert(f[n]);
  return out;
}

// k-th natural (0-indexed) outside `excluded`.
Nat kthMissing(const NatSet& excluded, Nat k) {
  Nat candidate = 0;
  for (;;) {
    if (!excluded.contains(candidate)) {
      if (k == 0) return candidate;
      --k;
    }
    ++candidate;
  }
}

// Position 0 has no residue; its stem is pinned to 0.
bool rankFits(std::optional<Nat> rank, std::size_t n) {
  if (!rank) return false;
  return n == 0 ? *rank == 0 : *rank < n;
}

Nat residueTarget(const NatSet& cell, std::size_t n) {
  return std::accumulate(cell.begin(), cell.end(), Nat{0}) % n;
}

}  // namespace

HechlerCond projLocToD(const LocCond& c) {
  requireValid(c);
  HechlerCond out;
  for (const auto& cell : c.prefix) out.stem.values.push_back(cell.empty() ? 0 : *cell.rbegin());
  out.side = c.side.pointwiseSum();
  return out;
}

LocCond liftLocToD(const LocCond& c, const HechlerCond& q) {
  requireValid(c);
  requireValid(q);
  requireSameHorizon(c.side.horizon(), q.side.horizon());
  const auto image = projLocToD(c);
  if (auto v = leqViolation(PosetKind::Hechler, q, image)) {
    throw Error(ErrorCode::NotBelowProjection, "q ≤ π(c) fails: " + *v);
  }
  if (c.side.size() >= c.length()) {
    throw Error(ErrorCode::FamilyTooLarge,
                "|ℱ| = " + str(c.side.size()) + " must be < |s| = " + str(c.length()));
  }
  const auto sum = c.side.pointwiseSum();
  for (std::size_t n = 0; n < sum.horizon(); ++n) {
    if (q.side[n] <= sum[n]) {
      throw Error(ErrorCode::SideTooSmall, "q.side(" + str(n) + ") = " + std::to_string(q.side[n]) +
                                               " ≤ Σℱ(n) = " + std::to_string(sum[n]));
    }
  }
  for (std::size_t n = c.length(); n < q.stem.horizon(); ++n) {
    if (q.stem[n] <= n + sum[n]) {
      throw Error(ErrorCode::GrowthTooSmall, "q(" + str(n) + ") = " + std::to_string(q.stem[n]) +
                                                 " ≤ n + Σℱ(n) = " + std::to_string(n + sum[n]));
    }
  }

  LocCond out;
  out.prefix = c.prefix;
  for (std::size_t n = c.length(); n < q.stem.horizon(); ++n) {
    NatSet cell = sideValues(c.side, n);
    cell.insert(q.stem[n]);
    for (Nat v = 0; cell.size() < n; ++v) cell.insert(v);  // v < q.stem(n) by the growth clause
    out.prefix.push_back(std::move(cell));
  }
  FinFunc extra(q.side);
  for (std::size_t n = 0; n < extra.horizon(); ++n) extra[n] -= sum[n];
  out.side = c.side;
  out.side.add(std::move(extra));
  return out;
}

ECond projLocToE(const LocCond& c) {
  requireValid(c);
  ECond out;
  for (std::size_t n = 0; n < c.length(); ++n) {
    if (n == 0) {
      out.stem.values.push_back(0);
      continue;
    }
    out.stem.values.push_back(kthMissing(c.prefix[n], residueTarget(c.prefix[n], n)));
  }
  out.side = c.side;
  return out;
}

std::optional<Nat> rankOutside(Nat value, const NatSet& excluded) {
  if (excluded.contains(value)) return std::nullopt;
  const auto below = static_cast<Nat>(
      std::distance(excluded.begin(), excluded.lower_bound(value)));
  return value - below;
}

LocCond liftLocToE(const LocCond& c, const ECond& q) {
  requireValid(c);
  requireValid(q);
  requireSameHorizon(c.side.horizon(), q.side.horizon());
  const auto image = projLocToE(c);
  if (auto v = leqViolation(PosetKind::E, q, image)) {
    throw Error(ErrorCode::NotBelowProjection, "q ≤ π(c) fails: " + *v);
  }
  for (std::size_t n = c.length(); n < q.stem.horizon(); ++n) {
    if (q.side.size() >= std::max<std::size_t>(n, 1)) {
      throw Error(ErrorCode::FamilyTooLarge, "|q.side| = " + str(q.side.size()) +
                                                 " must be < n at new position n=" + str(n));
    }
  }
  if (q.side.size() > q.stem.horizon()) {
    throw Error(ErrorCode::FamilyTooLarge, "|q.side| = " + str(q.side.size()) +
                                               " exceeds the stem length " +
                                               str(q.stem.horizon()));
  }

  LocCond out;
  out.prefix = c.prefix;
  for (std::size_t n = c.length(); n < q.stem.horizon(); ++n) {
    NatSet cell = sideValues(q.side, n);
    const auto rank = rankOutside(q.stem[n], cell);
    if (!rankFits(rank, n)) {
      throw Error(ErrorCode::RankTooLarge,
                  "q(" + str(n) + ") = " + std::to_string(q.stem[n]) +
                      (rank ? " has rank " + std::to_string(*rank) + ", not below n=" + str(n)
                            : " is a side value and has no rank"));
    }
    if (n == 0) {
      out.prefix.push_back({});
      continue;
    }
    Nat floor = q.stem[n];
    if (!cell.empty()) floor = std::max(floor, *cell.rbegin());
    const Nat modulus = n;
    const Nat current = std::accumulate(cell.begin(), cell.end(), Nat{0}) % modulus;
    const Nat wanted = (*rank + modulus - current) % modulus;

    // First padding value carries the residue; the others are multiples of n.
    Nat first = floor + 1;
    first += (wanted + modulus - first % modulus) % modulus;
    cell.insert(first);
    for (Nat m = (floor / modulus + 1) * modulus; cell.size() < n; m += modulus) {
      if (m != first) cell.insert(m);
    }
    out.prefix.push_back(std::move(cell));
  }
  out.side = q.side;
  return out;
}

ECond reduceE(const ECond& q, std::size_t fromPosition) {
  ECond out = q;
  for (std::size_t n = fromPosition; n < out.stem.horizon(); ++n) {
    const auto excluded = sideValues(out.side, n);
    const auto rank = rankOutside(out.stem[n], excluded);
    if (rankFits(rank, n)) continue;
    out.stem[n] = kthMissing(excluded, 0);
  }
  return out;
}

FinFunc parityMap(const FinFunc& d) {
  FinFunc out = d;
  for (auto& v : out.values) v %= 2;
  return out;
}

}  // namespace cichon
