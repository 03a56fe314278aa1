#pragma once

// Maps from localization conditions onto simplified Hechler and
// eventually-different conditions, with explicit lifts: given c and a
// condition q below the image of c, the lift returns a strengthening of c
// whose image re-projects onto q.
//
// All free choices in the lifts take the least admissible value, so outputs
// depend on the inputs alone.

#include <cstddef>

#include "cichon/combinatorics.hpp"
#include "cichon/posets.hpp"

namespace cichon {

/// (s, F) -> (n -> max s(n), sum F). Throws InvalidCondition.
HechlerCond projLocToD(const LocCond& c);

/// (t, F + {H}) with H = q.side - sum F, t = s on dom(s), and on each new
/// position n: t(n) holds every f(n), tops out at q.stem(n), and is padded to
/// exactly n elements with the least free values below q.stem(n).
///
/// Preconditions, checked in this order: both conditions valid
/// (InvalidCondition), equal working horizons (HorizonMismatch),
/// q <= projLocToD(c) (NotBelowProjection), |F| < |s| (FamilyTooLarge),
/// q.side > sum F everywhere (SideTooSmall), q.stem(n) > n + sum F(n) on new
/// positions (GrowthTooSmall).
LocCond liftLocToD(const LocCond& c, const HechlerCond& q);

/// stem(n) = the k-th natural (0-indexed) missing from s(n), where
/// k = sum s(n) mod n; stem(0) = 0. The side family is unchanged.
ECond projLocToE(const LocCond& c);

/// Rank of `value` among the naturals outside `excluded`, or nullopt when
/// `value` is itself excluded.
std::optional<Nat> rankOutside(Nat value, const NatSet& excluded);

/// (s_q, q.side) where s_q = s on dom(s) and, on each new position n, s_q(n)
/// holds the side values at n plus padding values above max(q.stem(n), side
/// values) so that |s_q(n)| = n and sum s_q(n) is congruent to the rank of
/// q.stem(n) modulo n. The first padding value fixes the residue, the rest
/// are multiples of n.
///
/// Preconditions: both valid (InvalidCondition), equal working horizons
/// (HorizonMismatch), q <= projLocToE(c) (NotBelowProjection),
/// |q.side| < n on every new position and |q.side| <= |dom q| (FamilyTooLarge),
/// rank of q.stem(n) outside the side values below n (RankTooLarge).
LocCond liftLocToE(const LocCond& c, const ECond& q);

/// Rewrites stem positions >= fromPosition whose rank (outside the side
/// values at that position) is too large to encode modulo n, replacing them
/// with the least value avoiding every side function there. Positions that
/// already satisfy the rank bound are kept. The result is not an extension of
/// q in general; it stays below every projection q was below, provided
/// fromPosition is at least the projection's stem length.
ECond reduceE(const ECond& q, std::size_t fromPosition);

/// c(n) = d(n) mod 2.
FinFunc parityMap(const FinFunc& d);

}  // namespace cichon
