#include <doctest.h>

#include "cichon/error.hpp"
#include "cichon/posets.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cichon;

namespace {

ErrorCode codeOf(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::MalformedInput;
}

FiniteTree sacks(std::set<TreeNode> nodes) {
  FiniteTree t;
  t.kind = TreeKind::Sacks;
  t.nodes = std::move(nodes);
  return t;
}

FiniteTree laver(std::set<TreeNode> nodes, Nat budget = 3) {
  FiniteTree t;
  t.kind = TreeKind::Laver;
  t.budget = budget;
  t.nodes = std::move(nodes);
  return t;
}

bool hasClause(const Condition& c, const std::string& clause) {
  for (const auto& v : validate(c)) {
    if (v.clause == clause) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("posets") {
  TEST_CASE("validate") {
    LocCond c{{{}, {1, 2}}, Family(2)};
    CHECK(hasClause(c, "|s(n)| ≤ n at n=1"));

    CHECK(validate(CohenCond{{1, 2, 3}}).empty());

    LocCond tooMany{{{}}, Family::of({FinFunc{0, 0}, FinFunc{1, 1}})};
    CHECK(hasClause(tooMany, "|ℱ| ≤ |s|"));

    CHECK(hasClause(HechlerCond{{1, 2}, {0}}, "stem.horizon ≤ side.horizon"));
    CHECK(hasClause(sacks({{0}}), "root ∈ T"));
    CHECK(hasClause(sacks({{}, {0, 1}}), "prefix-closed"));
    CHECK(hasClause(sacks({{}, {2}}), "alphabet {0,1}"));
    CHECK(hasClause(laver({{}, {5}}), "branching < budget"));
    // A chain below the working depth has no splitting descendant.
    CHECK(hasClause(sacks({{}, {0}, {0, 0}, {0, 0, 1}}), "splitting descendant"));
    auto chain = sacks({{}, {0}, {0, 0}});
    chain.depth = 0;
    CHECK(validate(chain).empty());
  }

  TEST_CASE("LOC order example") {
    const FinFunc f{1, 1, 1, 1};
    LocCond p{{{}, {2}}, Family::of({f})};
    LocCond q{{{}, {2}, {1, 9}}, Family::of({f})};
    CHECK(leq(PosetKind::Loc, q, p));
    LocCond missing{{{}, {2}, {9}}, Family::of({f})};
    CHECK(leqViolation(PosetKind::Loc, missing, p) == std::optional<std::string>("f(n) ∈ t(n) at n=2"));
  }

  TEST_CASE("E order example") {
    ECond p{{1}, Family::of({FinFunc{1, 2, 3}})};
    ECond q{{1, 2}, Family::of({FinFunc{1, 2, 3}})};
    CHECK(leqViolation(PosetKind::E, q, p) == std::optional<std::string>("q(n) ≠ f(n) at n=1"));
    ECond r{{1, 5}, Family::of({FinFunc{1, 2, 3}})};
    CHECK(leq(PosetKind::E, r, p));
  }

  TEST_CASE("Hechler order clauses") {
    HechlerCond p{{0}, {2, 2, 2}};
    CHECK(leq(PosetKind::Hechler, HechlerCond{{0, 2}, {2, 3, 2}}, p));
    CHECK(leqViolation(PosetKind::Hechler, HechlerCond{{0, 1}, {2, 2, 2}}, p) ==
          std::optional<std::string>("q(n) ≥ f(n) at n=1"));
    CHECK(leqViolation(PosetKind::Hechler, HechlerCond{{0}, {2, 1, 2}}, p) ==
          std::optional<std::string>("g(n) ≥ f(n) at n=1"));
    CHECK(leqViolation(PosetKind::Hechler, HechlerCond{{1}, {2, 2, 2}}, p) ==
          std::optional<std::string>("q extends p"));
  }

  TEST_CASE("order errors") {
    CHECK(codeOf([] { leq(PosetKind::Cohen, CohenCond{}, HechlerCond{}); }) == ErrorCode::KindMismatch);
    CHECK(codeOf([] {
            leq(PosetKind::Loc, LocCond{{{}, {1, 2}}, Family(2)}, LocCond{{}, Family(2)});
          }) == ErrorCode::InvalidCondition);
    CHECK(codeOf([] {
            leq(PosetKind::Hechler, HechlerCond{{}, {0}}, HechlerCond{{}, {0, 0}});
          }) == ErrorCode::HorizonMismatch);
    CHECK(codeOf([] { fusionLeq(PosetKind::Cohen, CohenCond{}, CohenCond{}, 0); }) ==
          ErrorCode::KindMismatch);
  }

  TEST_CASE("splitting nodes") {
    const auto full = FiniteTree::fullBinary(3);
    CHECK(splittingNodes(full, 0) == std::vector<TreeNode>{{}});
    CHECK(splittingNodes(full, 1) == std::vector<TreeNode>{{0}, {1}});
    auto chain = sacks({{}, {0}, {0, 0}});
    chain.depth = 0;
    for (std::size_t n = 0; n < 4; ++n) CHECK(splittingNodes(chain, n).empty());
    CHECK(codeOf([] { splittingNodes(laver({{}, {0}, {1}}), 0); }) == ErrorCode::KindMismatch);
  }

  TEST_CASE("canonical enumeration") {
    CHECK(canonicalEnum(laver({{}, {0}, {1}})) == std::vector<TreeNode>{{0}, {1}});
    auto bare = laver({{}, {2}, {2, 1}});
    bare.depth = 0;
    CHECK(canonicalEnum(bare).empty());
    const auto t = laver({{}, {0}, {1}, {0, 2}, {1, 0}, {1, 1}});
    const auto e = canonicalEnum(t);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) CHECK_FALSE(oracle::isPrefix(e[j], e[i]));
    }
    CHECK(e == oracle::canonical(t));
  }

  TEST_CASE("Sacks fusion example") {
    const auto p = FiniteTree::fullBinary(3);
    FiniteTree q = p;
    gen::eraseSubtree(q, {1});
    CHECK(leq(PosetKind::Sacks, q, p));
    CHECK_FALSE(fusionLeq(PosetKind::Sacks, q, p, 0));
    for (std::size_t n = 0; n < 4; ++n) CHECK(fusionLeq(PosetKind::Sacks, p, p, n));
  }

  TEST_CASE("literal Sacks fusion is not nested on finite trees") {
    // q keeps the 1st splitting node "0" but its root no longer splits, so the
    // level-1 clause alone holds while level 0 fails. The cumulative reading
    // rejects q at every level.
    const auto p = FiniteTree::fullBinary(2);
    const auto q = sacks({{}, {0}, {0, 0}, {0, 1}});
    CHECK(oracle::splittingLevel(q, 0) == std::set<TreeNode>{{0}});
    CHECK(oracle::splittingLevel(p, 1).count({0}) == 1);
    CHECK_FALSE(fusionLeq(PosetKind::Sacks, q, p, 1));
    CHECK_FALSE(fusionLeq(PosetKind::Sacks, q, p, 0));
    CHECK(leq(PosetKind::Sacks, q, p));
  }

  TEST_CASE("Laver fusion compares the first n+1 canonical nodes") {
    const auto p = laver({{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}});
    const auto q = laver({{}, {0}, {1}, {0, 0}, {1, 0}});
    CHECK(fusionLeq(PosetKind::Laver, q, p, 2));
    CHECK_FALSE(fusionLeq(PosetKind::Laver, q, p, 3));
    CHECK(leq(PosetKind::Laver, q, p));
  }

  TEST_CASE("product order is componentwise") {
    const auto s = FiniteTree::fullBinary(3);
    const auto l = laver({{}, {0}, {1}});
    ProductCond p{s, l};
    FiniteTree s2 = s;
    gen::eraseSubtree(s2, {1, 1});
    ProductCond q{s2, l};
    CHECK(leq(PosetKind::Product, q, p));
    CHECK(fusionLeq(PosetKind::Product, q, p, 0));
    CHECK_FALSE(fusionLeq(PosetKind::Product, q, p, 1));
    CHECK_FALSE(leq(PosetKind::Product, p, q));
  }

  TEST_CASE("orders agree with oracles and are preorders") {
    gen::Rng rng(303);
    for (int trial = 0; trial < 150; ++trial) {
      const auto horizon = static_cast<std::size_t>(rng.between(1, 6));

      const auto l1 = gen::locCond(rng, rng.between(0, horizon), horizon, 6, 3);
      const auto l2 = gen::extendLoc(rng, l1, 6, 3);
      const auto l3 = gen::extendLoc(rng, l2, 6, 3);
      CHECK(leq(PosetKind::Loc, l1, l1));
      CHECK(leq(PosetKind::Loc, l2, l1));
      CHECK(leq(PosetKind::Loc, l3, l1));
      const auto other = gen::locCond(rng, rng.between(0, horizon), horizon, 2, 2);
      CHECK(leq(PosetKind::Loc, other, l1) == oracle::locLeq(other, l1));
      CHECK(leq(PosetKind::Loc, l1, other) == oracle::locLeq(l1, other));

      const auto h1 = gen::hechlerCond(rng, horizon, 5);
      const auto h2 = gen::extendHechler(rng, h1, 3);
      const auto h3 = gen::extendHechler(rng, h2, 3);
      CHECK(leq(PosetKind::Hechler, h3, h1));
      const auto hx = gen::hechlerCond(rng, horizon, 5);
      CHECK(leq(PosetKind::Hechler, hx, h1) == oracle::hechlerLeq(hx, h1));

      const auto e1 = gen::eCond(rng, horizon, 4, 2);
      const auto e2 = gen::extendE(rng, e1, 4, 3);
      const auto e3 = gen::extendE(rng, e2, 4, 4);
      CHECK(leq(PosetKind::E, e3, e1));
      const auto ex = gen::eCond(rng, horizon, 4, 2);
      CHECK(leq(PosetKind::E, ex, e1) == oracle::eLeq(ex, e1));

      const auto c1 = gen::cohenCond(rng, 3, 2);
      const auto c3 = gen::extendCohen(rng, gen::extendCohen(rng, c1, 2, 2), 2, 2);
      CHECK(leq(PosetKind::Cohen, c3, c1));
    }
  }

  TEST_CASE("fusion orders agree with oracles and nest") {
    gen::Rng rng(404);
    for (int trial = 0; trial < 120; ++trial) {
      const auto p = gen::sacksTree(rng, static_cast<std::size_t>(rng.between(1, 4)));
      const auto q = gen::pruned(rng, p, rng.between(0, 2));
      const auto lp = gen::laverTree(rng, static_cast<std::size_t>(rng.between(1, 3)), 3,
                                     static_cast<std::size_t>(rng.between(0, 1)));
      const auto lq = gen::pruned(rng, lp, rng.between(0, 2));
      for (std::size_t n = 0; n < 5; ++n) {
        const bool s = fusionLeq(PosetKind::Sacks, q, p, n);
        CHECK(s == oracle::sacksFusion(q, p, n));
        if (fusionLeq(PosetKind::Sacks, q, p, n + 1)) CHECK(s);
        if (s) CHECK(leq(PosetKind::Sacks, q, p));
        const bool l = fusionLeq(PosetKind::Laver, lq, lp, n);
        CHECK(l == oracle::laverFusion(lq, lp, n));
        if (fusionLeq(PosetKind::Laver, lq, lp, n + 1)) CHECK(l);
        if (l) CHECK(leq(PosetKind::Laver, lq, lp));
      }
    }
  }
}
