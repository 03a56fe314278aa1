#include <doctest.h>

#include "cichon/combinatorics.hpp"
#include "cichon/error.hpp"
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

}  // namespace

TEST_SUITE("combinatorics") {
  TEST_CASE("leastThreshold examples") {
    auto t = leastThreshold(Relation::Leq, FinFunc{3, 1, 4, 1}, FinFunc{0, 2, 5, 5});
    CHECK(t.threshold == 1);
    CHECK_FALSE(t.vacuous);

    const FinFunc f{6, 2, 8};
    CHECK(leastThreshold(Relation::Leq, f, f).threshold == 0);

    t = leastThreshold(Relation::Neq, FinFunc{5}, FinFunc{5});
    CHECK(t.threshold == 1);
    CHECK(t.vacuous);

    const Slalom sigma({{}, {1}, {0, 4}, {1, 2, 9}}, WidthProfile::identity(4));
    CHECK(leastThreshold(FinFunc{7, 1, 4, 1}, sigma).threshold == 1);
  }

  TEST_CASE("empty horizon is vacuous at zero") {
    const auto t = leastThreshold(Relation::Neq, FinFunc{}, FinFunc{});
    CHECK(t.threshold == 0);
    CHECK(t.vacuous);
  }

  TEST_CASE("relation errors") {
    CHECK(codeOf([] { leastThreshold(Relation::Leq, FinFunc{1}, FinFunc{1, 2}); }) ==
          ErrorCode::HorizonMismatch);
    CHECK(codeOf([] { leastThreshold(Relation::In, FinFunc{1}, FinFunc{1}); }) ==
          ErrorCode::KindMismatch);
    CHECK(codeOf([] { hitCount(FinFunc{1}, FinFunc{}); }) == ErrorCode::HorizonMismatch);
  }

  TEST_CASE("hitCount examples") {
    CHECK(hitCount(FinFunc{1, 2, 3}, FinFunc{1, 0, 3}) == 2);
    const FinFunc f{4, 4, 4, 4};
    CHECK(hitCount(f, f) == 4);
    const Slalom sigma({{}, {1}}, WidthProfile::identity(2));
    CHECK(hitCount(FinFunc{0, 0}, sigma) == 0);
  }

  TEST_CASE("slalom shape checks") {
    CHECK(codeOf([] { Slalom({{1, 2}}, WidthProfile{1}); }) == ErrorCode::WidthExceeded);
    CHECK(codeOf([] { Slalom({{1}}, WidthProfile{1, 1}); }) == ErrorCode::ShapeMismatch);
    CHECK(codeOf([] { Slalom::withIdentityWidth({{0}}); }) == ErrorCode::WidthExceeded);
  }

  TEST_CASE("family basics") {
    CHECK(codeOf([] { Family::of({}); }) == ErrorCode::EmptyFamily);
    CHECK(codeOf([] { Family(2, {FinFunc{1}}); }) == ErrorCode::HorizonMismatch);

    auto fam = Family::of({FinFunc{1, 2}, FinFunc{1, 2}, FinFunc{0, 5}});
    CHECK(fam.pointwiseSum() == FinFunc{2, 9});
    CHECK(Family(3).pointwiseSum() == FinFunc{0, 0, 0});

    // Multiset inclusion: a repeated member must be present as often.
    CHECK(fam.includes(Family::of({FinFunc{1, 2}, FinFunc{1, 2}})));
    CHECK_FALSE(Family::of({FinFunc{1, 2}}).includes(Family::of({FinFunc{1, 2}, FinFunc{1, 2}})));

    CHECK(fam.truncated(1).members().front() == FinFunc{1});
    CHECK(codeOf([&] { fam.truncated(3); }) == ErrorCode::HorizonTooShort);
  }

  TEST_CASE("familyReport examples") {
    const auto fam = Family::of({FinFunc{1, 2}, FinFunc{3, 0}});
    auto r = familyReport(Relation::Leq, FinFunc{4, 3}, fam, ReportMode::Bounding);
    CHECK(r.thresholds == std::vector<ThresholdReport>{{0, false}, {0, false}});
    CHECK(r.maxThreshold == 0);

    r = familyReport(Relation::Neq, FinFunc{0, 0}, Family(2), ReportMode::Bounding);
    CHECK(r.thresholds.empty());
    CHECK(r.maxThreshold == 0);
    CHECK(r.minHits == kUnboundedHits);

    r = familyReport(Relation::Eq, FinFunc{5, 7}, Family::of({FinFunc{5, 5}, FinFunc{7, 7}}),
                     ReportMode::Evading);
    CHECK(r.hits == std::vector<std::size_t>{1, 1});
    CHECK(r.minHits == 1);

    CHECK(codeOf([&] { familyReport(Relation::In, FinFunc{0, 0}, fam, ReportMode::Evading); }) ==
          ErrorCode::KindMismatch);
    CHECK(codeOf([&] { familyReport(Relation::In, FinFunc{0, 0}, fam, ReportMode::Bounding); }) ==
          ErrorCode::KindMismatch);
  }

  TEST_CASE("thresholds agree with the brute-force oracle") {
    gen::Rng rng(101);
    for (int trial = 0; trial < 400; ++trial) {
      const auto n = static_cast<std::size_t>(rng.between(0, 12));
      const auto f = gen::finFunc(rng, n, 4);
      const auto g = gen::nearby(rng, f, 4);
      const auto sigma = gen::slalom(rng, gen::widths(rng, n, 0, 3), 4);

      const auto leqT = leastThreshold(Relation::Leq, f, g);
      const auto neqT = leastThreshold(Relation::Neq, f, g);
      const auto inT = leastThreshold(f, sigma);
      CHECK(leqT.threshold == oracle::leqThreshold(f, g));
      CHECK(neqT.threshold == oracle::neqThreshold(f, g));
      CHECK(inT.threshold == oracle::inThreshold(f, sigma.cells()));
      CHECK(leqT.vacuous == (leqT.threshold == n));
      CHECK(hitCount(f, g) == oracle::equalHits(f, g));

      // Tail monotonicity: the property holds at every l from the threshold on
      // and fails just below it.
      for (std::size_t l = leqT.threshold; l < n; ++l) CHECK(f[l] <= g[l]);
      if (leqT.threshold > 0) CHECK(f[leqT.threshold - 1] > g[leqT.threshold - 1]);

      // neq threshold is N exactly when the last position is a hit (or N = 0).
      CHECK((neqT.threshold == n) == (n == 0 || f[n - 1] == g[n - 1]));
      if (hitCount(f, g) == 0) CHECK(neqT.threshold == 0);
      CHECK(hitCount(f, sigma) >= n - inT.threshold);
    }
  }
}
