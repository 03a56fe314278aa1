#include "cichon/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cichon/error.hpp"

namespace cichon {

namespace {

void requireSameHorizon(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::HorizonMismatch,
                "horizons " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

// Scans backwards for the last failing position; everything after it holds.
template <typename Holds>
ThresholdReport tailThreshold(std::size_t horizon, Holds holds) {
  std::size_t k = horizon;
  while (k > 0 && holds(k - 1)) --k;
  return {k, k == horizon};
}

}  // namespace

FinFunc FinFunc::tail(std::size_t from) const {
  if (from >= values.size()) return {};
  return FinFunc(std::vector<Nat>(values.begin() + static_cast<std::ptrdiff_t>(from), values.end()));
}

FinFunc FinFunc::successor() const {
  FinFunc out = *this;
  for (auto& v : out.values) ++v;
  return out;
}

FinFunc FinFunc::constant(std::size_t horizon, Nat value) {
  return FinFunc(std::vector<Nat>(horizon, value));
}

WidthProfile WidthProfile::identity(std::size_t horizon) {
  std::vector<Nat> w(horizon);
  for (std::size_t n = 0; n < horizon; ++n) w[n] = n;
  return WidthProfile(std::move(w));
}

WidthProfile WidthProfile::constant(std::size_t horizon, Nat width) {
  return WidthProfile(std::vector<Nat>(horizon, width));
}

Slalom::Slalom(std::vector<NatSet> cells, WidthProfile width)
    : cells_(std::move(cells)), width_(std::move(width)) {
  if (cells_.size() != width_.horizon()) {
    throw Error(ErrorCode::ShapeMismatch, "slalom has " + std::to_string(cells_.size()) +
                                              " cells but " + std::to_string(width_.horizon()) +
                                              " widths");
  }
  for (std::size_t n = 0; n < cells_.size(); ++n) {
    if (cells_[n].size() > width_[n]) {
      throw Error(ErrorCode::WidthExceeded, "|cells(" + std::to_string(n) +
                                                ")| = " + std::to_string(cells_[n].size()) +
                                                " exceeds width " + std::to_string(width_[n]));
    }
  }
}

Slalom Slalom::withIdentityWidth(std::vector<NatSet> cells) {
  auto width = WidthProfile::identity(cells.size());
  return Slalom(std::move(cells), std::move(width));
}

Family::Family(std::size_t horizon, std::vector<FinFunc> members)
    : horizon_(horizon), members_(std::move(members)) {
  for (const auto& f : members_) requireSameHorizon(horizon_, f.horizon());
}

Family Family::of(std::vector<FinFunc> members) {
  if (members.empty()) throw Error(ErrorCode::EmptyFamily, "cannot infer horizon of an empty family");
  const auto horizon = members.front().horizon();
  return Family(horizon, std::move(members));
}

void Family::add(FinFunc f) {
  requireSameHorizon(horizon_, f.horizon());
  members_.push_back(std::move(f));
}

FinFunc Family::pointwiseSum() const {
  auto sum = FinFunc::constant(horizon_, 0);
  for (const auto& f : members_) {
    for (std::size_t n = 0; n < horizon_; ++n) sum[n] += f[n];
  }
  return sum;
}

bool Family::includes(const Family& other) const {
  std::map<FinFunc, std::size_t> mine;
  for (const auto& f : members_) ++mine[f];
  for (const auto& f : other.members_) {
    auto it = mine.find(f);
    if (it == mine.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

Family Family::truncated(std::size_t horizon) const {
  if (horizon > horizon_) {
    throw Error(ErrorCode::HorizonTooShort, "cannot truncate a family of horizon " +
                                                std::to_string(horizon_) + " to " +
                                                std::to_string(horizon));
  }
  Family out(horizon);
  for (const auto& f : members_) {
    out.add(FinFunc(std::vector<Nat>(f.values.begin(),
                                     f.values.begin() + static_cast<std::ptrdiff_t>(horizon))));
  }
  return out;
}

ThresholdReport leastThreshold(Relation rel, const FinFunc& f, const FinFunc& g) {
  requireSameHorizon(f.horizon(), g.horizon());
  switch (rel) {
    case Relation::Leq:
      return tailThreshold(f.horizon(), [&](std::size_t l) { return f[l] <= g[l]; });
    case Relation::Neq:
      return tailThreshold(f.horizon(), [&](std::size_t l) { return f[l] != g[l]; });
    case Relation::In:
    case Relation::Eq:
      break;
  }
  throw Error(ErrorCode::KindMismatch, "function targets support only leq and neq");
}

ThresholdReport leastThreshold(const FinFunc& f, const Slalom& sigma) {
  requireSameHorizon(f.horizon(), sigma.horizon());
  return tailThreshold(f.horizon(), [&](std::size_t l) { return sigma[l].contains(f[l]); });
}

std::size_t hitCount(const FinFunc& f, const FinFunc& g) {
  requireSameHorizon(f.horizon(), g.horizon());
  std::size_t hits = 0;
  for (std::size_t l = 0; l < f.horizon(); ++l) hits += f[l] == g[l] ? 1 : 0;
  return hits;
}

std::size_t hitCount(const FinFunc& f, const Slalom& sigma) {
  requireSameHorizon(f.horizon(), sigma.horizon());
  std::size_t hits = 0;
  for (std::size_t l = 0; l < f.horizon(); ++l) hits += sigma[l].contains(f[l]) ? 1 : 0;
  return hits;
}

RelationReport familyReport(Relation rel, const Witness& witness, const Family& family,
                            ReportMode mode) {
  RelationReport report;
  report.relation = rel;
  report.mode = mode;

  const auto* asFunc = std::get_if<FinFunc>(&witness);
  const auto* asSlalom = std::get_if<Slalom>(&witness);
  const std::size_t witnessHorizon = asFunc ? asFunc->horizon() : asSlalom->horizon();
  requireSameHorizon(witnessHorizon, family.horizon());

  if (mode == ReportMode::Bounding) {
    if (rel == Relation::Eq) {
      throw Error(ErrorCode::KindMismatch, "bounding mode supports leq, neq and in");
    }
    if ((rel == Relation::In) != (asSlalom != nullptr)) {
      throw Error(ErrorCode::KindMismatch, "in takes a slalom witness; leq and neq take a function");
    }
    for (const auto& z : family) {
      auto t = rel == Relation::In ? leastThreshold(z, *asSlalom) : leastThreshold(rel, z, *asFunc);
      report.maxThreshold = std::max(report.maxThreshold, t.threshold);
      report.thresholds.push_back(t);
    }
    return report;
  }

  if (rel == Relation::In || asFunc == nullptr) {
    throw Error(ErrorCode::KindMismatch, "evading mode needs a function witness and leq, neq or eq");
  }
  for (const auto& z : family) {
    std::size_t hits = 0;
    if (rel == Relation::Leq) {
      for (std::size_t l = 0; l < z.horizon(); ++l) hits += (*asFunc)[l] > z[l] ? 1 : 0;
    } else {
      hits = hitCount(*asFunc, z);
    }
    report.minHits = std::min(report.minHits, hits);
    report.hits.push_back(hits);
  }
  return report;
}

}  // namespace cichon
