#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cichon/diagram.hpp"
#include "cichon/error.hpp"
#include "support/oracles.hpp"

using namespace cichon;

namespace {

NodeSet setOf(std::initializer_list<Node> nodes) {
  NodeSet s;
  for (Node n : nodes) s.set(index(n));
  return s;
}

std::size_t countOf(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
    ++count;
  }
  return count;
}

bool sameClass(const DiagramState& s, Node a, Node b) {
  for (const auto& cls : *s.classes) {
    const bool hasA = std::find(cls.begin(), cls.end(), a) != cls.end();
    const bool hasB = std::find(cls.begin(), cls.end(), b) != cls.end();
    if (hasA || hasB) return hasA && hasB;
  }
  return false;
}

std::string readKbFile() {
  std::ifstream in(CICHON_KB_PATH);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("diagram") {
  TEST_CASE("shape") {
    const auto& spec = diagramSpec();
    CHECK(spec.nodes.size() == 8);
    CHECK(spec.edges.size() == 9);
    for (const auto& e : spec.edges) {
      CHECK(std::count(oracle::kArrows.begin(), oracle::kArrows.end(),
                       std::pair<int, int>{static_cast<int>(index(e.from)), static_cast<int>(index(e.to))}) == 1);
    }
    CHECK(reaches(Node::BLeq, Node::DIn));
    CHECK_FALSE(reaches(Node::BNeq, Node::DNeq));
    CHECK_FALSE(reaches(Node::DNeq, Node::BNeq));
    for (const auto& e : spec.edges) {
      CHECK_FALSE((e.from == Node::BNeq && e.to == Node::DNeq));
      CHECK_FALSE((e.from == Node::DNeq && e.to == Node::BNeq));
    }
    // Two distinct routes from BLeq to DIn.
    CHECK(reaches(Node::BNeq, Node::DIn));
    CHECK(reaches(Node::DLeq, Node::DIn));

    const auto r = oracle::reachability();
    for (Node a : kAllNodes) {
      for (Node b : kAllNodes) CHECK(reaches(a, b) == r[index(a)][index(b)]);
    }
  }

  TEST_CASE("cuts") {
    const auto cuts = enumerateCuts();
    CHECK(cuts.size() == 11);
    std::set<unsigned long> got;
    for (const auto& c : cuts) got.insert(c.nonempty.to_ulong());
    const auto brute = oracle::upwardClosedSubsets();
    CHECK(got == std::set<unsigned long>(brute.begin(), brute.end()));
    CHECK(cuts.front().caseLabel == std::optional<std::string>("a"));
    CHECK(cuts.front().forcing == std::optional<std::string>("loc"));
    CHECK(cuts.front().nonempty.count() == 7);
    CHECK_FALSE(isCut(setOf({Node::BLeq, Node::DNeq})));
    CHECK_FALSE(isCut(setOf({Node::Empty})));
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      CHECK(cuts[i].caseLabel == std::optional<std::string>(std::string(1, static_cast<char>('a' + i))));
    }
  }

  TEST_CASE("propagate") {
    auto s = DiagramState::blank();
    s[Node::BLeq] = Emptiness::Nonempty;
    auto r = std::get<DiagramState>(propagate(s));
    for (Node n : {Node::BNeq, Node::DLeq, Node::DIn, Node::AllNew}) CHECK(r[n] == Emptiness::Nonempty);
    CHECK(r[Node::BIn] == Emptiness::Unknown);
    CHECK(r[Node::DNeq] == Emptiness::Unknown);

    DiagramState unknown = DiagramState::blank();
    unknown[Node::Empty] = Emptiness::Unknown;
    auto closed = std::get<DiagramState>(propagate(unknown));
    CHECK(closed == DiagramState::blank());

    auto bad = DiagramState::blank();
    bad[Node::DIn] = Emptiness::Empty;
    bad[Node::BIn] = Emptiness::Nonempty;
    const auto c = std::get<Contradiction>(propagate(bad));
    CHECK(c.node == Node::DIn);
    CHECK(c.chain == std::vector<Node>{Node::BIn, Node::DNeq, Node::DLeq, Node::DIn});

    auto empties = DiagramState::blank();
    empties[Node::DLeq] = Emptiness::Empty;
    std::size_t iterations = 0;
    r = std::get<DiagramState>(propagate(empties, &iterations));
    for (Node n : {Node::BIn, Node::BLeq, Node::DNeq}) CHECK(r[n] == Emptiness::Empty);
    CHECK(r[Node::BNeq] == Emptiness::Unknown);
    CHECK(iterations <= 8);

    // Classes spread values across incomparable nodes.
    auto classed = DiagramState::blank();
    classed.classes = std::vector<std::vector<Node>>{{Node::BNeq, Node::DNeq}};
    classed[Node::BNeq] = Emptiness::Nonempty;
    r = std::get<DiagramState>(propagate(classed));
    CHECK(r[Node::DNeq] == Emptiness::Nonempty);

    auto nonemptyEmpty = DiagramState::blank();
    nonemptyEmpty[Node::Empty] = Emptiness::Nonempty;
    CHECK(std::holds_alternative<Contradiction>(propagate(nonemptyEmpty)));
  }

  TEST_CASE("propagate agrees with reachability on every seed pair") {
    const auto reach = oracle::reachability();
    for (int a = 1; a < 8; ++a) {
      for (int b = 1; b < 8; ++b) {
        auto s = DiagramState::blank();
        s.emptiness[a] = Emptiness::Nonempty;
        if (a != b) s.emptiness[b] = Emptiness::Empty;
        const auto r = propagate(s);
        if (a == b) {
          CHECK(std::holds_alternative<DiagramState>(r));
          continue;
        }
        CHECK(std::holds_alternative<Contradiction>(r) == reach[a][b]);
        if (const auto* st = std::get_if<DiagramState>(&r)) {
          for (int n = 1; n < 8; ++n) {
            if (reach[a][n]) CHECK(st->emptiness[n] == Emptiness::Nonempty);
            if (reach[n][b]) CHECK(st->emptiness[n] == Emptiness::Empty);
          }
        }
      }
    }
  }

  TEST_CASE("knowledge base profiles") {
    const auto& kb = KnowledgeBase::builtin();
    CHECK(kb.profiles().size() == 11);

    const auto& sacks = kb.lookup("sacks").state;
    for (Node n : kAllNodes) {
      CHECK(sacks[n] == (n == Node::AllNew ? Emptiness::Nonempty : Emptiness::Empty));
    }

    const auto& hechler = kb.lookup("hechler").state;
    CHECK(hechler[Node::BIn] == Emptiness::Empty);
    CHECK(sameClass(hechler, Node::BLeq, Node::BNeq));
    CHECK(sameClass(hechler, Node::DNeq, Node::AllNew));
    CHECK(sameClass(hechler, Node::DLeq, Node::DIn));
    CHECK_FALSE(sameClass(hechler, Node::BNeq, Node::DIn));

    const auto& random = kb.lookup("random").state;
    for (Node n : {Node::BIn, Node::BLeq, Node::DNeq, Node::DLeq}) CHECK(random[n] == Emptiness::Empty);
    CHECK(sameClass(random, Node::BNeq, Node::DIn));
    CHECK(sameClass(random, Node::DIn, Node::AllNew));

    const auto& loc = kb.lookup("loc").state;
    CHECK(loc.open.size() == 2);

    CHECK_THROWS_AS(kb.lookup("mathias"), Error);
  }

  TEST_CASE("shipped data file matches the built-in copy") {
    const auto fromFile = KnowledgeBase::fromJson(readKbFile());
    CHECK(fromFile.version() == KnowledgeBase::builtin().version());
    CHECK(fromFile.profiles().size() == KnowledgeBase::builtin().profiles().size());
  }

  TEST_CASE("knowledge base rejects unsound entries") {
    // AllNew empty above a nonempty DIn.
    const std::string tampered = R"({"version": 1, "profiles": [{"name": "x", "case": "a",
      "emptiness": {"BIn": "empty", "BLeq": "empty", "BNeq": "empty", "DNeq": "empty",
                    "DLeq": "empty", "DIn": "nonempty", "AllNew": "empty"},
      "classes": [["BIn", "BLeq", "BNeq", "DNeq", "DLeq", "AllNew"], ["DIn"]], "open": []}]})";
    CHECK_THROWS_AS(KnowledgeBase::fromJson(tampered), Error);
    // One class holding both empty and nonempty nodes.
    const std::string mixed = R"({"version": 1, "profiles": [{"name": "x", "case": "a",
      "emptiness": {"BIn": "empty", "BLeq": "empty", "BNeq": "empty", "DNeq": "empty",
                    "DLeq": "empty", "DIn": "empty", "AllNew": "nonempty"},
      "classes": [["BIn", "BLeq", "BNeq", "DNeq", "DLeq", "DIn", "AllNew"]], "open": []}]})";
    CHECK_THROWS_AS(KnowledgeBase::fromJson(mixed), Error);
    CHECK_THROWS_AS(KnowledgeBase::fromJson("{"), Error);
  }

  TEST_CASE("composition") {
    const auto full = composeProfiles({"sacks", "laver", "loc", "random"});
    REQUIRE(full.classes.has_value());
    CHECK(full.classes->size() == 7);
    CHECK(full.nonempty().count() == 7);
    CHECK(composeProfiles({"random", "loc", "laver", "sacks"}) == full);

    const auto trivial = composeProfiles({"trivial", "trivial"});
    CHECK(trivial.nonempty().none());
    for (Node n : kAllNodes) CHECK(trivial[n] == Emptiness::Empty);

    const auto cs = composeProfiles({"cohen", "sacks"});
    CHECK_FALSE(cs.classes.has_value());
    for (Node n : {Node::DNeq, Node::DLeq, Node::DIn, Node::AllNew}) CHECK(cs[n] == Emptiness::Nonempty);
    for (Node n : {Node::BIn, Node::BLeq, Node::BNeq}) CHECK(cs[n] == Emptiness::Empty);

    CHECK_THROWS_AS(composeProfiles({"cohen", "nope"}), Error);

    // Monotone: adding a factor never empties a nonempty node.
    const auto& kb = KnowledgeBase::builtin();
    for (const auto& x : kb.profiles()) {
      for (const auto& y : kb.profiles()) {
        const auto joined = composeProfiles({x.name, y.name});
        CHECK((x.state.nonempty() & ~joined.nonempty()).none());
        CHECK(isCut(joined.nonempty()));
      }
    }
  }

  TEST_CASE("DOT and JSON output") {
    const auto& kb = KnowledgeBase::builtin();
    for (const auto& p : kb.profiles()) {
      const auto dot = emitDot(p.state);
      CHECK(countOf(dot, "->") == 9);
      CHECK(parseState(emitJson(p.state)) == p.state);
    }
    CHECK(countOf(emitDot(DiagramState::blank()), "->") == 9);
    CHECK(countOf(emitDot(DiagramState::blank()), "style=dashed") == 7);

    const auto hechler = emitDot(kb.lookup("hechler").state);
    CHECK(countOf(hechler, "subgraph cluster_") == 2);
    CHECK(countOf(hechler, "fillcolor") == 2);

    const auto composed = composeProfiles({"cohen", "sacks"});
    CHECK(parseState(emitJson(composed)) == composed);
    CHECK_THROWS_AS(parseState(R"({"emptiness": {"Nowhere": "empty"}})"), Error);
  }
}
