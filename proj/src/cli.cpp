#include "cichon/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "cichon/codec.hpp"
#include "cichon/combinatorics.hpp"
#include "cichon/constructions.hpp"
#include "cichon/diagram.hpp"
#include "cichon/error.hpp"
#include "cichon/posets.hpp"
#include "cichon/projections.hpp"

namespace cichon::cli {

namespace {

using codec::json;

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

json nodeList(NodeSet s) {
  json out = json::array();
  for (Node n : kAllNodes) {
    if (s[index(n)]) out.push_back(std::string(nodeName(n)));
  }
  return out;
}

json thresholdJson(const ThresholdReport& t, std::size_t horizon) {
  return {{"threshold", t.threshold}, {"horizon", horizon}, {"vacuous", t.vacuous}};
}

struct DiagramArgs {
  std::vector<std::string> forcing;
  std::string format = "dot";
};

int runDiagram(const DiagramArgs& a, std::ostream& out) {
  DiagramState state = a.forcing.empty() ? DiagramState::blank() : composeProfiles(a.forcing);
  if (a.format == "json") {
    out << emitJson(state) << "\n";
  } else {
    out << emitDot(state);
  }
  return kOk;
}

int runCuts(const std::string& format, std::ostream& out) {
  const auto cuts = enumerateCuts();
  if (format == "text") {
    for (const auto& c : cuts) {
      out << c.caseLabel.value_or("-") << "\t" << c.forcing.value_or("-") << "\t"
          << nodeList(c.nonempty).dump() << "\n";
    }
    return kOk;
  }
  json arr = json::array();
  for (const auto& c : cuts) {
    json entry{{"nonempty", nodeList(c.nonempty)}};
    entry["case"] = c.caseLabel ? json(*c.caseLabel) : json(nullptr);
    entry["forcing"] = c.forcing ? json(*c.forcing) : json(nullptr);
    arr.push_back(std::move(entry));
  }
  emit(out, arr);
  return kOk;
}

struct CheckArgs {
  std::string relation;
  std::string f;
  std::string g;
};

int runCheck(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const FinFunc f = codec::finFuncFrom(codec::readFile(a.f));
  const json gDoc = codec::readFile(a.g);
  ThresholdReport t;
  std::size_t hits = 0;
  json report{{"relation", a.relation}};
  std::function<json(std::size_t)> valueAt;
  if (a.relation == "in") {
    const Slalom sigma = codec::slalomFrom(gDoc);
    t = leastThreshold(f, sigma);
    hits = hitCount(f, sigma);
    valueAt = [=](std::size_t l) { return json{{"f", f[l]}, {"sigma", std::vector<Nat>(sigma[l].begin(), sigma[l].end())}}; };
  } else {
    const Relation rel = a.relation == "leq" ? Relation::Leq : Relation::Neq;
    const FinFunc g = codec::finFuncFrom(gDoc);
    t = leastThreshold(rel, f, g);
    hits = hitCount(f, g);
    valueAt = [=](std::size_t l) { return json{{"f", f[l]}, {"g", g[l]}}; };
  }
  report.update(thresholdJson(t, f.horizon()));
  report["hits"] = hits;
  const bool holds = !t.vacuous || f.horizon() == 0;
  report["holds"] = holds;
  if (!holds) {
    // The threshold is N, so position N - 1 fails the relation.
    json counterexample = valueAt(t.threshold - 1);
    counterexample["position"] = t.threshold - 1;
    report["counterexample"] = std::move(counterexample);
    err << "relation " << a.relation << " fails at the last position\n";
  }
  emit(out, report);
  return holds ? kOk : kFails;
}

struct ConstructArgs {
  std::string kind;
  std::string family;
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 0;
  std::size_t size = 3;
  Nat maxValue = 15;
};

Family randomFamily(const ConstructArgs& a) {
  std::mt19937_64 rng(a.seed);
  const std::size_t horizon = a.horizon.value_or(8);
  Family out(horizon);
  for (std::size_t i = 0; i < a.size; ++i) {
    FinFunc f;
    for (std::size_t n = 0; n < horizon; ++n) f.values.push_back(rng() % (a.maxValue + 1));
    out.add(std::move(f));
  }
  return out;
}

int runConstruct(const ConstructArgs& a, std::ostream& out) {
  if (a.kind == "random-family") {
    emit(out, codec::toJson(randomFamily(a)));
    return kOk;
  }
  if (a.family.empty()) throw Error(ErrorCode::MalformedInput, "--family is required for " + a.kind);
  Family family = codec::familyFrom(codec::readFile(a.family));
  if (a.horizon) family = family.truncated(*a.horizon);

  json result{{"kind", a.kind}};
  if (a.kind == "dominator") {
    const auto d = familyDominator(family);
    result["function"] = codec::toJson(d);
    std::vector<std::size_t> thresholds;
    for (const auto& f : family) thresholds.push_back(leastThreshold(Relation::Leq, f, d).threshold);
    result["thresholds"] = thresholds;
  } else if (a.kind == "ioe") {
    const auto g = roundRobinIOE(family);
    result["function"] = codec::toJson(g);
    result["hits"] = familyReport(Relation::Eq, g, family, ReportMode::Evading).hits;
  } else if (a.kind == "slalom") {
    const auto captured = familySlalom(family);
    result["slalom"] = codec::toJson(captured.slalom);
    result["thresholds"] = captured.thresholds;
  } else if (a.kind == "evdiff") {
    const auto captured = familySlalom(family);
    result["slalom"] = codec::toJson(captured.slalom);
    result["function"] = codec::toJson(sumEvaderBound(captured.slalom));
  } else {
    const auto captured = familySlalom(family);
    const auto target = evasionTarget(captured.slalom);
    result["slalom"] = codec::toJson(captured.slalom);
    result["strings"] = codec::toJson(target);
    result["encoded"] = codec::toJson(stringEncode(target));
  }
  emit(out, result);
  return kOk;
}

struct PosetArgs {
  std::string kind;
  std::string op = "leq";
  std::string a;
  std::string b;
  std::size_t n = 0;
};

int runPoset(const PosetArgs& p, std::ostream& out, std::ostream& err) {
  const PosetKind kind = parseKind(p.kind);
  const Condition a = codec::conditionFrom(codec::readFile(p.a));
  const Condition b = codec::conditionFrom(codec::readFile(p.b));
  const auto violation =
      p.op == "fusion" ? fusionViolation(kind, a, b, p.n) : leqViolation(kind, a, b);
  json report{{"kind", kindName(kind)}, {"op", p.op}, {"holds", !violation}};
  if (p.op == "fusion") report["n"] = p.n;
  if (violation) {
    report["clause"] = *violation;
    err << "order fails: " << *violation << "\n";
  }
  emit(out, report);
  return violation ? kFails : kOk;
}

struct ProjectArgs {
  std::string map;
  std::string cond;
  std::string lift;
  bool reduce = false;
};

int runProject(const ProjectArgs& p, std::ostream& out, std::ostream& err) {
  const bool toD = p.map == "loc-d";
  if (p.reduce && (toD || p.lift.empty())) {
    throw Error(ErrorCode::MalformedInput, "--reduce applies to loc-e lifts only");
  }
  std::optional<LocCond> c;
  std::optional<Condition> target;
  if (!p.cond.empty()) {
    auto parsed = codec::conditionFrom(codec::readFile(p.cond));
    if (!std::holds_alternative<LocCond>(parsed)) {
      throw Error(ErrorCode::KindMismatch, "--cond must be a loc condition");
    }
    c = std::get<LocCond>(std::move(parsed));
  }
  if (!p.lift.empty()) {
    const json doc = codec::readFile(p.lift);
    if (doc.is_object() && doc.contains("loc")) {
      auto pair = codec::liftPairFrom(doc);
      if (!c) c = std::move(pair.loc);
      target = std::move(pair.target);
    } else {
      target = codec::conditionFrom(doc);
    }
  }
  if (!c) throw Error(ErrorCode::MalformedInput, "a loc condition is required (--cond or a pair file)");

  if (!target) {
    emit(out, toD ? codec::toJson(projLocToD(*c)) : codec::toJson(projLocToE(*c)));
    return kOk;
  }

  json report{{"map", p.map}};
  LocCond lifted;
  Condition reprojected;
  bool reprojects = false;
  if (toD) {
    if (!std::holds_alternative<HechlerCond>(*target)) {
      throw Error(ErrorCode::KindMismatch, "loc-d lifts need a hechler target");
    }
    const auto& q = std::get<HechlerCond>(*target);
    lifted = liftLocToD(*c, q);
    const auto image = projLocToD(lifted);
    reprojects = image == q;
    reprojected = image;
  } else {
    if (!std::holds_alternative<ECond>(*target)) {
      throw Error(ErrorCode::KindMismatch, "loc-e lifts need an e target");
    }
    ECond q = std::get<ECond>(*target);
    if (p.reduce) {
      q = reduceE(q, c->length());
      report["reduced"] = codec::toJson(q);
    }
    lifted = liftLocToE(*c, q);
    const auto image = projLocToE(lifted);
    reprojects = image.stem == q.stem;
    reprojected = image;
  }
  const bool valid = validate(lifted).empty();
  const bool below = valid && leq(PosetKind::Loc, lifted, *c);
  report["lift"] = codec::toJson(lifted);
  report["reprojection"] = codec::toJson(reprojected);
  report["laws"] = {{"valid", valid}, {"below_cond", below}, {"reprojects", reprojects}};
  emit(out, report);
  const bool ok = valid && below && reprojects;
  if (!ok) err << "lift law fails\n";
  return ok ? kOk : kFails;
}

int runKb(bool list, const std::string& show, std::ostream& out) {
  const auto& kb = KnowledgeBase::builtin();
  if (!show.empty()) {
    const auto& profile = kb.lookup(show);
    json j = codec::parse(emitJson(profile.state));
    j["name"] = profile.name;
    j["case"] = profile.caseLabel;
    emit(out, j);
    return kOk;
  }
  (void)list;
  json arr = json::array();
  for (const auto& profile : kb.profiles()) {
    arr.push_back({{"name", profile.name},
                   {"case", profile.caseLabel},
                   {"citation", profile.state.citation}});
  }
  emit(out, {{"version", kb.version()}, {"profiles", std::move(arr)}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cichon diagram tooling for reduction concepts", "cichon"};
  app.require_subcommand(1);

  DiagramArgs diagramArgs;
  auto* diagram = app.add_subcommand("diagram", "Render the diagram, optionally for a forcing");
  diagram->add_option("--forcing", diagramArgs.forcing, "Forcing name; repeat to compose");
  diagram->add_option("--format", diagramArgs.format)->check(CLI::IsMember({"dot", "json"}));

  std::string cutsFormat = "json";
  auto* cuts = app.add_subcommand("cuts", "List every cut with its realizing forcing");
  cuts->add_option("--format", cutsFormat)->check(CLI::IsMember({"json", "text"}));

  CheckArgs checkArgs;
  auto* check = app.add_subcommand("check", "Least threshold of f R g");
  check->add_option("--relation", checkArgs.relation)->required()->check(CLI::IsMember({"leq", "neq", "in"}));
  check->add_option("--f", checkArgs.f, "FinFunc file")->required();
  check->add_option("--g", checkArgs.g, "FinFunc file, or slalom file for in")->required();

  ConstructArgs constructArgs;
  auto* construct = app.add_subcommand("construct", "Build a witness from a family");
  construct->add_option("--kind", constructArgs.kind)
      ->required()
      ->check(CLI::IsMember({"dominator", "ioe", "evdiff", "slalom", "evader", "random-family"}));
  construct->add_option("--family", constructArgs.family, "Family file");
  construct->add_option("--horizon", constructArgs.horizon, "Truncate (or, for random-family, set) the horizon");
  construct->add_option("--seed", constructArgs.seed, "Seed for random-family");
  construct->add_option("--size", constructArgs.size, "Member count for random-family");
  construct->add_option("--max", constructArgs.maxValue, "Largest value for random-family");

  PosetArgs posetArgs;
  auto* poset = app.add_subcommand("poset", "Compare two conditions");
  poset->add_option("--kind", posetArgs.kind)->required();
  poset->add_option("--op", posetArgs.op)->check(CLI::IsMember({"leq", "fusion"}));
  poset->add_option("--a", posetArgs.a)->required();
  poset->add_option("--b", posetArgs.b)->required();
  poset->add_option("--n", posetArgs.n, "Fusion level");

  ProjectArgs projectArgs;
  auto* project = app.add_subcommand("project", "Project a loc condition, or lift a target back");
  project->add_option("--map", projectArgs.map)->required()->check(CLI::IsMember({"loc-d", "loc-e"}));
  project->add_option("--cond", projectArgs.cond, "Loc condition file");
  project->add_option("--lift", projectArgs.lift, "Target condition, or a {loc, target} pair file");
  project->add_flag("--reduce", projectArgs.reduce, "Apply reduceE to the target before lifting");

  bool kbList = false;
  std::string kbShow;
  auto* kb = app.add_subcommand("kb", "Inspect the forcing knowledge base");
  kb->add_flag("--list", kbList);
  kb->add_option("--show", kbShow, "Print one profile");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "MalformedInput: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (diagram->parsed()) return runDiagram(diagramArgs, out);
    if (cuts->parsed()) return runCuts(cutsFormat, out);
    if (check->parsed()) return runCheck(checkArgs, out, err);
    if (construct->parsed()) return runConstruct(constructArgs, out);
    if (poset->parsed()) return runPoset(posetArgs, out, err);
    if (project->parsed()) return runProject(projectArgs, out, err);
    if (kb->parsed()) return runKb(kbList, kbShow, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace cichon::cli
