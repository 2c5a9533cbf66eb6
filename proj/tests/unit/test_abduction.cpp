#include <doctest.h>

#include "../support/fixtures.hpp"
#include "isarepair/abduction.hpp"
#include "isarepair/error.hpp"

using namespace isarepair;

namespace {

IsaStatement isa(std::string a, std::string b) { return {std::move(a), std::move(b)}; }

std::set<RepairingAction> as_set(const std::vector<RepairingAction>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("basic variant on MyPizza") {
  auto t = fixtures::pizza();
  auto r = repair_single(t, isa("MyPizza", "FishyMeatyPizza"));
  CHECK(r.candidates.size() == 11);
  std::set<RepairingAction> expected{
      RepairingAction::of({isa("MyPizza", "FishyMeatyPizza")}),
      RepairingAction::of({isa("AnchoviesTopping", "FishTopping"), isa("ParmaHamTopping", "MeatTopping")}),
      RepairingAction::of({isa("ParmaHamTopping", "FishTopping"), isa("AnchoviesTopping", "MeatTopping")}),
  };
  CHECK(as_set(r.actions) == expected);
}

TEST_CASE("basic variant on MyFruttiDiMare") {
  auto t = fixtures::pizza();
  auto r = repair_single(t, isa("MyFruttiDiMare", "NonVegetarianPizza"));
  std::set<RepairingAction> expected{
      RepairingAction::of({isa("MyFruttiDiMare", "NonVegetarianPizza")}),
      RepairingAction::of({isa("AnchoviesTopping", "FishTopping")}),
      RepairingAction::of({isa("AnchoviesTopping", "MeatTopping")}),
  };
  CHECK(as_set(r.actions) == expected);
}

TEST_CASE("optimized and combine") {
  auto t = fixtures::pizza();
  auto r = repair_single_optimized(t, isa("MyPizza", "FishyMeatyPizza"));
  CHECK(r.actions.size() == 3);
  auto report = run_abduction(t, fixtures::pizza_missing(), {.expand_alternatives = true});
  CHECK(report.combined.actions.size() == 5);
}

namespace {

using NameSet = std::set<std::string>;
using PosNeg = std::pair<NameSet, NameSet>;

// Per-individual (Pos, Neg) pairs, ignoring which individual carries them.
std::multiset<PosNeg> shape(const std::vector<PosNegSets>& sets) {
  std::multiset<PosNeg> out;
  for (const auto& s : sets) {
    PosNeg pn;
    for (const auto& n : s.pos) pn.first.insert(n.str());
    for (const auto& n : s.neg) pn.second.insert(n.str());
    out.insert(pn);
  }
  return out;
}

std::set<IsaStatement> pairs(std::initializer_list<std::pair<const char*, const char*>> l) {
  std::set<IsaStatement> out;
  for (auto [a, b] : l) out.insert(isa(a, b));
  return out;
}

const PosNeg kX{{"MyPizza", "Pizza"}, {"FishyMeatyPizza"}};

}  // namespace

TEST_CASE("leaf closure sets of the pizza graph") {
  auto t = fixtures::pizza();
  auto g = build_completion_graph(t, parse_concept("MyPizza and not FishyMeatyPizza", t.roles()));
  auto leaves = leaf_closures(g);
  REQUIRE(leaves.size() == 5);
  std::map<std::string, LeafClosure> by_label;
  for (auto& l : leaves) by_label[l.label] = l;

  const NameSet anch{"AnchoviesTopping", "~AnchoviesTopping", "PizzaTopping"};
  const NameSet parma{"ParmaHamTopping", "~ParmaHamTopping", "PizzaTopping"};
  auto with_meat = [](NameSet s) {
    s.insert("MeatTopping");
    s.insert("~MeatTopping");
    return s;
  };
  const NameSet fish{"FishTopping"}, fish_bar{"FishTopping", "~FishTopping"}, meat_bar{"MeatTopping", "~MeatTopping"};

  const auto six = pairs({{"MyPizza", "FishyMeatyPizza"},
                          {"Pizza", "FishyMeatyPizza"},
                          {"AnchoviesTopping", "FishTopping"},
                          {"PizzaTopping", "FishTopping"},
                          {"ParmaHamTopping", "FishTopping"},
                          {"MeatTopping", "FishTopping"}});

  CHECK(shape(by_label["1.2.2.2"].sets) == std::multiset<PosNeg>{kX, {with_meat(anch), fish}, {with_meat(parma), fish}});
  CHECK(by_label["1.2.2.2"].closure == six);

  CHECK(shape(by_label["1.2.2.3"].sets) == std::multiset<PosNeg>{kX, {with_meat(anch), fish}, {parma, fish_bar}});
  CHECK(by_label["1.2.2.3"].closure == six);

  CHECK(shape(by_label["1.2.3.2"].sets) == std::multiset<PosNeg>{kX, {anch, fish_bar}, {with_meat(parma), fish}});
  CHECK(by_label["1.2.3.2"].closure == six);

  CHECK(shape(by_label["1.2.3.3"].sets) == std::multiset<PosNeg>{kX, {anch, fish_bar}, {parma, fish_bar}});
  CHECK(by_label["1.2.3.3"].closure == pairs({{"MyPizza", "FishyMeatyPizza"},
                                               {"Pizza", "FishyMeatyPizza"},
                                               {"AnchoviesTopping", "FishTopping"},
                                               {"PizzaTopping", "FishTopping"},
                                               {"ParmaHamTopping", "FishTopping"}}));

  CHECK(shape(by_label["1.3.2.2"].sets) == std::multiset<PosNeg>{kX, {anch, meat_bar}, {parma, meat_bar}});
  CHECK(by_label["1.3.2.2"].closure == pairs({{"MyPizza", "FishyMeatyPizza"},
                                               {"Pizza", "FishyMeatyPizza"},
                                               {"AnchoviesTopping", "MeatTopping"},
                                               {"PizzaTopping", "MeatTopping"},
                                               {"ParmaHamTopping", "MeatTopping"}}));

  auto closed = g.find("1.1");
  REQUIRE(closed);
  CHECK_THROWS_AS(extract_closure_set(g, *closed), Error);
}

TEST_CASE("empty Neg gives an empty closure set") {
  PosNegSets s;
  s.pos = {ConceptName::original("A")};
  s.neg = {ConceptName::bar_of(ConceptName::original("B"))};
  CHECK(closure_pairs({s}).empty());
}

TEST_CASE("per-node closure sets of the optimized variant") {
  auto t = fixtures::pizza();
  auto g = build_completion_graph(t, parse_concept("MyPizza and not FishyMeatyPizza", t.roles()));
  std::map<std::string, NodeClosure> by_label;
  for (auto& n : node_closures(g)) by_label[n.label] = n;

  REQUIRE(by_label.contains("1"));
  const NameSet none;
  CHECK(shape(by_label["1"].sets) ==
        std::multiset<PosNeg>{kX,
                              {{"AnchoviesTopping", "~AnchoviesTopping", "PizzaTopping"}, none},
                              {{"ParmaHamTopping", "~ParmaHamTopping", "PizzaTopping"}, none}});
  CHECK(by_label["1"].closure == pairs({{"MyPizza", "FishyMeatyPizza"}, {"Pizza", "FishyMeatyPizza"}}));

  REQUIRE(by_label.contains("1.2"));
  std::multiset<PosNeg> row12;
  for (auto pn : shape(by_label["1.2"].sets)) {
    if (!pn.first.empty() || !pn.second.empty()) row12.insert(pn);
  }
  CHECK(row12 == std::multiset<PosNeg>{{none, {"FishTopping"}}, {none, {"FishTopping"}}});
  CHECK(by_label["1.2"].closure == pairs({{"AnchoviesTopping", "FishTopping"},
                                          {"PizzaTopping", "FishTopping"},
                                          {"ParmaHamTopping", "FishTopping"}}));
  CHECK(by_label["1.3"].closure == pairs({{"AnchoviesTopping", "MeatTopping"},
                                          {"PizzaTopping", "MeatTopping"},
                                          {"ParmaHamTopping", "MeatTopping"}}));
  CHECK(by_label["1.2.2"].closure == pairs({{"MeatTopping", "FishTopping"}}));

  auto basic = repair_single(t, isa("MyPizza", "FishyMeatyPizza"));
  auto opt = repair_single_optimized(t, isa("MyPizza", "FishyMeatyPizza"));
  CHECK(as_set(opt.actions) == as_set(basic.actions));
}

TEST_CASE("combined solutions for the pizza missing relations") {
  auto t = fixtures::pizza();
  auto report = run_abduction(t, fixtures::pizza_missing());
  std::set<RepairingAction> expected{
      RepairingAction::of({isa("MyPizza", "FishyMeatyPizza"), isa("MyFruttiDiMare", "NonVegetarianPizza")}),
      RepairingAction::of({isa("AnchoviesTopping", "FishTopping"), isa("ParmaHamTopping", "MeatTopping")}),
      RepairingAction::of({isa("ParmaHamTopping", "FishTopping"), isa("AnchoviesTopping", "MeatTopping")}),
      RepairingAction::of({isa("MyPizza", "FishyMeatyPizza"), isa("AnchoviesTopping", "FishTopping")}),
      RepairingAction::of({isa("MyPizza", "FishyMeatyPizza"), isa("AnchoviesTopping", "MeatTopping")}),
  };
  CHECK(as_set(report.combined.actions) == expected);
}

TEST_CASE("combine over a single relation") {
  auto t = fixtures::pizza();
  auto m = isa("MyFruttiDiMare", "NonVegetarianPizza");
  auto r = repair_single(t, m);
  auto c = combine(t, {m}, {r.actions});
  auto per = r.actions;
  per.push_back(RepairingAction::of({m}));
  CHECK(as_set(c.actions) == as_set(minimize(per)));
}

TEST_CASE("Source and Target sets") {
  auto t = fixtures::pizza();
  auto a = source_target_sets(t, isa("AnchoviesTopping", "FishTopping"));
  CHECK(a.source == std::vector<std::string>{"AnchoviesTopping"});
  CHECK(a.target == std::vector<std::string>{"FishTopping"});
  auto p = source_target_sets(t, isa("ParmaHamTopping", "MeatTopping"));
  CHECK(p.source == std::vector<std::string>{"ParmaHamTopping"});
  CHECK(p.target == std::vector<std::string>{"HamTopping", "MeatTopping"});

  auto tiny = load_terminology("concept P <= top;\nconcept Q <= top;\n");
  auto pq = source_target_sets(tiny, isa("P", "Q"));
  CHECK(pq.source == std::vector<std::string>{"P"});
  CHECK(pq.target == std::vector<std::string>{"Q"});
}

TEST_CASE("alternative repairing actions") {
  auto t = fixtures::pizza();
  auto original = RepairingAction::of({isa("AnchoviesTopping", "FishTopping"), isa("ParmaHamTopping", "MeatTopping")});
  auto alts = expand_alternatives(t, original);
  REQUIRE(alts.size() == 2);
  CHECK(alts[0] == original);
  CHECK(alts[1] == RepairingAction::of({isa("AnchoviesTopping", "FishTopping"), isa("ParmaHamTopping", "HamTopping")}));

  auto single = RepairingAction::of({isa("AnchoviesTopping", "FishTopping")});
  CHECK(expand_alternatives(t, single) == std::vector<RepairingAction>{single});

  // Two axioms, each with a two-element Target set.
  auto u = load_terminology(
      "concept P <= top;\nconcept Q <= top;\nconcept Q1 <= Q;\nconcept R <= top;\nconcept S <= top;\nconcept S1 <= S;\n");
  auto two = expand_alternatives(u, RepairingAction::of({isa("P", "Q"), isa("R", "S")}));
  CHECK(two.size() == 4);

  // Every coherent alternative still repairs the relation.
  auto report = run_abduction(t, fixtures::pizza_missing(), {.expand_alternatives = true});
  for (const auto& set : report.alternatives) {
    for (const auto& alt : set.alternatives) {
      for (const auto& m : fixtures::pizza_missing()) CHECK(action_repairs(t, alt, m));
    }
  }
}

TEST_CASE("abduction preconditions") {
  auto t = fixtures::pizza();
  auto code = [&](std::vector<IsaStatement> m) {
    try {
      check_preconditions(t, m);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code({}) == ErrorCode::PreconditionViolated);
  CHECK(code({isa("HamTopping", "MeatTopping")}) == ErrorCode::AlreadyEntailed);
  CHECK(code({isa("Nope", "Pizza")}) == ErrorCode::UnknownName);
  CHECK(code({isa("AnchoviesTopping", "FishTopping"), isa("AnchoviesTopping", "MeatTopping")}) ==
        ErrorCode::PreconditionViolated);
  CHECK_NOTHROW(check_preconditions(t, fixtures::pizza_missing()));
  CHECK_THROWS_AS(repair_single(t, isa("HamTopping", "MeatTopping")), Error);
}

TEST_CASE("adding a closure pair removes open leaves") {
  auto t = fixtures::pizza();
  auto c = parse_concept("MyPizza and not FishyMeatyPizza", t.roles());
  auto g = build_completion_graph(t, c);
  const auto before = g.open_leaves().size();
  for (const auto& leaf : leaf_closures(g)) {
    for (const auto& pair : leaf.closure) {
      Terminology ext;
      try {
        ext = add_isa_acyclic(t, pair).terminology;
      } catch (const Error&) {
        continue;  // cyclic additions are never offered as actions
      }
      auto g2 = build_completion_graph(ext, c);
      CHECK_MESSAGE(g2.open_leaves().size() < before, pair.str(), " at ", leaf.label);
    }
  }
}

TEST_CASE("action ordering and minimization") {
  auto a = RepairingAction::of({isa("A", "B")});
  auto ab = RepairingAction::of({isa("A", "B"), isa("C", "D")});
  auto c = RepairingAction::of({isa("C", "D")});
  CHECK(a < ab);
  CHECK(a < c);
  CHECK(minimize({ab, c, a, a}) == std::vector<RepairingAction>{a, c});
  CHECK(ab.str() == "{A <= B, C <= D}");
}
