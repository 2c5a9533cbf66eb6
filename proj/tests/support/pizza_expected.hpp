#pragma once

// Reference values for the pizza fixture: leaf (Pos, Neg) sets and closure
// sets of the MyPizza ⊓ ¬FishyMeatyPizza graph, per-node rows of the
// optimized variant, and the expected actions.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "isarepair/abduction.hpp"

namespace pizza_expected {

using isarepair::IsaStatement;
using isarepair::RepairingAction;
using NameSet = std::set<std::string>;
using PosNeg = std::pair<NameSet, NameSet>;

// Per-individual (Pos, Neg) pairs, ignoring which individual carries them.
inline std::multiset<PosNeg> shape(const std::vector<isarepair::PosNegSets>& sets) {
  std::multiset<PosNeg> out;
  for (const auto& s : sets) {
    PosNeg pn;
    for (const auto& n : s.pos) pn.first.insert(n.str());
    for (const auto& n : s.neg) pn.second.insert(n.str());
    out.insert(pn);
  }
  return out;
}

inline std::set<IsaStatement> pairs(std::initializer_list<std::pair<const char*, const char*>> l) {
  std::set<IsaStatement> out;
  for (auto [a, b] : l) out.insert(IsaStatement{a, b});
  return out;
}

struct Row {
  std::multiset<PosNeg> sets;
  std::set<IsaStatement> closure;
};

inline const PosNeg kX{{"MyPizza", "Pizza"}, {"FishyMeatyPizza"}};

// Open leaves by label.
inline std::map<std::string, Row> leaves() {
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
  return {
      {"1.2.2.2", {{kX, {with_meat(anch), fish}, {with_meat(parma), fish}}, six}},
      {"1.2.2.3", {{kX, {with_meat(anch), fish}, {parma, fish_bar}}, six}},
      {"1.2.3.2", {{kX, {anch, fish_bar}, {with_meat(parma), fish}}, six}},
      {"1.2.3.3",
       {{kX, {anch, fish_bar}, {parma, fish_bar}},
        pairs({{"MyPizza", "FishyMeatyPizza"},
               {"Pizza", "FishyMeatyPizza"},
               {"AnchoviesTopping", "FishTopping"},
               {"PizzaTopping", "FishTopping"},
               {"ParmaHamTopping", "FishTopping"}})}},
      {"1.3.2.2",
       {{kX, {anch, meat_bar}, {parma, meat_bar}},
        pairs({{"MyPizza", "FishyMeatyPizza"},
               {"Pizza", "FishyMeatyPizza"},
               {"AnchoviesTopping", "MeatTopping"},
               {"PizzaTopping", "MeatTopping"},
               {"ParmaHamTopping", "MeatTopping"}})}},
  };
}

// Root row of the optimized variant.
inline Row root_row() {
  const NameSet none;
  return {{kX,
           {{"AnchoviesTopping", "~AnchoviesTopping", "PizzaTopping"}, none},
           {{"ParmaHamTopping", "~ParmaHamTopping", "PizzaTopping"}, none}},
          pairs({{"MyPizza", "FishyMeatyPizza"}, {"Pizza", "FishyMeatyPizza"}})};
}

// Row 1.2, restricted to individuals with nonempty sets.
inline Row row_1_2() {
  const NameSet none;
  return {{{none, {"FishTopping"}}, {none, {"FishTopping"}}},
          pairs({{"AnchoviesTopping", "FishTopping"}, {"PizzaTopping", "FishTopping"}, {"ParmaHamTopping", "FishTopping"}})};
}

inline std::set<RepairingAction> my_pizza_actions() {
  return {RepairingAction::of({{"MyPizza", "FishyMeatyPizza"}}),
          RepairingAction::of({{"AnchoviesTopping", "FishTopping"}, {"ParmaHamTopping", "MeatTopping"}}),
          RepairingAction::of({{"ParmaHamTopping", "FishTopping"}, {"AnchoviesTopping", "MeatTopping"}})};
}

inline std::set<RepairingAction> frutti_actions() {
  return {RepairingAction::of({{"MyFruttiDiMare", "NonVegetarianPizza"}}),
          RepairingAction::of({{"AnchoviesTopping", "FishTopping"}}),
          RepairingAction::of({{"AnchoviesTopping", "MeatTopping"}})};
}

inline std::set<RepairingAction> combined_actions() {
  return {RepairingAction::of({{"MyPizza", "FishyMeatyPizza"}, {"MyFruttiDiMare", "NonVegetarianPizza"}}),
          RepairingAction::of({{"AnchoviesTopping", "FishTopping"}, {"ParmaHamTopping", "MeatTopping"}}),
          RepairingAction::of({{"ParmaHamTopping", "FishTopping"}, {"AnchoviesTopping", "MeatTopping"}}),
          RepairingAction::of({{"MyPizza", "FishyMeatyPizza"}, {"AnchoviesTopping", "FishTopping"}}),
          RepairingAction::of({{"MyPizza", "FishyMeatyPizza"}, {"AnchoviesTopping", "MeatTopping"}})};
}

}  // namespace pizza_expected
