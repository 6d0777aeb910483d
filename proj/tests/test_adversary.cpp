#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <doctest.h>

#include "omatch/adversary.hpp"
#include "omatch/harness.hpp"

using namespace omatch;

namespace {

bool is_punish(const RatioReport& report) {
  return report.branch_label == "punish-infinite";
}

std::string base_branch(const std::string& label) {
  return label.rfind("mirror-", 0) == 0 ? label.substr(7) : label;
}

const BranchForm& form_for(ScenarioKind kind, const std::string& label) {
  static std::map<std::pair<ScenarioKind, std::string>, BranchForm> cache;
  const auto key = std::make_pair(kind, base_branch(label));
  auto it = cache.find(key);
  if (it == cache.end()) {
    for (const auto& form : enumerate_branches(kind)) {
      cache.emplace(std::make_pair(kind, form.label), form);
    }
    it = cache.find(key);
    REQUIRE(it != cache.end());
  }
  return it->second;
}

}  // namespace

TEST_CASE("first emissions of each adversary") {
  SUBCASE("omm2 with unit capacities probes the origin immediately") {
    Adversary adv(Scenario::omm2());
    const auto first = adv.next(GameTrace{});
    REQUIRE(first.has_value());
    CHECK(first->coord == doctest::Approx(0.0));
  }
  SUBCASE("ofal(3) opens at p(s2) + x") {
    Adversary adv(Scenario::ofal(3));
    const auto first = adv.next(GameTrace{});
    REQUIRE(first.has_value());
    CHECK(first->coord ==
          doctest::Approx(std::sqrt(6.0) - 1.0).epsilon(1e-12));
  }
  SUBCASE("ofal(5) punishes a non-central first match") {
    const Scenario sc = Scenario::ofal(5);
    const Instance inst = make_instance(sc);
    Adversary adv(sc);
    GameTrace trace;
    const auto r1 = adv.next(trace);
    REQUIRE(r1.has_value());
    CHECK(r1->coord == doctest::Approx(2.0));
    // Algorithm answers with s2 instead of s3.
    trace.steps.push_back({*r1, 1, 1.0});
    std::vector<double> rest;
    while (auto r = adv.next(trace)) {
      rest.push_back(r->coord);
      trace.steps.push_back({*r, static_cast<int>(r->coord), 0.0});
    }
    CHECK(rest == std::vector<double>{0.0, 1.0, 3.0, 4.0});
    CHECK(adv.branch_label() == "punish-infinite");
  }
}

TEST_CASE("desync is detected") {
  Adversary adv(Scenario::ofal(3));
  GameTrace fake;
  fake.steps.push_back({Point::at(0.0), 0, 0.0});
  CHECK_THROWS_AS(adv.next(fake), DesyncError);
}

TEST_CASE("greedy reaches the published branch on every scenario") {
  SUBCASE("omm2: costs 3 and 1") {
    const auto report = play_game(Scenario::omm2(), GreedyAlgorithm{});
    CHECK(report.alg_cost == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(report.opt_cost == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.ratio == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("ofal(3): case 2-1 with ratio 1+sqrt(6)") {
    const auto report = play_game(Scenario::ofal(3), GreedyAlgorithm{});
    CHECK(report.branch_label == "case2-1");
    CHECK(report.alg_cost ==
          doctest::Approx(8.0 - 2.0 * std::sqrt(6.0)).epsilon(1e-12));
    CHECK(report.opt_cost ==
          doctest::Approx(2.0 * std::sqrt(6.0) - 4.0).epsilon(1e-12));
    CHECK(report.ratio ==
          doctest::Approx(1.0 + std::sqrt(6.0)).epsilon(1e-12));
  }
  SUBCASE("ofal(4) and ofal(5) land on finite certified branches") {
    for (int k : {4, 5}) {
      const auto report = play_game(Scenario::ofal(k), GreedyAlgorithm{});
      const auto kind = k == 4 ? ScenarioKind::Ofal4 : ScenarioKind::Ofal5;
      const auto& form = form_for(kind, report.branch_label);
      CHECK(report.alg_cost == doctest::Approx(form.alg_cost).epsilon(1e-12));
      CHECK(report.opt_cost == doctest::Approx(form.opt_cost).epsilon(1e-12));
    }
  }
}

TEST_CASE("enumerate_branches matches the closed forms") {
  const double s6 = std::sqrt(6.0);
  const double s73 = std::sqrt(73.0);

  const auto k3 = enumerate_branches(ScenarioKind::Ofal3);
  REQUIRE(k3.size() == 3);
  for (const auto& form : k3) {
    CHECK(form.ratio == doctest::Approx(1.0 + s6).epsilon(1e-12));
    CHECK(form.alg_cost / form.opt_cost ==
          doctest::Approx(1.0 + s6).epsilon(1e-12));
  }
  const auto k4 = enumerate_branches(ScenarioKind::Ofal4);
  CHECK(k4[0].alg_cost == doctest::Approx((15.0 - s73) / 2.0));
  CHECK(k4[0].opt_cost == doctest::Approx((s73 - 7.0) / 2.0));
  for (const auto& form : k4) {
    CHECK(form.ratio == doctest::Approx((4.0 + s73) / 3.0).epsilon(1e-12));
  }
  const auto k5 = enumerate_branches(ScenarioKind::Ofal5);
  CHECK(k5[2].alg_cost == doctest::Approx(65.0 / 8.0));
  CHECK(k5[2].opt_cost == doctest::Approx(15.0 / 8.0));
  CHECK(k5[1].ratio == doctest::Approx(81.0 / 17.0).epsilon(1e-12));

  double best = std::numeric_limits<double>::infinity();
  for (const auto& form : k3) best = std::min(best, form.ratio);
  CHECK(best == doctest::Approx(1.0 + s6).epsilon(1e-12));
}

TEST_CASE("gameplay agrees with the closed forms for every policy") {
  const std::map<ScenarioKind, Scenario> scenarios = {
      {ScenarioKind::Omm2, Scenario::omm2()},
      {ScenarioKind::Ofal3, Scenario::ofal(3)},
      {ScenarioKind::Ofal4, Scenario::ofal(4)},
      {ScenarioKind::Ofal5, Scenario::ofal(5)},
  };
  for (const auto& [kind, scenario] : scenarios) {
    const auto runs = sweep_policies(scenario);
    const double bound = scenario_bound(kind);
    std::set<std::string> seen;
    for (const auto& run : runs) {
      const auto& report = run.report;
      if (is_punish(report)) {
        CHECK(report.opt_cost <= 1e-9);
        CHECK(report.alg_cost > 1e-9);
        CHECK(std::isinf(report.ratio));
        continue;
      }
      seen.insert(base_branch(report.branch_label));
      const auto& form = form_for(kind, report.branch_label);
      CHECK(report.alg_cost == doctest::Approx(form.alg_cost).epsilon(1e-9));
      CHECK(report.opt_cost == doctest::Approx(form.opt_cost).epsilon(1e-9));
      CHECK(report.ratio >= bound - 1e-9);
      CHECK(is_surrounding_oriented(make_instance(scenario), report.trace));
    }
    // Every finite branch of the construction is actually reachable.
    CHECK(seen.size() == enumerate_branches(kind).size());
    CHECK(min_finite_ratio(runs) == doctest::Approx(bound).epsilon(1e-9));
  }
}

TEST_CASE("punish branches have zero OPT cost and infinite ratio") {
  for (const Scenario& sc :
       {Scenario::omm2(1.0, 2, 2), Scenario::ofal(3, 2), Scenario::ofal(4, 2),
        Scenario::ofal(5, 2)}) {
    const auto report = play_game(sc, AvoidHomePolicy{});
    CHECK(is_punish(report));
    CHECK(report.opt_cost <= 1e-9);
    CHECK(report.alg_cost > 1e-9);
    CHECK(std::isinf(report.ratio));
  }
}

TEST_CASE("the adversary never exceeds the capacity budget") {
  for (const Scenario& sc :
       {Scenario::omm2(1.0, 3, 2), Scenario::ofal(3, 3), Scenario::ofal(4, 2),
        Scenario::ofal(5, 3)}) {
    const Instance inst = make_instance(sc);
    for (const char* name : {"greedy", "always-left", "always-right",
                             "avoid-home"}) {
      const auto alg = make_algorithm(name);
      Adversary adv(sc);
      const auto report = play_game(inst, *alg, adv);
      CHECK(static_cast<int>(report.trace.steps.size()) <=
            inst.total_capacity());
    }
  }
}

TEST_CASE("capacity generalization: prefix requests cost nothing") {
  for (int ell : {2, 3}) {
    const auto base = play_game(Scenario::omm2(), GreedyAlgorithm{});
    const auto wide =
        play_game(Scenario::omm2(1.0, ell, ell), GreedyAlgorithm{});
    CHECK(wide.ratio == doctest::Approx(base.ratio).epsilon(1e-9));
    for (int k : {3, 4, 5}) {
      const auto unit = play_game(Scenario::ofal(k), GreedyAlgorithm{});
      const auto big = play_game(Scenario::ofal(k, ell), GreedyAlgorithm{});
      CHECK(big.ratio == doctest::Approx(unit.ratio).epsilon(1e-9));
      CHECK(big.branch_label == unit.branch_label);
    }
  }
}
