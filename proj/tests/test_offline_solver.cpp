#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "omatch/harness.hpp"
#include "omatch/offline_solver.hpp"
#include "omatch/online.hpp"

using namespace omatch;

namespace {

Instance omm2_unit() {
  Instance inst;
  inst.variant = Variant::Omm2;
  inst.servers = {{Point::at(-1.0), 1}, {Point::at(1.0), 1}};
  return inst;
}

Instance ofal_unit(int k, int ell = 1) {
  Instance inst;
  inst.variant = Variant::Ofal;
  for (int i = 0; i < k; ++i) {
    inst.servers.push_back({Point::at(static_cast<double>(i)), ell});
  }
  return inst;
}

RequestSequence reqs(std::initializer_list<double> coords) {
  RequestSequence seq;
  for (double c : coords) seq.requests.push_back(Point::at(c));
  return seq;
}

}  // namespace

TEST_CASE("optimal assignment on the two-server lower-bound input") {
  const Instance inst = omm2_unit();
  const auto plan = optimal_assignment(inst, reqs({0.0, -1.0}));
  CHECK(plan.total_cost == doctest::Approx(1.0).epsilon(1e-12));
  // Origin goes to s2, the request at -1 to s1.
  CHECK(plan.pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
}

TEST_CASE("requests at server positions cost nothing") {
  const Instance inst = ofal_unit(3);
  const auto plan = optimal_assignment(inst, reqs({2.0, 0.0, 1.0}));
  CHECK(plan.total_cost == doctest::Approx(0.0));
}

TEST_CASE("optimal assignment matches the k=3 case 2-1 value") {
  const double x = std::sqrt(6.0) - 2.0;
  const double y = 3.0 * std::sqrt(6.0) - 7.0;
  const Instance inst = ofal_unit(3);
  const auto plan = optimal_assignment(inst, reqs({1.0 + x, 1.0 - y, 0.0}));
  CHECK(plan.total_cost ==
        doctest::Approx(2.0 * std::sqrt(6.0) - 4.0).epsilon(1e-12));
}

TEST_CASE("brute force agrees on the named examples") {
  const double x = std::sqrt(6.0) - 2.0;
  const double y = 3.0 * std::sqrt(6.0) - 7.0;
  struct Case {
    Instance inst;
    RequestSequence seq;
  };
  const Case cases[] = {
      {omm2_unit(), reqs({0.0, -1.0})},
      {ofal_unit(3), reqs({2.0, 0.0, 1.0})},
      {ofal_unit(3), reqs({1.0 + x, 1.0 - y, 0.0})},
  };
  for (const auto& c : cases) {
    const auto exact = optimal_assignment(c.inst, c.seq);
    const auto oracle = brute_force_assignment(c.inst, c.seq);
    CHECK(exact.total_cost == doctest::Approx(oracle.total_cost).epsilon(1e-12));
    CHECK(exact.pairs == oracle.pairs);
  }
}

TEST_CASE("lexicographic tie rule") {
  // A request midway between the servers can go either way at equal cost;
  // the canonical plan picks the lower server index.
  const Instance inst = omm2_unit();
  const auto plan = optimal_assignment(inst, reqs({0.0}));
  CHECK(plan.pairs == std::vector<std::pair<int, int>>{{0, 0}});
  const auto oracle = brute_force_assignment(inst, reqs({0.0}));
  CHECK(oracle.pairs == plan.pairs);
}

TEST_CASE("assignment_cost recomputes independently") {
  const Instance inst = omm2_unit();
  SUBCASE("empty plan") {
    CHECK(assignment_cost(inst, reqs({}), AssignmentPlan{}) == 0.0);
  }
  SUBCASE("zero-cost pair") {
    AssignmentPlan plan;
    plan.pairs = {{0, 0}};
    CHECK(assignment_cost(inst, reqs({-1.0}), plan) == 0.0);
  }
  SUBCASE("ofal(5) case 2-2 optimal plan costs 15/8") {
    const Instance five = ofal_unit(5);
    const auto seq = reqs({2.0, 2.0, 7.0 / 8.0, 3.0, 4.0});
    const auto plan = optimal_assignment(five, seq);
    CHECK(assignment_cost(five, seq, plan) ==
          doctest::Approx(15.0 / 8.0).epsilon(1e-12));
  }
  SUBCASE("dangling index") {
    AssignmentPlan plan;
    plan.pairs = {{0, 5}};
    CHECK_THROWS_AS(assignment_cost(inst, reqs({0.0}), plan),
                    InvalidPlanError);
  }
}

TEST_CASE("errors: infeasible input and oversized oracle") {
  const Instance inst = omm2_unit();
  CHECK_THROWS_AS(optimal_assignment(inst, reqs({0, 0, 0})),
                  CapacityExceededError);
  Instance big = omm2_unit();
  big.servers[0].capacity = 20;
  RequestSequence long_seq;
  for (int i = 0; i < 11; ++i) long_seq.requests.push_back(Point::at(0.0));
  CHECK_THROWS_AS(brute_force_assignment(big, long_seq), OracleSizeError);
}

TEST_CASE("solver equals brute force on random instances") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto [inst, seq] = random_omm2_instance(seed, 8);
    const auto exact = optimal_assignment(inst, seq);
    const auto oracle = brute_force_assignment(inst, seq);
    CHECK(std::abs(exact.total_cost - oracle.total_cost) < 1e-9);
  }
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto [inst, seq] = random_ofal_instance(seed, 8);
    const auto exact = optimal_assignment(inst, seq);
    const auto oracle = brute_force_assignment(inst, seq);
    CHECK(std::abs(exact.total_cost - oracle.total_cost) < 1e-9);
  }
}

TEST_CASE("optimal cost never exceeds any online trace cost") {
  const GreedyAlgorithm greedy;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [inst, seq] = random_omm2_instance(seed, 10);
    const auto trace = run_game(inst, greedy, seq);
    const auto plan = optimal_assignment(inst, seq);
    CHECK(plan.total_cost <= trace.total_cost + 1e-9);
  }
}

TEST_CASE("optimal cost is invariant under request permutation") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto [inst, seq] = random_omm2_instance(seed, 8);
    const double before = optimal_assignment(inst, seq).total_cost;
    std::shuffle(seq.requests.begin(), seq.requests.end(), rng);
    const double after = optimal_assignment(inst, seq).total_cost;
    CHECK(before == doctest::Approx(after).epsilon(1e-9));
  }
}
