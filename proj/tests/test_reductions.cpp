#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "omatch/harness.hpp"
#include "omatch/offline_solver.hpp"
#include "omatch/reductions.hpp"

using namespace omatch;

namespace {

Instance omm2_unit(int c1 = 1, int c2 = 1) {
  Instance inst;
  inst.variant = Variant::Omm2;
  inst.servers = {{Point::at(-1.0), c1}, {Point::at(1.0), c2}};
  return inst;
}

RequestSequence reqs(std::initializer_list<double> coords) {
  RequestSequence seq;
  for (double c : coords) seq.requests.push_back(Point::at(c));
  return seq;
}

}  // namespace

TEST_CASE("rate conventions") {
  CHECK(rate(omm2_unit(), reqs({-1.0, 1.0})) == doctest::Approx(1.0));
  CHECK(rate(omm2_unit(), reqs({0.0, -1.0})) == doctest::Approx(3.0));

  // GREEDY positive with OPT zero does not happen on feasible inputs, but
  // a zero-cost instance exercises the 0/0 convention.
  CHECK(rate(omm2_unit(2, 0), reqs({-1.0, -1.0})) == doctest::Approx(1.0));
}

TEST_CASE("make_anti_opt leaves anti-opt inputs unchanged") {
  const Instance inst = omm2_unit();
  const auto seq = reqs({0.0, -1.0});
  REQUIRE(is_anti_opt(inst, seq));
  const ReducedInput out = make_anti_opt(inst, seq);
  CHECK(out.provenance.empty());
  CHECK(out.sequence.requests.size() == 2);
}

TEST_CASE("make_anti_opt strips same-matched requests") {
  const Instance inst = omm2_unit(2, 1);
  const auto seq = reqs({-1.0, 0.0, 1.0});
  const ReducedInput out = make_anti_opt(inst, seq);
  CHECK(is_anti_opt(out.instance, out.sequence));
  CHECK(rate(out.instance, out.sequence) >= rate(inst, seq) - 1e-9);
  CHECK_FALSE(out.provenance.empty());

  // Replaying the provenance against the original input reproduces the
  // reduced input exactly.
  Instance replay_inst = inst;
  RequestSequence replay_seq = seq;
  for (const auto& edit : out.provenance) {
    apply_edit(replay_inst, replay_seq, edit);
  }
  CHECK(replay_seq.requests.size() == out.sequence.requests.size());
  for (std::size_t i = 0; i < replay_seq.requests.size(); ++i) {
    CHECK(replay_seq.requests[i].coord == out.sequence.requests[i].coord);
  }
  for (std::size_t j = 0; j < replay_inst.servers.size(); ++j) {
    CHECK(replay_inst.servers[j].capacity ==
          out.instance.servers[j].capacity);
  }
}

TEST_CASE("a fully agreeing input reduces to the empty sequence") {
  const Instance inst = omm2_unit(1, 1);
  const ReducedInput out = make_anti_opt(inst, reqs({-1.0, 1.0}));
  CHECK(out.sequence.requests.empty());
  CHECK(rate(out.instance, out.sequence) == doctest::Approx(1.0));
}

TEST_CASE("make_anti_opt keeps the rate non-decreasing at every step") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto [inst, seq] = random_omm2_instance(seed, 8);
    const ReducedInput out = make_anti_opt(inst, seq);
    CHECK(is_anti_opt(out.instance, out.sequence));

    Instance cur_inst = inst;
    RequestSequence cur_seq = seq;
    double prev = rate(cur_inst, cur_seq);
    for (const auto& edit : out.provenance) {
      apply_edit(cur_inst, cur_seq, edit);
      const double next = rate(cur_inst, cur_seq);
      if (std::isfinite(prev)) {
        CHECK(next >= prev - 1e-9);
      }
      prev = next;
    }
  }
}

TEST_CASE("one-sided-priority predicate") {
  const Instance inst = omm2_unit(1, 1);
  CHECK(is_one_sided_priority(inst, reqs({0.0, -1.0})));
  const Instance wide = omm2_unit(2, 2);
  // Greedy alternates here: s1, s2, s1, s2.
  CHECK_FALSE(is_one_sided_priority(wide, reqs({-0.5, 0.5, -0.4, 0.6})));
}

TEST_CASE("make_one_sided_priority requires an anti-opt input") {
  const Instance inst = omm2_unit(2, 1);
  CHECK_THROWS_AS(make_one_sided_priority(inst, reqs({-1.0, 0.0, 1.0})),
                  PreconditionError);
}

TEST_CASE("one-sided reduction preserves both costs and Definition 3") {
  const GreedyAlgorithm greedy;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto [inst, seq] = random_omm2_instance(seed, 8);
    const ReducedInput anti = make_anti_opt(inst, seq);
    if (anti.sequence.requests.empty()) continue;
    ++checked;
    const double greedy_before =
        run_game(anti.instance, greedy, anti.sequence).total_cost;
    const double opt_before =
        optimal_assignment(anti.instance, anti.sequence).total_cost;

    const ReducedInput out =
        make_one_sided_priority(anti.instance, anti.sequence);
    CHECK(is_one_sided_priority(out.instance, out.sequence));
    CHECK(is_anti_opt(out.instance, out.sequence));
    const double greedy_after =
        run_game(out.instance, greedy, out.sequence).total_cost;
    const double opt_after =
        optimal_assignment(out.instance, out.sequence).total_cost;
    CHECK(greedy_after == doctest::Approx(greedy_before).epsilon(1e-9));
    CHECK(opt_after == doctest::Approx(opt_before).epsilon(1e-9));
    CHECK(rate(out.instance, out.sequence) >=
          rate(anti.instance, anti.sequence) - 1e-9);
  }
  CHECK(checked > 10);
}
