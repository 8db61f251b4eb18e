#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "fixtures.hpp"
#include "submod/experiments.hpp"
#include "submod/rng.hpp"
#include "submod/setfun.hpp"

using namespace submod;
using testfix::tiny_coverage;
using testfix::sel;

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 100; ++i) differs |= (a2.next() != c.next());
  CHECK(differs);

  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("rng distributions stay in range with plausible moments") {
  Rng rng(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);

  for (int i = 0; i < n; ++i) {
    const int k = rng.uniform_int(3, 7);
    CHECK(k >= 3);
    CHECK(k <= 7);
  }

  sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sum2 / n - 1.0) < 0.05);
}

TEST_CASE("counter-based noise is a pure function of its counters") {
  CHECK(hash_u01(1, 2, 3, 4, 5) == hash_u01(1, 2, 3, 4, 5));
  CHECK(hash_u01(1, 2, 3, 4, 5) != hash_u01(1, 2, 3, 4, 6));
  CHECK(hash_normal(9, 0, 0, 0, 0) == hash_normal(9, 0, 0, 0, 0));
  double mean = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) mean += hash_u01(11, i, 0, 0, 0);
  CHECK(std::abs(mean / n - 0.5) < 0.01);
}

TEST_CASE("selection stores decision order and rejects duplicates") {
  Selection s;
  s.add({1, 0});
  s.add({0, 0});
  CHECK(s.size() == 2);
  CHECK(s[0].agent_id == 1);
  CHECK(s[1].agent_id == 0);
  CHECK(s.contains({1, 0}));
  CHECK(s.contains_agent(0));
  CHECK_FALSE(s.contains({1, 1}));
  CHECK_THROWS_AS(s.add({1, 0}), std::invalid_argument);
}

TEST_CASE("matroid feasibility: at most one action per agent") {
  SimplePartitionMatroid m({2, 3});
  CHECK(matroid_feasible(m, sel({})));
  CHECK(matroid_feasible(m, sel({{0, 0}, {1, 2}})));
  CHECK_FALSE(matroid_feasible(m, sel({{0, 0}, {0, 1}})));
  CHECK_THROWS_AS(matroid_feasible(m, sel({{2, 0}})), std::invalid_argument);
  CHECK_THROWS_AS(SimplePartitionMatroid({1, 0}), std::invalid_argument);
}

TEST_CASE("tiny coverage fixture: values, derivatives, optimum") {
  const auto t = tiny_coverage();
  const auto& f = *t.problem;

  CHECK(f.value(sel({})) == doctest::Approx(0.0));
  CHECK(f.value(sel({t.a1})) == doctest::Approx(2.0));
  CHECK(f.value(sel({t.b1})) == doctest::Approx(2.0));
  CHECK(f.value(sel({t.b2})) == doctest::Approx(1.0));
  CHECK(f.value(sel({t.a1, t.b1})) == doctest::Approx(2.0));
  CHECK(f.value(sel({t.a1, t.b2})) == doctest::Approx(3.0));

  CHECK(marginal_gain(f, t.b2, sel({t.a1})) == doctest::Approx(1.0));
  CHECK(marginal_gain(f, t.a1, sel({})) == doctest::Approx(f.value(sel({t.a1}))));
  CHECK_THROWS_AS(marginal_gain(f, t.a1, sel({t.a1})), std::invalid_argument);

  CHECK(second_derivative(f, t.a1, t.b1, sel({})) == doctest::Approx(-2.0));
  CHECK(second_derivative(f, t.a1, t.b2, sel({})) == doctest::Approx(0.0));
  CHECK(second_derivative(f, t.a1, t.b1, sel({})) ==
        doctest::Approx(second_derivative(f, t.b1, t.a1, sel({}))));
  CHECK_THROWS_AS(second_derivative(f, t.a1, t.a1, sel({})), std::invalid_argument);
  CHECK_THROWS_AS(second_derivative(f, t.a1, t.b1, sel({t.a1})), std::invalid_argument);

  const auto [best, opt] = brute_force_optimum(f, t.matroid);
  CHECK(opt == doctest::Approx(3.0));
  CHECK(best.contains(t.a1));
  CHECK(best.contains(t.b2));
}

TEST_CASE("brute force: trivial cases and enumeration cap") {
  const auto t = tiny_coverage();
  SimplePartitionMatroid single({3});
  // f == 0 picks the lexicographically first basis.
  struct Zero final : SetObjective {
    double value(const Selection&) const override { return 0.0; }
  } zero;
  const auto [s, v] = brute_force_optimum(zero, single);
  CHECK(v == 0.0);
  CHECK(s.size() == 1);
  CHECK(s[0].action_id == 0);

  SimplePartitionMatroid huge(std::vector<int>(40, 4));
  CHECK_THROWS_AS(brute_force_optimum(zero, huge), std::length_error);
}

TEST_CASE("chain rule over random instances") {
  const auto r = check_chain_rule(300, 12345);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("coverage objectives are monotone, submodular, 3-increasing") {
  const auto r = check_coverage_orders(300, 999);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("generic evaluator matches direct evaluation") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_prob_instance(rng);
    GenericEvaluator ev(*inst.problem);
    Selection base;
    for (const auto& x : inst.ground) {
      if (base.contains_agent(x.agent_id)) continue;
      CHECK(ev.gain(x) == doctest::Approx(marginal_gain(*inst.problem, x, base)).epsilon(1e-12));
      base.add(x);
      ev.add(x);
      CHECK(ev.value() == doctest::Approx(inst.problem->value(base)).epsilon(1e-12));
    }
  }
}

TEST_CASE("block_gains default agrees with per-element gains") {
  Rng rng(77);
  const auto inst = random_prob_instance(rng, 4, 4, 6);
  auto ev = inst.problem->make_evaluator();
  for (int i = 0; i < inst.matroid.n_agents(); ++i) {
    std::vector<double> gains;
    ev->block_gains(i, inst.matroid.block_size(i), gains);
    for (int a = 0; a < inst.matroid.block_size(i); ++a)
      CHECK(gains[a] == doctest::Approx(ev->gain({i, a})).epsilon(1e-12));
  }
}
