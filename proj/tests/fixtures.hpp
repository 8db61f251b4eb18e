#pragma once

// Shared hand-checkable fixtures for the test suite.

#include <memory>
#include <vector>

#include "submod/objectives.hpp"
#include "submod/setfun.hpp"

namespace testfix {

// Two-agent weighted coverage instance, small enough to verify every
// quantity by hand:
//   agent 0 ("a") has one action  a1;
//   agent 1 ("b") has two actions b1, b2;
//   event e1 (value 2) is detected with certainty by a1 and by b1;
//   event e2 (value 1) is detected with certainty by b2.
// Values: f(a1)=f(b1)=2, f(b2)=1, f(a1,b1)=2, f(a1,b2)=3, f(b1)=2.
// Optimum {a1, b2} = 3; myopic picks {a1, b1} = 2.
struct TinyCoverage {
  std::shared_ptr<submod::ProbCoverageProblem> problem;
  submod::SimplePartitionMatroid matroid{std::vector<int>{1, 2}};

  static constexpr submod::GroundElement a1{0, 0};
  static constexpr submod::GroundElement b1{1, 0};
  static constexpr submod::GroundElement b2{1, 1};
};

inline TinyCoverage tiny_coverage() {
  using submod::Event;
  using submod::GroundElement;
  std::vector<Event> events{{{0.2, 0.2}, 2.0}, {{0.8, 0.8}, 1.0}};
  auto failure = [](const GroundElement& x, int event) -> double {
    if (event == 0) return (x.agent_id == 0 || x.action_id == 0) ? 0.0 : 1.0;
    return (x.agent_id == 1 && x.action_id == 1) ? 0.0 : 1.0;
  };
  TinyCoverage t;
  t.problem = std::make_shared<submod::ProbCoverageProblem>(events, std::vector<int>{1, 2}, failure);
  return t;
}

inline submod::Selection sel(std::initializer_list<submod::GroundElement> xs) {
  submod::Selection s;
  for (const auto& x : xs) s.add(x);
  return s;
}

}  // namespace testfix
