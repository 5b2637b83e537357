#ifndef DYNCOMP_GEN_HPP
#define DYNCOMP_GEN_HPP

#include "dyncomp/action.hpp"
#include "dyncomp/scenario.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dyncomp {

// Random finite models:
//   "z"          rotations of one or more cycles
//   "z2"         coordinate shifts on one or more tori
//   "heisenberg" left translation on H(Z/k), or a, b shifting a torus with c trivial
struct RandomModelOptions {
  std::string group = "z";
  std::size_t min_points = 2;
  std::size_t max_points = 144;
  bool transitive = true;
  bool metric = false;  // shortest-path metric with random edge weights
  bool relabel = true;  // hide the model's structure behind a random relabeling
};

FiniteMetricAction random_action(std::mt19937_64& rng, const RandomModelOptions& options);

// First k entries of a uniformly shuffled 0..n-1, sorted.
std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t k);

// Cycle metric d(i, j) = min(|i-j|, n-|i-j|) on 0..n-1.
Metric cycle_metric(std::size_t n);

struct RandomScenarioOptions {
  RandomModelOptions model;
  double a_fraction = 0.05;
  double b_fraction = 0.4;
};

Scenario random_scenario(std::uint64_t seed, const RandomScenarioOptions& options);

}  // namespace dyncomp

#endif  // DYNCOMP_GEN_HPP
