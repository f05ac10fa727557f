#ifndef LIMITSERIES_TESTS_CORPUS_HPP
#define LIMITSERIES_TESTS_CORPUS_HPP

// Seeded random instances (E, v, n_1 > ... > n_r) shared by the unit tests
// and the acceptance runner.

#include <algorithm>
#include <random>
#include <vector>

#include "limitseries/horace.hpp"
#include "limitseries/localring.hpp"
#include "limitseries/staircase.hpp"

namespace limitseries::testing {

struct ChainInstance {
  Staircase e;
  int v;
  std::vector<int> ns;
};

inline Staircase random_plane_staircase(std::mt19937_64& rng, int max_cells) {
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_cells));
  const auto all = staircases_of_degree(n);
  return all[rng() % all.size()];
}

/// Levels obey the gap rule n_j - n_{j+1} >= v and avoid n_j = v h for
/// every column height h of E.
inline ChainInstance random_chain_instance(std::mt19937_64& rng, int max_cells = 20, int max_speed = 3,
                                           int max_levels = 3) {
  for (;;) {
    ChainInstance in{random_plane_staircase(rng, max_cells), 1 + static_cast<int>(rng() % max_speed), {}};
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_levels));
    const int top = in.v * (in.e.max_height() + 1);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(top));
    std::vector<int> rev{n};
    for (int j = 1; j < r; ++j) {
      n += in.v + static_cast<int>(rng() % static_cast<unsigned>(in.v + 1));
      rev.push_back(n);
    }
    in.ns.assign(rev.rbegin(), rev.rend());
    if (!is_boundary(in.e, in.v, in.ns)) return in;
  }
}

inline RingContext chain_context(const ChainInstance& in, std::uint64_t prime = kDefaultPrime) {
  RingContext ctx;
  ctx.dim = in.e.dim();
  ctx.field = PrimeField(prime);
  ctx.x_cap = required_caps(in.e, in.v, in.ns).chain_cap;
  return ctx;
}

struct InclusionInstance {
  SpecializationPlan plan;
  DivisorSystem system;
};

/// Plane system of degree <= 6 with one or two sliding sites and enough
/// fat points R_r on D for the degree count to hold at every level.
inline InclusionInstance random_inclusion_instance(std::mt19937_64& rng, int max_degree = 6) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  for (;;) {
    InclusionInstance in;
    auto& plan = in.plan;
    const int sites = pick(1, 2);
    int vmax = 1, hmax = 0;
    for (int j = 0; j < sites; ++j) {
      plan.shapes.push_back(random_plane_staircase(rng, 4));
      plan.speeds.push_back(pick(1, 2));
      vmax = std::max(vmax, plan.speeds.back());
      hmax = std::max(hmax, plan.shapes.back().max_height());
    }
    const int r = pick(1, 2);
    int n = pick(1, vmax * (hmax + 1));
    std::vector<int> rev{n};
    for (int j = 1; j < r; ++j) {
      n += vmax + pick(0, 1);
      rev.push_back(n);
    }
    plan.levels.assign(rev.rbegin(), rev.rend());
    if (has_boundary(validate_plan(plan))) continue;

    in.system.d = pick(2, max_degree);
    int count = 0;
    for (;; ++count) {
      in.system.on_divisor.assign(static_cast<std::size_t>(count), regular(r));
      const auto verdicts = hypothesis_check(plan, in.system, HypothesisMode::DegreeCount);
      if (std::all_of(verdicts.begin(), verdicts.end(), [](const LevelVerdict& v) { return v.holds; })) break;
    }
    // Points on D beyond d + 1 make the system divisible by x^r outright.
    if (count > in.system.d) continue;
    return in;
  }
}

}  // namespace limitseries::testing

#endif  // LIMITSERIES_TESTS_CORPUS_HPP
