#include "doctest.h"

#include <algorithm>

#include "limitseries/enriques.hpp"
#include "limitseries/errors.hpp"

using namespace limitseries;

TEST_CASE("four-point constellation") {
  const auto d = four_point_constellation();
  CHECK(d.size() == 8);
  CHECK(d.vertices[4].proximate_to == std::set<int>{0, 2});
  CHECK(d.vertices[7].proximate_to == std::set<int>{3, 6});
  CHECK(d.proximate_points(0) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(d.proximate_points(3) == std::vector<int>{5, 6, 7});
  CHECK_NOTHROW(d.check_structure());
}

TEST_CASE("unloaded diagrams and their degree") {
  const auto d = four_point_constellation();
  CHECK_THROWS_AS(is_unloaded(d), MultiplicitiesUnset);

  EnriquesDiagram single;
  single.vertices.push_back({0, {}});
  CHECK(is_unloaded(single.with_multiplicities({3})));
  CHECK(diagram_degree(single.with_multiplicities({3})) == 6);

  EnriquesDiagram star = single;
  for (int i = 1; i <= 3; ++i) star.vertices.push_back({i, {0}});
  const auto heavy = star.with_multiplicities({2, 1, 1, 1});
  CHECK_FALSE(is_unloaded(heavy));
  CHECK(loaded_vertices(heavy) == std::vector<int>{0});
  CHECK_THROWS_AS(diagram_degree(heavy), NotUnloaded);

  const auto example = d.with_multiplicities({8, 2, 1, 3, 1, 0, 0, 0});
  CHECK(is_unloaded(example));
  CHECK(diagram_degree(example) == 47);
  const auto variant = d.with_multiplicities({8, 2, 1, 3, 0, 1, 0, 0});
  CHECK(is_unloaded(variant));
  CHECK(diagram_degree(variant) == 47);
  CHECK(diagram_degree(d.with_multiplicities(std::vector<int>(8, 0))) == 0);

  CHECK_THROWS_AS(d.with_multiplicities({1, 2}), LengthMismatch);
}

TEST_CASE("lowering a multiplicity never loads another vertex") {
  const auto d = four_point_constellation();
  for (const auto& v : search_multiplicities(3)) {
    for (std::size_t j = 1; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      auto w = v;
      --w[j];
      for (int bad : loaded_vertices(d.with_multiplicities(w))) CHECK(bad == static_cast<int>(j));
    }
  }
}

TEST_CASE("degree and unloadedness survive relabeling") {
  const auto d = four_point_constellation();
  // New vertex i is old vertex perm[i]; the order stays compatible with proximity.
  const std::vector<int> perm{0, 3, 1, 5, 2, 6, 4, 7};
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  EnriquesDiagram relabeled;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    std::set<int> prox;
    for (int j : d.vertices[static_cast<std::size_t>(perm[i])].proximate_to) prox.insert(inv[static_cast<std::size_t>(j)]);
    relabeled.vertices.push_back({static_cast<int>(i), prox});
  }
  REQUIRE_NOTHROW(relabeled.check_structure());
  for (const auto& v : search_multiplicities(2)) {
    std::vector<int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[static_cast<std::size_t>(perm[i])];
    const auto r = relabeled.with_multiplicities(w);
    CHECK(is_unloaded(r));
    CHECK(diagram_degree(r) == diagram_degree(d.with_multiplicities(v)));
  }
}

TEST_CASE("multiplicity search") {
  for (int m = 1; m <= 12; ++m) {
    const auto found = search_multiplicities(m);
    CHECK_FALSE(found.empty());
    CHECK(std::is_sorted(found.begin(), found.end()));
    const auto d = four_point_constellation();
    for (const auto& v : found) {
      CHECK(v[0] <= 2 * m);
      CHECK(diagram_degree(d.with_multiplicities(v)) == 2 * m * (m + 1));
    }
  }
  const auto four = search_multiplicities(4);
  CHECK(std::any_of(four.begin(), four.end(), [](const std::vector<int>& v) { return v[0] == 7; }));
  const auto one = search_multiplicities(1);
  CHECK(std::find(one.begin(), one.end(), std::vector<int>{2, 1, 0, 0, 0, 0, 0, 0}) != one.end());
  CHECK_THROWS_AS(search_multiplicities(17), ResourceLimit);
  CHECK_THROWS_AS(search_multiplicities(0), DomainError);
}

TEST_CASE("three-point reference data") {
  const auto t = three_point_reference(2);
  CHECK(t.root == 12);
  CHECK(t.shapes[0] == regular(4));
  CHECK(t.shapes[1] == f_staircase(4));
}
