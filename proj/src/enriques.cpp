#include "limitseries/enriques.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "limitseries/errors.hpp"

namespace limitseries {

std::vector<int> EnriquesDiagram::proximate_points(int i) const {
  std::vector<int> out;
  for (const auto& v : vertices)
    if (v.proximate_to.count(i)) out.push_back(v.id);
  return out;
}

void EnriquesDiagram::check_structure() const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& v = vertices[i];
    if (v.id != static_cast<int>(i)) throw DomainError("vertex ids must be 0, 1, 2, ...");
    if (i == 0 && !v.proximate_to.empty()) throw DomainError("the root has no proximities");
    if (i > 0 && (v.proximate_to.empty() || v.proximate_to.size() > 2))
      throw DomainError("vertex " + std::to_string(i) + " must be proximate to one or two points");
    for (int j : v.proximate_to)
      if (j < 0 || j >= v.id) throw DomainError("vertex " + std::to_string(i) + " is proximate to a later point");
  }
  if (multiplicities) {
    if (multiplicities->size() != vertices.size()) throw LengthMismatch("one multiplicity per vertex");
    for (int m : *multiplicities)
      if (m < 0) throw DomainError("multiplicities must be nonnegative");
  }
}

EnriquesDiagram EnriquesDiagram::with_multiplicities(std::vector<int> m) const {
  EnriquesDiagram out = *this;
  out.multiplicities = std::move(m);
  out.check_structure();
  return out;
}

EnriquesDiagram four_point_constellation() {
  EnriquesDiagram d;
  const std::vector<std::set<int>> prox{{}, {0}, {0}, {0}, {0, 2}, {0, 3}, {3, 5}, {3, 6}};
  for (std::size_t i = 0; i < prox.size(); ++i) d.vertices.push_back({static_cast<int>(i), prox[i]});
  return d;
}

std::vector<int> loaded_vertices(const EnriquesDiagram& d) {
  if (!d.multiplicities) throw MultiplicitiesUnset("diagram has no multiplicities");
  d.check_structure();
  const auto& m = *d.multiplicities;
  std::vector<int> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    int load = 0;
    for (int j : d.proximate_points(static_cast<int>(i))) load += m[static_cast<std::size_t>(j)];
    if (m[i] < load) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool is_unloaded(const EnriquesDiagram& d) { return loaded_vertices(d).empty(); }

std::int64_t diagram_degree(const EnriquesDiagram& d) {
  if (!is_unloaded(d)) throw NotUnloaded("the degree formula needs an unloaded diagram");
  std::int64_t s = 0;
  for (int m : *d.multiplicities) s += static_cast<std::int64_t>(m) * (m + 1) / 2;
  return s;
}

std::vector<std::vector<int>> search_multiplicities(int m) {
  if (m < 1) throw DomainError("m must be positive");
  if (m > kSearchMaxM) throw ResourceLimit("search is limited to m <= " + std::to_string(kSearchMaxM));
  const auto diag = four_point_constellation();
  const std::size_t n = diag.size();
  const std::int64_t target = 4 * static_cast<std::int64_t>(m) * (m + 1) / 2;

  // Assign vertices in order; a vertex is bounded by the remaining room of
  // every earlier vertex it is proximate to, and by the remaining degree.
  std::vector<int> cur(n, 0), room(n, 0);
  std::vector<std::vector<int>> out;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t deg) {
    if (i == n) {
      if (deg == target) out.push_back(cur);
      return;
    }
    int cap = i == 0 ? 2 * m : std::numeric_limits<int>::max();
    for (int j : diag.vertices[i].proximate_to) cap = std::min(cap, room[static_cast<std::size_t>(j)]);
    for (int v = 0; v <= cap; ++v) {
      const std::int64_t next = deg + static_cast<std::int64_t>(v) * (v + 1) / 2;
      if (next > target) break;
      cur[i] = v;
      room[i] = v;
      for (int j : diag.vertices[i].proximate_to) room[static_cast<std::size_t>(j)] -= v;
      rec(i + 1, next);
      for (int j : diag.vertices[i].proximate_to) room[static_cast<std::size_t>(j)] += v;
    }
    cur[i] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PeriodFourRow> period_four_report(int max_m) {
  if (max_m + 4 > kSearchMaxM) throw ResourceLimit("report needs searches up to m + 4 <= " + std::to_string(kSearchMaxM));
  auto roots = [](int m) {
    std::set<int> r;
    for (const auto& v : search_multiplicities(m)) r.insert(v[0]);
    return r;
  };
  std::vector<PeriodFourRow> out;
  for (int m = 1; m <= max_m; ++m) {
    PeriodFourRow row{m, roots(m), roots(m + 4), false};
    for (int r : row.roots) row.offset_seven = row.offset_seven || row.roots_next.count(r + 7) > 0;
    out.push_back(std::move(row));
  }
  return out;
}

ThreePointDescriptor three_point_reference(int k) {
  if (k < 1) throw DomainError("k must be positive");
  return {k, 6 * k, {regular(2 * k), f_staircase(2 * k)}};
}

}  // namespace limitseries
