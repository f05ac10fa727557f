#ifndef LIMITSERIES_ENRIQUES_HPP
#define LIMITSERIES_ENRIQUES_HPP

// Enriques diagrams of clusters of infinitely near points, the four-point
// collision constellation, and the search for its multiplicity vectors.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "limitseries/staircase.hpp"

namespace limitseries {

struct EnriquesVertex {
  int id = 0;
  std::set<int> proximate_to;  ///< earlier vertices; empty only for the root
};

struct EnriquesDiagram {
  std::vector<EnriquesVertex> vertices;
  std::optional<std::vector<int>> multiplicities;

  std::size_t size() const { return vertices.size(); }
  /// Vertices proximate to i.
  std::vector<int> proximate_points(int i) const;
  /// Root first, references earlier ids only, at most two proximities.
  void check_structure() const;
  EnriquesDiagram with_multiplicities(std::vector<int> m) const;
};

/// q0; q1, q2, q3 free on Q0; q4 = Q0 n Q2; q5 = Q0 n Q3; q6 = Q3 n Q5; q7 = Q6 n Q3.
EnriquesDiagram four_point_constellation();

/// m_i >= sum of m_j over the points j proximate to i, at every vertex.
bool is_unloaded(const EnriquesDiagram& d);
/// Vertices where the proximity inequality fails.
std::vector<int> loaded_vertices(const EnriquesDiagram& d);

/// sum m_i (m_i + 1) / 2; throws NotUnloaded.
std::int64_t diagram_degree(const EnriquesDiagram& d);

inline constexpr int kSearchMaxM = 16;

/// Unloaded vectors on the constellation of degree 4 m(m+1)/2 with m_0 <= 2m,
/// sorted lexicographically. Throws ResourceLimit above kSearchMaxM.
std::vector<std::vector<int>> search_multiplicities(int m);

struct PeriodFourRow {
  int m = 0;
  std::set<int> roots;       ///< values of m_0 found for m
  std::set<int> roots_next;  ///< values of m_0 found for m + 4
  bool offset_seven = false; ///< some root r for m has r + 7 among the roots for m + 4
};

/// Consistency report over m = 1..max_m; a report, not a claim.
std::vector<PeriodFourRow> period_four_report(int max_m);

/// Data of the three-point reference system: root multiplicity 6k and the
/// staircases (R_{2k}, F_{2k}).
struct ThreePointDescriptor {
  int k = 0;
  int root = 0;
  StaircaseTuple shapes;
};
ThreePointDescriptor three_point_reference(int k);

}  // namespace limitseries

#endif  // LIMITSERIES_ENRIQUES_HPP
