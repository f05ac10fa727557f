#ifndef LIMITSERIES_HILBERT_HPP
#define LIMITSERIES_HILBERT_HPP

#include <cstdint>

namespace limitseries {

/// Degree of a zero-dimensional subscheme of the plane.
using SchemeDegree = std::int64_t;

/// (d+1)(d+2)/2, the number of plane monomials of degree <= d.
std::int64_t plane_sections(std::int64_t d);
/// m(m+1)/2.
SchemeDegree fat_point_degree(std::int64_t m);
/// k^2 fat points of multiplicity m.
SchemeDegree square_union_degree(std::int64_t k, std::int64_t m);

std::int64_t virtual_hilbert(SchemeDegree deg, std::int64_t d);

/// Smallest d with (d+1)(d+2)/2 > deg.
std::int64_t critical_degree(SchemeDegree deg);

struct CriticalBoundsReport {
  std::int64_t k = 0, m = 0;
  std::int64_t d_c = 0;
  std::int64_t lower = 0;  // km + 1, claimed strictly below d_c
  std::int64_t upper = 0;  // km + k - 2
  bool lower_holds = false;
  bool upper_holds = false;
};

/// Evaluates km+1 < d_c <= km+k-2 for k^2 points of multiplicity m; k >= 4.
CriticalBoundsReport critical_bounds_report(std::int64_t k, std::int64_t m);

/// Both sides of the degree bookkeeping in the inductive step, with
/// d = km + s, Z' the (k-1)^2 remaining fat points and L of degree (k-s-2)m:
///   H_v(Z' u L, d-m) - B(d-m)   and   H_v(Z, d) - B(d).
struct BookkeepingSides {
  std::int64_t d = 0;
  SchemeDegree residual_degree = 0;  // deg(Z' u L)
  std::int64_t lhs = 0, rhs = 0;
};

/// Requires k >= 2 and 0 <= s <= k-2 (DomainError otherwise).
BookkeepingSides bookkeeping_sides(std::int64_t k, std::int64_t m, std::int64_t s);
bool bookkeeping_identity(std::int64_t k, std::int64_t m, std::int64_t s);

}  // namespace limitseries

#endif  // LIMITSERIES_HILBERT_HPP
