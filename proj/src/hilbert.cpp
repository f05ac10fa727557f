#include "limitseries/hilbert.hpp"

#include <algorithm>
#include <string>

#include "limitseries/errors.hpp"

namespace limitseries {

std::int64_t plane_sections(std::int64_t d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

SchemeDegree fat_point_degree(std::int64_t m) { return m * (m + 1) / 2; }

SchemeDegree square_union_degree(std::int64_t k, std::int64_t m) { return k * k * fat_point_degree(m); }

std::int64_t virtual_hilbert(SchemeDegree deg, std::int64_t d) { return std::min(plane_sections(d), deg); }

std::int64_t critical_degree(SchemeDegree deg) {
  std::int64_t d = 0;
  while (plane_sections(d) <= deg) ++d;
  return d;
}

CriticalBoundsReport critical_bounds_report(std::int64_t k, std::int64_t m) {
  if (k < 4) throw DomainError("critical degree bounds are stated for k >= 4, got k = " + std::to_string(k));
  if (m < 1) throw DomainError("multiplicity must be positive");
  CriticalBoundsReport r;
  r.k = k;
  r.m = m;
  r.d_c = critical_degree(square_union_degree(k, m));
  r.lower = k * m + 1;
  r.upper = k * m + k - 2;
  r.lower_holds = r.lower < r.d_c;
  r.upper_holds = r.d_c <= r.upper;
  return r;
}

BookkeepingSides bookkeeping_sides(std::int64_t k, std::int64_t m, std::int64_t s) {
  if (k < 2) throw DomainError("bookkeeping needs k >= 2");
  if (s < 0 || s > k - 2) throw DomainError("s must satisfy 0 <= s <= k-2, got s = " + std::to_string(s));
  BookkeepingSides b;
  b.d = k * m + s;
  b.residual_degree = square_union_degree(k - 1, m) + (k - s - 2) * m;
  b.lhs = virtual_hilbert(b.residual_degree, b.d - m) - plane_sections(b.d - m);
  b.rhs = virtual_hilbert(square_union_degree(k, m), b.d) - plane_sections(b.d);
  return b;
}

bool bookkeeping_identity(std::int64_t k, std::int64_t m, std::int64_t s) {
  const auto b = bookkeeping_sides(k, m, s);
  return b.lhs == b.rhs;
}

}  // namespace limitseries
