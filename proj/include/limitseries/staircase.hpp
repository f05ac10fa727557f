#ifndef LIMITSERIES_STAIRCASE_HPP
#define LIMITSERIES_STAIRCASE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace limitseries {

/// Exponent vector; for a staircase of dim d, a base index has d-1 entries.
using Exponent = std::vector<int>;

/// Finite staircase E in N^d, stored through its height function.
///
/// A cell (a_1, ..., a_d) belongs to E iff a_1 < h(a_2, ..., a_d). Only the
/// positive heights are stored. The height function satisfies
/// h(a + b) <= h(a), so the complement of E is stable under N^d translation.
class Staircase {
 public:
  using HeightMap = std::map<Exponent, int>;

  /// Empty staircase of the given dimension.
  explicit Staircase(int dim = 2);

  /// Validating constructor; throws MonotonicityViolation or DomainError.
  static Staircase from_heights(int dim, const HeightMap& heights);
  /// d = 2 shorthand: heights[y] is the x_1-depth over column y.
  static Staircase from_columns(const std::vector<int>& heights);
  /// d = 1 staircase {0, ..., len-1}.
  static Staircase segment(int len);
  /// d = 2 staircase with the given cells; throws if they do not form a staircase.
  static Staircase from_cells(const std::vector<std::pair<int, int>>& cells);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool empty() const { return degree_ == 0; }
  int height(const Exponent& base) const;
  int max_height() const;
  const HeightMap& heights() const { return heights_; }

  bool contains(const Exponent& cell) const;
  /// All cells, each of length dim(), in lexicographic order of (a_2.., a_1).
  std::vector<Exponent> cells() const;
  /// Largest total degree of a cell, or -1 when empty.
  int max_cell_degree() const;

  /// d = 2: heights as a dense vector indexed by the column y.
  std::vector<int> columns() const;
  /// d = 2: row lengths, rows()[x] = #{y : (x, y) in E}.
  std::vector<int> rows() const;

  /// Minimal exponents of the complement, i.e. minimal monomial generators of I^E.
  std::vector<Exponent> complement_generators() const;

  bool operator==(const Staircase& o) const { return dim_ == o.dim_ && heights_ == o.heights_; }
  bool operator!=(const Staircase& o) const { return !(*this == o); }

 private:
  int dim_;
  int degree_ = 0;
  HeightMap heights_;
};

using StaircaseTuple = std::vector<Staircase>;

/// R_m: cells with x + y < m.
Staircase regular(int m);
/// F_m: h(y) = h_{R_m}(floor(y / 2)).
Staircase f_staircase(int m);

/// T(E, k) as a staircase of dim d - 1.
Staircase slice(const Staircase& e, int k);
/// T(E, k) embedded in N^d at x_1 = 0 (heights 0 or 1).
Staircase slice_embedded(const Staircase& e, int k);

/// S(E, t): suppression of the t-th slice.
Staircase suppress(const Staircase& e, int t);
/// S(E, t_1, ..., t_r) as a left fold.
Staircase suppress_seq(const Staircase& e, const std::vector<int>& ts);

StaircaseTuple slice_tuple(const StaircaseTuple& es, const std::vector<int>& ts);
StaircaseTuple suppress_tuple(const StaircaseTuple& es, const std::vector<int>& ts);

/// Smallest m with R_m in E in R_{m+1}, if any. d = 2 only.
std::optional<int> is_quasi_regular(const Staircase& e);
/// (x, y) in E and y > 0 implies (x + 1, y - 1) in E. d = 2 only.
bool is_right_specialized(const Staircase& e);

/// Collision of E and F along the x_2 axis: row lengths add.
Staircase vertical_collision(const Staircase& e, const Staircase& f);

/// All d = 2 staircases with exactly n cells (partitions of n).
std::vector<Staircase> staircases_of_degree(int n);

/// Cell grid, x_1 horizontal, x_2 growing upward.
std::string ascii_grid(const Staircase& e);

}  // namespace limitseries

#endif  // LIMITSERIES_STAIRCASE_HPP
