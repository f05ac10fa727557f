#ifndef LIMITSERIES_HORACE_HPP
#define LIMITSERIES_HORACE_HPP

// Specialization plans for monomial schemes sliding onto a line, their
// hypothesis checks, residuals, and the recursive certificate for k^2 fat
// points of equal multiplicity.
//
// The divisor is D = {x = 0} in the affine chart of P^2. A site sliding to
// (0, y_j) with speed v sits at (t^v, y_j) with local coordinates
// (x - t^v, y - y_j), so x_1 is the coordinate normal to D.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limitseries/field.hpp"
#include "limitseries/interp.hpp"
#include "limitseries/staircase.hpp"

namespace limitseries {

struct SpecializationPlan {
  StaircaseTuple shapes;
  std::vector<int> speeds;
  std::vector<int> levels;  ///< n_1 > ... > n_r
  std::string divisor = "x=0";

  int r() const { return static_cast<int>(levels.size()); }
  /// t_i = (floor(n_i / v_1), ...), 1-based level.
  std::vector<int> floors(int i) const;
  /// T_i = T(E, t_i).
  StaircaseTuple slices(int i) const;
  /// deg Z_i = sum of the slice lengths.
  int slice_total(int i) const;
  /// S(E, t_1, ..., t_r).
  StaircaseTuple residual() const;
  /// Residual predicted by the special fiber of the residual chain; differs
  /// from residual() only on boundary levels n_i = v_j h.
  StaircaseTuple algebraic_residual() const;
  /// Throws DomainError or LengthMismatch on malformed plans.
  void check_structure() const;
};

/// Degrees of the base conditions seen on D at each level.
struct LineSystemModel {
  int d = 0;
  std::vector<int> line_base_degrees;  ///< index i-1 for level i
  std::string ambient = "P2";

  int base_degree(int i) const;
};

struct Finding {
  enum class Kind { GapViolation, BoundaryWarning };
  enum class Severity { Warning, Error };
  Kind kind;
  Severity severity;
  int level;  ///< 1-based
  int site;   ///< 0-based, -1 when not site specific
  std::string message;
};

std::string to_string(Finding::Kind k);

/// Gap rule n_i - n_{i+1} >= max v and the boundary n_i != v_j h.
std::vector<Finding> validate_plan(const SpecializationPlan& plan);
bool has_errors(const std::vector<Finding>& findings);
bool has_boundary(const std::vector<Finding>& findings);

struct NagataSetup {
  int k = 0, m = 0, s = 0, N = 0;
  SpecializationPlan plan;
  LineSystemModel model;
};

/// (k-1) copies of R_m; k-s-2 slow speeds N and s+1 fast speeds N+1 with
/// N = m+1; levels n_i = (N+1)(m-i+1) - 1 for i = 1..m; d = km + s.
NagataSetup build_nagata_plan(int k, int m, int s);

struct SliceDegreeLevel {
  int level = 0;
  std::vector<int> degrees;  ///< m - floor(n_i / v_j) per sliding point
  int total = 0;
  int by_count = 0;     ///< s + 1 + (i-1)(k-1)
  int by_cardinal = 0;  ///< d - i + 2 - k(m-i+1)
  bool holds = false;
};

/// Per-level slice degrees of a Nagata plan; throws IdentityFailure when the
/// three counts disagree.
std::vector<SliceDegreeLevel> slice_degree_table(const NagataSetup& setup);

enum class HypothesisMode { DegreeCount, Oracle };

struct LevelVerdict {
  int level = 0;
  int slice_degree = 0;       ///< deg Z_i
  int base_degree = 0;        ///< base conditions on D at this level
  int restricted_degree = 0;  ///< d - i + 1
  bool holds = false;
  std::optional<std::int64_t> dim_with_slice;  ///< oracle: dim L(-(i-1)D - Z_i)
  std::optional<std::int64_t> dim_next;        ///< oracle: dim L(-iD)
};

/// Degree count on D: deg Z_i + base_i >= d - i + 2 forces the restriction to vanish.
std::vector<LevelVerdict> hypothesis_check(const SpecializationPlan& plan, const LineSystemModel& model);

/// A concrete base system of degree d: schemes at generic points of D (with
/// the normal direction as x_1) and schemes at generic points off D.
struct DivisorSystem {
  int d = 0;
  StaircaseTuple on_divisor;
  std::vector<Site> off_divisor;

  /// Base degree on D at level i is the sum of |T(F, i-1)| over on-D schemes F.
  LineSystemModel model(int levels) const;
};

struct OracleOptions {
  std::uint64_t seed = 1;
  std::uint64_t prime = kDefaultPrime;
  int trials = 2;
};

/// Degree count from the system's model, or exact dimensions by the oracle.
std::vector<LevelVerdict> hypothesis_check(const SpecializationPlan& plan, const DivisorSystem& sys,
                                           HypothesisMode mode, const OracleOptions& opt = {});

struct ResidualCertificate {
  int r = 0;
  StaircaseTuple residual;            ///< S(E, t_1, ..., t_r)
  StaircaseTuple algebraic_residual;  ///< boundary-aware rule
  std::vector<Finding> findings;
  std::vector<LevelVerdict> verdicts;
  bool boundary_override = false;
  std::optional<std::int64_t> dimension_bound;  ///< dim L(-rD - X(residual)) when a system is given
};

/// Throws HypothesisFailed on a gap violation, a failed level, or an
/// unresolved boundary warning unless `allow_boundary`.
ResidualCertificate apply_theorem(const SpecializationPlan& plan, const LineSystemModel& model,
                                  bool allow_boundary = false);
/// Same checks on a concrete system; also evaluates the dimension bound.
ResidualCertificate apply_theorem(const SpecializationPlan& plan, const DivisorSystem& sys, bool allow_boundary,
                                  const OracleOptions& opt = {});

/// Dimension of {f in L : x^r | f, f / x^r vanishes on the residual schemes}.
std::int64_t residual_system_dimension(const SpecializationPlan& plan, const DivisorSystem& sys,
                                       const StaircaseTuple& residual, const OracleOptions& opt = {});

struct InclusionOptions {
  std::uint64_t seed = 1;
  std::uint64_t prime = kDefaultPrime;
  int t_precision = 32;
  int max_t_precision = 2048;
  /// Residual used for the target system; the plan's residual() by default.
  std::optional<StaircaseTuple> target_residual;
  /// Multiple of D in the target; the plan's r by default.
  std::optional<int> target_r;
};

struct InclusionResult {
  bool contained = false;
  std::int64_t limit_dimension = 0;
  std::int64_t target_dimension = 0;
  int t_precision = 0;  ///< precision that sufficed
};

/// Direct check of lim_{t->0} L(-X(E, t, v)) in L(-rD - X(residual)) at
/// random landing points: the limit of the system is the annihilator of the
/// flat limit of its condition rows.
InclusionResult limit_inclusion_check(const SpecializationPlan& plan, const DivisorSystem& sys,
                                      const InclusionOptions& opt = {});

/// Residual tuple with one addable cell added to `site`, preferring cells on D.
StaircaseTuple enlarge_residual(const StaircaseTuple& residual, std::size_t site);

struct IdentityRecord {
  std::string name;
  int k = 0, m = 0, s = 0;
  std::int64_t lhs = 0, rhs = 0;
  bool holds = false;
};

struct NagataStep {
  int k = 0, m = 0, d = 0, s = 0;
  NagataSetup setup;
  std::vector<Finding> findings;
  std::vector<SliceDegreeLevel> slice_degrees;
  std::vector<LevelVerdict> verdicts;
  StaircaseTuple residual;
  StaircaseTuple algebraic_residual;
  std::int64_t line_degree = 0;      ///< deg L for the combinatorial residual
  std::int64_t algebraic_line_degree = 0;
  std::int64_t residual_critical = 0;  ///< d_c(Z') for the (k-1)^2 points
  bool line_degree_ok = false;         ///< deg L <= d_c(Z')
  bool passed = false;
};

struct NagataCertificate {
  int k = 0, m = 0;
  std::int64_t d_c = 0;
  std::vector<NagataStep> steps;  ///< d_c and d_c - 1 for k, then k-1, ... down to 4
  std::vector<IdentityRecord> identities;
  int base_case_k = 0;
  std::string base_case;
  std::uint64_t seed = 0;
  std::uint64_t prime = kDefaultPrime;
  bool passed = false;
};

/// Recursive certificate for k^2 fat points of multiplicity m; k >= 2.
NagataCertificate nagata_certificate(int k, int m, std::uint64_t seed = 1, std::uint64_t prime = kDefaultPrime);

}  // namespace limitseries

#endif  // LIMITSERIES_HORACE_HPP
