#include "limitseries/horace.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "limitseries/errors.hpp"
#include "limitseries/hilbert.hpp"
#include "limitseries/linalg.hpp"
#include "limitseries/localring.hpp"

namespace limitseries {

namespace {

using u64 = std::uint64_t;

// ---------------------------------------------------------------- rows

class RowBuilder {
 public:
  RowBuilder(const PrimeField& f, int d) : f_(f), d_(d), cols_(plane_monomials(d)) {
    binom_.assign(static_cast<std::size_t>(d + 1), std::vector<u64>(static_cast<std::size_t>(d + 1), 0));
    for (int n = 0; n <= d; ++n) {
      binom_[n][0] = 1;
      for (int k = 1; k <= n; ++k) binom_[n][k] = f.add(binom_[n - 1][k - 1], k < n ? binom_[n - 1][k] : 0);
    }
  }

  Eigen::Index ncols() const { return static_cast<Eigen::Index>(cols_.size()); }
  u64 binom(int n, int k) const { return (k < 0 || k > n) ? 0 : binom_[n][k]; }

  /// f_{ab} = 0 for a < r.
  MatrixP divisibility(int r) const {
    std::vector<Eigen::Index> hits;
    for (std::size_t c = 0; c < cols_.size(); ++c)
      if (cols_[c].first < r) hits.push_back(static_cast<Eigen::Index>(c));
    MatrixP m = MatrixP::Zero(static_cast<Eigen::Index>(hits.size()), ncols());
    for (std::size_t i = 0; i < hits.size(); ++i) m(static_cast<Eigen::Index>(i), hits[i]) = 1;
    return m;
  }

  /// Coefficient of x^{shift + a} (y - y0)^b for every cell (a, b).
  MatrixP on_line(u64 y0, const std::vector<Exponent>& cells, int shift) const {
    MatrixP m = MatrixP::Zero(static_cast<Eigen::Index>(cells.size()), ncols());
    for (std::size_t r = 0; r < cells.size(); ++r) {
      const int a = cells[r][0] + shift, b = cells[r][1];
      for (std::size_t c = 0; c < cols_.size(); ++c) {
        const auto [i, k] = cols_[c];
        if (i != a || k < b) continue;
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            f_.mul(binom(k, b), f_.pow(y0, static_cast<u64>(k - b)));
      }
    }
    return m;
  }

  /// Taylor conditions of a scheme at (t^v, y0), local coordinates (x - t^v, y - y0).
  PolyMatrix<u64> sliding(u64 y0, const Staircase& shape, int v) const {
    const auto cells = shape.cells();
    PolyMatrix<u64> pm;
    pm.coeffs.assign(static_cast<std::size_t>(v * d_ + 1),
                     MatrixP::Zero(static_cast<Eigen::Index>(cells.size()), ncols()));
    for (std::size_t r = 0; r < cells.size(); ++r) {
      const int a = cells[r][0], b = cells[r][1];
      for (std::size_t c = 0; c < cols_.size(); ++c) {
        const auto [i, k] = cols_[c];
        if (i < a || k < b) continue;
        const u64 val = f_.mul(f_.mul(binom(i, a), binom(k, b)), f_.pow(y0, static_cast<u64>(k - b)));
        pm.coeffs[static_cast<std::size_t>(v * (i - a))](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            val;
      }
    }
    return pm;
  }

 private:
  PrimeField f_;
  int d_;
  std::vector<std::pair<int, int>> cols_;
  std::vector<std::vector<u64>> binom_;
};

MatrixP stack(const std::vector<MatrixP>& parts, Eigen::Index ncols) {
  Eigen::Index rows = 0;
  for (const auto& p : parts) rows += p.rows();
  MatrixP out(rows, ncols);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    out.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  return out;
}

struct Placement {
  std::vector<u64> landing;  // y of each sliding site
  std::vector<u64> on_div;   // y of each on-D base scheme
  std::vector<Site> off;     // realized off-D sites
};

Placement place(const SpecializationPlan& plan, const DivisorSystem& sys, const PrimeField& f, std::mt19937_64& rng) {
  Placement p;
  std::set<u64> used;
  auto fresh = [&] {
    for (;;) {
      const u64 y = f.random(rng);
      if (used.insert(y).second) return y;
    }
  };
  for (std::size_t j = 0; j < plan.shapes.size(); ++j) p.landing.push_back(fresh());
  for (std::size_t j = 0; j < sys.on_divisor.size(); ++j) p.on_div.push_back(fresh());
  p.off = realize_sites(sys.off_divisor, f, rng);
  for (const auto& s : p.off)
    if (s.position->x == 0) throw DomainError("off-divisor site placed on D");
  return p;
}

MatrixP base_rows(const RowBuilder& rb, const DivisorSystem& sys, const Placement& p, const PrimeField& f) {
  std::vector<MatrixP> parts;
  for (std::size_t j = 0; j < sys.on_divisor.size(); ++j)
    parts.push_back(rb.on_line(p.on_div[j], sys.on_divisor[j].cells(), 0));
  parts.push_back(conditions_matrix(p.off, sys.d, f));
  return stack(parts, rb.ncols());
}

MatrixP residual_rows(const RowBuilder& rb, const Placement& p, const StaircaseTuple& residual, int r) {
  std::vector<MatrixP> parts{rb.divisibility(r)};
  for (std::size_t j = 0; j < residual.size(); ++j) parts.push_back(rb.on_line(p.landing[j], residual[j].cells(), r));
  return stack(parts, rb.ncols());
}

Eigen::Index max_rank_over_trials(const OracleOptions& opt, const SpecializationPlan& plan, const DivisorSystem& sys,
                                  const std::function<MatrixP(const RowBuilder&, const Placement&)>& build) {
  const PrimeField f(opt.prime);
  const RowBuilder rb(f, sys.d);
  std::mt19937_64 rng(opt.seed);
  Eigen::Index best = 0;
  for (int t = 0; t < std::max(1, opt.trials); ++t) {
    const auto p = place(plan, sys, f, rng);
    best = std::max(best, rank(f, build(rb, p)));
  }
  return best;
}

void check_system(const SpecializationPlan& plan, const DivisorSystem& sys) {
  plan.check_structure();
  if (sys.d < 0) throw DomainError("degree must be nonnegative");
  for (const auto& e : sys.on_divisor)
    if (e.dim() != 2) throw DimensionMismatch("on-divisor schemes must be plane staircases");
}

}  // namespace

// ---------------------------------------------------------------- plan

std::vector<int> SpecializationPlan::floors(int i) const {
  if (i < 1 || i > r()) throw DomainError("level index out of range");
  std::vector<int> t;
  for (int v : speeds) t.push_back(levels[static_cast<std::size_t>(i - 1)] / v);
  return t;
}

StaircaseTuple SpecializationPlan::slices(int i) const { return slice_tuple(shapes, floors(i)); }

int SpecializationPlan::slice_total(int i) const {
  int s = 0;
  for (const auto& t : slices(i)) s += t.degree();
  return s;
}

StaircaseTuple SpecializationPlan::residual() const {
  StaircaseTuple cur = shapes;
  for (int i = 1; i <= r(); ++i) cur = suppress_tuple(cur, floors(i));
  return cur;
}

StaircaseTuple SpecializationPlan::algebraic_residual() const {
  StaircaseTuple out;
  for (std::size_t j = 0; j < shapes.size(); ++j) out.push_back(fiber_staircase(shapes[j], speeds[j], levels));
  return out;
}

void SpecializationPlan::check_structure() const {
  if (shapes.empty()) throw DomainError("plan needs at least one shape");
  if (shapes.size() != speeds.size()) throw LengthMismatch("shapes and speeds differ in length");
  if (levels.empty()) throw DomainError("plan needs at least one level");
  for (const auto& e : shapes)
    if (e.dim() != 2) throw DimensionMismatch("plan shapes must be plane staircases");
  for (int v : speeds)
    if (v < 1) throw DomainError("speeds must be positive");
  for (int n : levels)
    if (n < 1) throw DomainError("levels must be positive");
}

int LineSystemModel::base_degree(int i) const {
  if (i < 1) throw DomainError("level index out of range");
  return i <= static_cast<int>(line_base_degrees.size()) ? line_base_degrees[static_cast<std::size_t>(i - 1)] : 0;
}

std::string to_string(Finding::Kind k) {
  switch (k) {
    case Finding::Kind::GapViolation: return "GapViolation";
    case Finding::Kind::BoundaryWarning: return "BoundaryWarning";
  }
  return "?";
}

std::vector<Finding> validate_plan(const SpecializationPlan& plan) {
  plan.check_structure();
  std::vector<Finding> out;
  const int vmax = *std::max_element(plan.speeds.begin(), plan.speeds.end());
  for (int i = 1; i < plan.r(); ++i) {
    const int gap = plan.levels[static_cast<std::size_t>(i - 1)] - plan.levels[static_cast<std::size_t>(i)];
    if (gap < vmax)
      out.push_back({Finding::Kind::GapViolation, Finding::Severity::Error, i, -1,
                     "n_" + std::to_string(i) + " - n_" + std::to_string(i + 1) + " = " + std::to_string(gap) +
                         " < max speed " + std::to_string(vmax)});
  }
  for (int i = 1; i <= plan.r(); ++i) {
    const int n = plan.levels[static_cast<std::size_t>(i - 1)];
    for (std::size_t j = 0; j < plan.shapes.size(); ++j) {
      std::set<int> heights;
      for (const auto& kv : plan.shapes[j].heights()) heights.insert(kv.second);
      const int v = plan.speeds[j];
      for (int h : heights)
        if (n == v * h)
          out.push_back({Finding::Kind::BoundaryWarning, Finding::Severity::Warning, i, static_cast<int>(j),
                         "n_" + std::to_string(i) + " = " + std::to_string(n) + " equals speed " + std::to_string(v) +
                             " times column height " + std::to_string(h)});
    }
  }
  return out;
}

bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Finding::Severity::Error; });
}

bool has_boundary(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.kind == Finding::Kind::BoundaryWarning; });
}

// ---------------------------------------------------------------- Nagata plans

NagataSetup build_nagata_plan(int k, int m, int s) {
  if (k < 4) throw DomainError("plans are built for k >= 4; smaller k is the base case");
  if (m < 1) throw DomainError("multiplicity must be positive");
  if (s < 0 || s > k - 2) throw DomainError("s must satisfy 0 <= s <= k-2");
  NagataSetup out;
  out.k = k;
  out.m = m;
  out.s = s;
  out.N = m + 1;
  auto& plan = out.plan;
  plan.shapes.assign(static_cast<std::size_t>(k - 1), regular(m));
  plan.speeds.assign(static_cast<std::size_t>(k - s - 2), out.N);
  plan.speeds.insert(plan.speeds.end(), static_cast<std::size_t>(s + 1), out.N + 1);
  for (int i = 1; i <= m; ++i) plan.levels.push_back((out.N + 1) * (m - i + 1) - 1);
  out.model.d = k * m + s;
  for (int i = 1; i <= m; ++i) out.model.line_base_degrees.push_back(k * (m - i + 1));
  return out;
}

std::vector<SliceDegreeLevel> slice_degree_table(const NagataSetup& setup) {
  const auto& plan = setup.plan;
  const int k = setup.k, m = setup.m, s = setup.s, d = setup.model.d;
  // Slice length of shape j at t is #{columns with height > t}; keep the
  // column heights sorted so each lookup is a binary search.
  std::vector<std::vector<int>> sorted_heights;
  for (const auto& e : plan.shapes) {
    auto& hs = sorted_heights.emplace_back();
    for (const auto& [base, h] : e.heights()) hs.push_back(h);
    std::sort(hs.begin(), hs.end());
  }
  std::vector<SliceDegreeLevel> out;
  for (int i = 1; i <= plan.r(); ++i) {
    SliceDegreeLevel row;
    row.level = i;
    const auto t = plan.floors(i);
    bool consistent = true;
    for (std::size_t j = 0; j < t.size(); ++j) {
      row.degrees.push_back(m - t[j]);
      const auto& hs = sorted_heights[j];
      const auto len = hs.end() - std::upper_bound(hs.begin(), hs.end(), t[j]);
      consistent = consistent && len == std::max(0, m - t[j]);
    }
    row.total = std::accumulate(row.degrees.begin(), row.degrees.end(), 0);
    row.by_count = s + 1 + (i - 1) * (k - 1);
    row.by_cardinal = d - i + 2 - k * (m - i + 1);
    row.holds = consistent && row.total == row.by_count && row.total == row.by_cardinal;
    if (!row.holds)
      throw IdentityFailure("slice degrees at level " + std::to_string(i) + " for k=" + std::to_string(k) +
                            ", m=" + std::to_string(m) + ", s=" + std::to_string(s) + ": total " +
                            std::to_string(row.total) + ", expected " + std::to_string(row.by_count) + " and " +
                            std::to_string(row.by_cardinal));
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------- hypotheses

std::vector<LevelVerdict> hypothesis_check(const SpecializationPlan& plan, const LineSystemModel& model) {
  plan.check_structure();
  std::vector<LevelVerdict> out;
  for (int i = 1; i <= plan.r(); ++i) {
    LevelVerdict v;
    v.level = i;
    v.slice_degree = plan.slice_total(i);
    v.base_degree = model.base_degree(i);
    v.restricted_degree = model.d - i + 1;
    v.holds = v.slice_degree >= v.restricted_degree - v.base_degree + 1;
    out.push_back(v);
  }
  return out;
}

LineSystemModel DivisorSystem::model(int levels) const {
  LineSystemModel m;
  m.d = d;
  for (int i = 1; i <= levels; ++i) {
    int deg = 0;
    for (const auto& e : on_divisor) deg += slice(e, i - 1).degree();
    m.line_base_degrees.push_back(deg);
  }
  return m;
}

std::vector<LevelVerdict> hypothesis_check(const SpecializationPlan& plan, const DivisorSystem& sys,
                                           HypothesisMode mode, const OracleOptions& opt) {
  check_system(plan, sys);
  auto out = hypothesis_check(plan, sys.model(plan.r()));
  if (mode == HypothesisMode::DegreeCount) return out;
  const Eigen::Index ncols = static_cast<Eigen::Index>(plane_sections(sys.d));
  const PrimeField f(opt.prime);
  for (auto& v : out) {
    const int i = v.level;
    const auto sl = plan.slices(i);
    const auto with_slice = max_rank_over_trials(opt, plan, sys, [&](const RowBuilder& rb, const Placement& p) {
      std::vector<MatrixP> parts{base_rows(rb, sys, p, f), rb.divisibility(i - 1)};
      for (std::size_t j = 0; j < sl.size(); ++j) {
        std::vector<Exponent> cells;
        for (int b = 0; b < sl[j].degree(); ++b) cells.push_back({0, b});
        parts.push_back(rb.on_line(p.landing[j], cells, i - 1));
      }
      return stack(parts, rb.ncols());
    });
    const auto next = max_rank_over_trials(opt, plan, sys, [&](const RowBuilder& rb, const Placement& p) {
      return stack({base_rows(rb, sys, p, f), rb.divisibility(i)}, rb.ncols());
    });
    v.dim_with_slice = ncols - with_slice;
    v.dim_next = ncols - next;
    v.holds = *v.dim_with_slice == *v.dim_next;
  }
  return out;
}

// ---------------------------------------------------------------- theorem

ResidualCertificate apply_theorem(const SpecializationPlan& plan, const LineSystemModel& model, bool allow_boundary) {
  ResidualCertificate cert;
  cert.findings = validate_plan(plan);
  if (has_errors(cert.findings)) throw HypothesisFailed("plan violates the gap rule: " + cert.findings.front().message);
  cert.verdicts = hypothesis_check(plan, model);
  for (const auto& v : cert.verdicts)
    if (!v.holds)
      throw HypothesisFailed("level " + std::to_string(v.level) + ": slice degree " + std::to_string(v.slice_degree) +
                             " with base " + std::to_string(v.base_degree) + " does not cover degree " +
                             std::to_string(v.restricted_degree) + " on D");
  if (has_boundary(cert.findings) && !allow_boundary)
    throw HypothesisFailed("plan has boundary levels (n_i = v_j h); rerun with the boundary override");
  cert.boundary_override = has_boundary(cert.findings);
  cert.r = plan.r();
  cert.residual = plan.residual();
  cert.algebraic_residual = plan.algebraic_residual();
  return cert;
}

ResidualCertificate apply_theorem(const SpecializationPlan& plan, const DivisorSystem& sys, bool allow_boundary,
                                  const OracleOptions& opt) {
  check_system(plan, sys);
  auto cert = apply_theorem(plan, sys.model(plan.r()), allow_boundary);
  cert.dimension_bound = residual_system_dimension(plan, sys, cert.residual, opt);
  return cert;
}

std::int64_t residual_system_dimension(const SpecializationPlan& plan, const DivisorSystem& sys,
                                       const StaircaseTuple& residual, const OracleOptions& opt) {
  check_system(plan, sys);
  if (residual.size() != plan.shapes.size()) throw LengthMismatch("residual and plan differ in length");
  const PrimeField f(opt.prime);
  const auto rk = max_rank_over_trials(opt, plan, sys, [&](const RowBuilder& rb, const Placement& p) {
    return stack({base_rows(rb, sys, p, f), residual_rows(rb, p, residual, plan.r())}, rb.ncols());
  });
  return plane_sections(sys.d) - rk;
}

InclusionResult limit_inclusion_check(const SpecializationPlan& plan, const DivisorSystem& sys,
                                      const InclusionOptions& opt) {
  check_system(plan, sys);
  const PrimeField f(opt.prime);
  const RowBuilder rb(f, sys.d);
  std::mt19937_64 rng(opt.seed);
  const auto p = place(plan, sys, f, rng);
  const auto ncols = rb.ncols();

  // Rows of the family: constant base rows, then the sliding schemes.
  const MatrixP base = base_rows(rb, sys, p, f);
  std::vector<PolyMatrix<u64>> moving;
  int layers = 1;
  Eigen::Index nrows = base.rows();
  for (std::size_t j = 0; j < plan.shapes.size(); ++j) {
    moving.push_back(rb.sliding(p.landing[j], plan.shapes[j], plan.speeds[j]));
    layers = std::max(layers, moving.back().degree_bound());
    nrows += moving.back().rows();
  }
  PolyMatrix<u64> family;
  family.coeffs.assign(static_cast<std::size_t>(layers), MatrixP::Zero(nrows, ncols));
  family.coeffs[0].topRows(base.rows()) = base;
  Eigen::Index at = base.rows();
  for (const auto& mv : moving) {
    for (int b = 0; b < mv.degree_bound(); ++b) family.coeffs[static_cast<std::size_t>(b)].middleRows(at, mv.rows()) = mv.coeffs[static_cast<std::size_t>(b)];
    at += mv.rows();
  }

  Eigen::Index generic = 0;
  for (int trial = 0; trial < 2; ++trial) {
    u64 t0 = f.random_nonzero(rng);
    generic = std::max(generic, rank(f, family.evaluate(f, t0)));
  }

  InclusionResult res;
  for (int prec = std::max(1, opt.t_precision);; prec *= 2) {
    try {
      const auto lim = flat_limit_rows(f, family, prec, generic);
      const auto residual = opt.target_residual ? *opt.target_residual : plan.residual();
      const int r = opt.target_r ? *opt.target_r : plan.r();
      const MatrixP target = stack({base, residual_rows(rb, p, residual, r)}, ncols);
      res.limit_dimension = ncols - lim.limit.rank();
      res.target_dimension = ncols - rank(f, target);
      res.contained = rowspace_contains(f, lim.limit.rows, target);
      res.t_precision = prec;
      return res;
    } catch (const PrecisionExceeded&) {
      if (prec >= opt.max_t_precision) throw;
    }
  }
}

StaircaseTuple enlarge_residual(const StaircaseTuple& residual, std::size_t site) {
  if (site >= residual.size()) throw DomainError("site index out of range");
  StaircaseTuple out = residual;
  auto cols = out[site].columns();
  // First choice: a new cell on D, extending the first empty column.
  if (cols.empty() || cols.back() > 0) {
    cols.push_back(1);
  } else {
    cols[0] += 1;
  }
  out[site] = Staircase::from_columns(cols);
  return out;
}

// ---------------------------------------------------------------- certificate

NagataCertificate nagata_certificate(int k, int m, std::uint64_t seed, std::uint64_t prime) {
  if (k < 2) throw DomainError("certificates need k >= 2");
  if (m < 1) throw DomainError("multiplicity must be positive");
  if (!is_prime(prime)) throw DomainError("prime is not prime");
  NagataCertificate cert;
  cert.k = k;
  cert.m = m;
  cert.seed = seed;
  cert.prime = prime;
  cert.d_c = critical_degree(square_union_degree(k, m));
  cert.passed = true;
  for (int kk = k; kk >= 4; --kk) {
    const auto dc = critical_degree(square_union_degree(kk, m));
    for (const auto d : {dc, dc - 1}) {
      const int s = static_cast<int>(d - static_cast<std::int64_t>(kk) * m);
      if (s < 0 || s > kk - 2)
        throw IdentityFailure("d = " + std::to_string(d) + " is not of the form km + s with 0 <= s <= k-2 (k=" +
                              std::to_string(kk) + ", m=" + std::to_string(m) + ")");
      NagataStep step;
      step.k = kk;
      step.m = m;
      step.d = static_cast<int>(d);
      step.s = s;
      step.setup = build_nagata_plan(kk, m, s);
      const auto& plan = step.setup.plan;
      step.findings = validate_plan(plan);
      step.slice_degrees = slice_degree_table(step.setup);
      step.verdicts = hypothesis_check(plan, step.setup.model);
      step.residual = plan.residual();
      step.algebraic_residual = plan.algebraic_residual();
      for (const auto& e : step.residual) step.line_degree += e.degree();
      for (const auto& e : step.algebraic_residual) step.algebraic_line_degree += e.degree();
      step.residual_critical = critical_degree(square_union_degree(kk - 1, m));
      step.line_degree_ok = step.line_degree <= step.residual_critical;

      for (const auto& row : step.slice_degrees)
        cert.identities.push_back({"slice_degree_level_" + std::to_string(row.level), kk, m, s, row.total,
                                   row.by_count, row.holds});
      const auto b = bookkeeping_sides(kk, m, s);
      cert.identities.push_back({"bookkeeping", kk, m, s, b.lhs, b.rhs, b.lhs == b.rhs});
      const std::int64_t expected_line = static_cast<std::int64_t>(kk - s - 2) * m;
      cert.identities.push_back({"residual_line_degree", kk, m, s, step.line_degree, expected_line,
                                 step.line_degree == expected_line});

      step.passed = !has_errors(step.findings) && step.line_degree_ok && step.line_degree == expected_line &&
                    b.lhs == b.rhs &&
                    std::all_of(step.verdicts.begin(), step.verdicts.end(), [](const LevelVerdict& v) { return v.holds; });
      cert.passed = cert.passed && step.passed;
      cert.steps.push_back(std::move(step));
    }
  }
  cert.base_case_k = std::min(k, 3);
  cert.base_case = "k <= 3: at most nine general fat points of equal multiplicity have the expected Hilbert "
                   "function (Nagata, 1960)";
  return cert;
}

}  // namespace limitseries
