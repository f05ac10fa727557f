#include "limitseries/staircase.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "limitseries/errors.hpp"

namespace limitseries {

namespace {

std::string show(const Exponent& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

void require_dim2(const Staircase& e, const char* what) {
  if (e.dim() != 2) throw DimensionMismatch(std::string(what) + " is defined for d = 2 only");
}

}  // namespace

Staircase::Staircase(int dim) : dim_(dim) {
  if (dim < 1) throw DomainError("staircase dimension must be positive");
}

Staircase Staircase::from_heights(int dim, const HeightMap& heights) {
  Staircase e(dim);
  for (const auto& [base, h] : heights) {
    if (static_cast<int>(base.size()) != dim - 1)
      throw DomainError("base index " + show(base) + " has wrong length for dim " + std::to_string(dim));
    if (std::any_of(base.begin(), base.end(), [](int v) { return v < 0; }))
      throw DomainError("negative base index " + show(base));
    if (h < 0) throw DomainError("negative height at " + show(base));
    if (h > 0) e.heights_[base] = h;
  }
  for (const auto& [base, h] : e.heights_) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (base[j] == 0) continue;
      Exponent prev = base;
      --prev[j];
      if (e.height(prev) < h)
        throw MonotonicityViolation("height " + std::to_string(h) + " at " + show(base) + " exceeds height " +
                                    std::to_string(e.height(prev)) + " at " + show(prev));
    }
    e.degree_ += h;
  }
  return e;
}

Staircase Staircase::from_columns(const std::vector<int>& heights) {
  HeightMap m;
  for (std::size_t y = 0; y < heights.size(); ++y) m[{static_cast<int>(y)}] = heights[y];
  return from_heights(2, m);
}

Staircase Staircase::segment(int len) { return from_heights(1, {{Exponent{}, len}}); }

Staircase Staircase::from_cells(const std::vector<std::pair<int, int>>& cells) {
  std::set<std::pair<int, int>> s(cells.begin(), cells.end());
  std::map<int, int> count;
  for (auto [x, y] : s) {
    if (x < 0 || y < 0) throw DomainError("negative cell coordinate");
    ++count[y];
  }
  HeightMap m;
  for (auto [y, c] : count) {
    for (int x = 0; x < c; ++x)
      if (!s.count({x, y}))
        throw MonotonicityViolation("cells do not form a staircase: (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") missing");
    m[{y}] = c;
  }
  return from_heights(2, m);
}

int Staircase::height(const Exponent& base) const {
  auto it = heights_.find(base);
  return it == heights_.end() ? 0 : it->second;
}

int Staircase::max_height() const {
  int h = 0;
  for (const auto& kv : heights_) h = std::max(h, kv.second);
  return h;
}

bool Staircase::contains(const Exponent& cell) const {
  if (static_cast<int>(cell.size()) != dim_) return false;
  Exponent base(cell.begin() + 1, cell.end());
  return cell[0] >= 0 && cell[0] < height(base);
}

std::vector<Exponent> Staircase::cells() const {
  std::vector<Exponent> out;
  out.reserve(static_cast<std::size_t>(degree_));
  for (const auto& [base, h] : heights_) {
    for (int a = 0; a < h; ++a) {
      Exponent c{a};
      c.insert(c.end(), base.begin(), base.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

int Staircase::max_cell_degree() const {
  int best = -1;
  for (const auto& [base, h] : heights_) {
    int s = h - 1;
    for (int v : base) s += v;
    best = std::max(best, s);
  }
  return best;
}

std::vector<int> Staircase::columns() const {
  require_dim2(*this, "columns()");
  std::vector<int> out;
  for (const auto& [base, h] : heights_) {
    if (static_cast<int>(out.size()) <= base[0]) out.resize(static_cast<std::size_t>(base[0]) + 1, 0);
    out[static_cast<std::size_t>(base[0])] = h;
  }
  return out;
}

std::vector<int> Staircase::rows() const {
  const auto cols = columns();
  std::vector<int> out(static_cast<std::size_t>(max_height()), 0);
  for (int h : cols)
    for (int x = 0; x < h; ++x) ++out[static_cast<std::size_t>(x)];
  return out;
}

std::vector<Exponent> Staircase::complement_generators() const {
  // A candidate generator sits at (h(a), a); it is minimal iff stepping down
  // in any base direction strictly increases the height.
  std::set<Exponent> candidates{Exponent(static_cast<std::size_t>(dim_ - 1), 0)};
  for (const auto& [base, h] : heights_) {
    candidates.insert(base);
    for (std::size_t j = 0; j < base.size(); ++j) {
      Exponent up = base;
      ++up[j];
      candidates.insert(up);
    }
  }
  std::vector<Exponent> out;
  for (const auto& a : candidates) {
    const int h = height(a);
    bool minimal = true;
    for (std::size_t j = 0; j < a.size() && minimal; ++j) {
      if (a[j] == 0) continue;
      Exponent prev = a;
      --prev[j];
      if (height(prev) <= h) minimal = false;
    }
    if (!minimal) continue;
    Exponent g{h};
    g.insert(g.end(), a.begin(), a.end());
    out.push_back(std::move(g));
  }
  return out;
}

Staircase regular(int m) {
  if (m < 0) throw DomainError("regular staircase needs m >= 0");
  std::vector<int> h;
  for (int y = 0; y < m; ++y) h.push_back(m - y);
  return Staircase::from_columns(h);
}

Staircase f_staircase(int m) {
  if (m < 0) throw DomainError("F_m needs m >= 0");
  std::vector<int> h;
  for (int y = 0; y / 2 < m; ++y) h.push_back(m - y / 2);
  return Staircase::from_columns(h);
}

Staircase slice(const Staircase& e, int k) {
  if (e.dim() < 2) throw DimensionMismatch("slice needs d >= 2");
  if (k < 0) throw DomainError("slice index must be nonnegative");
  Staircase::HeightMap out;
  for (const auto& [base, h] : e.heights()) {
    if (h <= k) continue;
    Exponent rest(base.begin() + 1, base.end());
    ++out[rest];
  }
  return Staircase::from_heights(e.dim() - 1, out);
}

Staircase slice_embedded(const Staircase& e, int k) {
  if (k < 0) throw DomainError("slice index must be nonnegative");
  Staircase::HeightMap out;
  for (const auto& [base, h] : e.heights())
    if (h > k) out[base] = 1;
  return Staircase::from_heights(e.dim(), out);
}

Staircase suppress(const Staircase& e, int t) {
  if (t < 0) throw DomainError("suppression index must be nonnegative");
  Staircase::HeightMap out;
  for (const auto& [base, h] : e.heights()) out[base] = t >= h ? h : h - 1;
  return Staircase::from_heights(e.dim(), out);
}

Staircase suppress_seq(const Staircase& e, const std::vector<int>& ts) {
  Staircase cur = e;
  for (int t : ts) cur = suppress(cur, t);
  return cur;
}

StaircaseTuple slice_tuple(const StaircaseTuple& es, const std::vector<int>& ts) {
  if (es.size() != ts.size()) throw LengthMismatch("slice_tuple: tuple and index vector differ in length");
  StaircaseTuple out;
  for (std::size_t i = 0; i < es.size(); ++i) out.push_back(slice(es[i], ts[i]));
  return out;
}

StaircaseTuple suppress_tuple(const StaircaseTuple& es, const std::vector<int>& ts) {
  if (es.size() != ts.size()) throw LengthMismatch("suppress_tuple: tuple and index vector differ in length");
  StaircaseTuple out;
  for (std::size_t i = 0; i < es.size(); ++i) out.push_back(suppress(es[i], ts[i]));
  return out;
}

std::optional<int> is_quasi_regular(const Staircase& e) {
  require_dim2(e, "is_quasi_regular");
  const auto h = e.columns();
  auto height = [&](int y) { return y < static_cast<int>(h.size()) ? h[static_cast<std::size_t>(y)] : 0; };
  const int bound = e.max_cell_degree() + 1;
  for (int m = 0; m <= bound; ++m) {
    bool lower = true, upper = true;
    for (int y = 0; y < m && lower; ++y) lower = height(y) >= m - y;
    for (int y = 0; y < static_cast<int>(h.size()) && upper; ++y) upper = height(y) <= std::max(0, m + 1 - y);
    if (lower && upper) return m;
  }
  return std::nullopt;
}

bool is_right_specialized(const Staircase& e) {
  require_dim2(e, "is_right_specialized");
  const auto h = e.columns();
  for (std::size_t y = 1; y < h.size(); ++y)
    if (h[y] > 0 && h[y - 1] < h[y] + 1) return false;
  return true;
}

Staircase vertical_collision(const Staircase& e, const Staircase& f) {
  require_dim2(e, "vertical_collision");
  require_dim2(f, "vertical_collision");
  auto re = e.rows(), rf = f.rows();
  std::vector<int> rows(std::max(re.size(), rf.size()), 0);
  for (std::size_t x = 0; x < re.size(); ++x) rows[x] += re[x];
  for (std::size_t x = 0; x < rf.size(); ++x) rows[x] += rf[x];
  const int width = rows.empty() ? 0 : rows.front();
  std::vector<int> cols(static_cast<std::size_t>(width), 0);
  for (int r : rows)
    for (int y = 0; y < r; ++y) ++cols[static_cast<std::size_t>(y)];
  return Staircase::from_columns(cols);
}

std::vector<Staircase> staircases_of_degree(int n) {
  std::vector<Staircase> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.push_back(Staircase::from_columns(parts));
      return;
    }
    for (int p = std::min(rest, cap); p >= 1; --p) {
      parts.push_back(p);
      rec(rest - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::string ascii_grid(const Staircase& e) {
  require_dim2(e, "ascii_grid");
  const auto h = e.columns();
  std::ostringstream os;
  for (int y = static_cast<int>(h.size()) - 1; y >= 0; --y) {
    for (int x = 0; x < h[static_cast<std::size_t>(y)]; ++x) os << '#';
    os << '\n';
  }
  return os.str();
}

}  // namespace limitseries
