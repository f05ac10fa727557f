#include "limitseries/interp.hpp"

#include <algorithm>
#include <sstream>

#include "limitseries/errors.hpp"
#include "limitseries/hilbert.hpp"

namespace limitseries {

namespace {

using u64 = std::uint64_t;

// Dense bivariate polynomial in (u1, u2) truncated at total degree `deg`.
struct Truncated {
  int deg;
  std::vector<u64> c;  // c[a * (deg + 1) + b]
  explicit Truncated(int d) : deg(d), c(static_cast<std::size_t>((d + 1) * (d + 1)), 0) {}
  u64& at(int a, int b) { return c[static_cast<std::size_t>(a * (deg + 1) + b)]; }
  u64 at(int a, int b) const { return c[static_cast<std::size_t>(a * (deg + 1) + b)]; }
};

Truncated multiply(const PrimeField& f, const Truncated& p, const Truncated& q) {
  Truncated r(p.deg);
  for (int a1 = 0; a1 <= p.deg; ++a1)
    for (int b1 = 0; a1 + b1 <= p.deg; ++b1) {
      const u64 x = p.at(a1, b1);
      if (!x) continue;
      for (int a2 = 0; a1 + b1 + a2 <= p.deg; ++a2)
        for (int b2 = 0; a1 + b1 + a2 + b2 <= p.deg; ++b2) {
          const u64 y = q.at(a2, b2);
          if (y) r.at(a1 + a2, b1 + b2) = f.add(r.at(a1 + a2, b1 + b2), f.mul(x, y));
        }
    }
  return r;
}

std::vector<Truncated> powers(const PrimeField& f, const Truncated& lin, int n) {
  std::vector<Truncated> out;
  Truncated one(lin.deg);
  one.at(0, 0) = 1;
  out.push_back(one);
  for (int i = 1; i <= n; ++i) out.push_back(multiply(f, out.back(), lin));
  return out;
}

PlanePoint random_point(const PrimeField& f, std::mt19937_64& rng) { return {f.random(rng), f.random(rng)}; }

}  // namespace

Frame Frame::random(const PrimeField& f, std::mt19937_64& rng) {
  for (;;) {
    Frame fr{f.random(rng), f.random(rng), f.random(rng), f.random(rng)};
    if (fr.det(f) != 0) return fr;
  }
}

u64 Frame::det(const PrimeField& f) const { return f.sub(f.mul(m11, m22), f.mul(m12, m21)); }

std::vector<std::pair<int, int>> plane_monomials(int d) {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s <= d; ++s)
    for (int i = s; i >= 0; --i) out.emplace_back(i, s - i);
  return out;
}

std::vector<Site> realize_sites(const std::vector<Site>& sites, const PrimeField& f, std::mt19937_64& rng) {
  std::vector<Site> out = sites;
  for (auto& s : out) {
    if (s.shape.dim() != 2) throw DimensionMismatch("site shapes must be plane staircases");
    if (!s.position) s.position = random_point(f, rng);
    if (!s.frame) {
      // Fat-point conditions do not depend on the frame.
      const bool fat = s.shape == regular(s.shape.max_height());
      s.frame = fat ? Frame::identity() : Frame::random(f, rng);
    }
    if (s.frame->det(f) == 0) throw DomainError("site frame is not invertible");
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (*out[i].position == *out[j].position) throw DomainError("two sites share a position");
  return out;
}

MatrixP conditions_matrix(const std::vector<Site>& sites, int d, const PrimeField& f) {
  if (d < 0) throw DomainError("degree must be nonnegative");
  if (f.characteristic() <= static_cast<u64>(d)) throw PrimeTooSmall("prime must exceed the degree");
  const auto cols = plane_monomials(d);
  std::int64_t nrows = 0;
  for (const auto& s : sites) nrows += s.shape.degree();
  MatrixP out = MatrixP::Zero(nrows, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index row = 0;
  for (const auto& s : sites) {
    if (!s.position || !s.frame) throw DomainError("conditions need realized sites");
    if (s.shape.empty()) continue;
    const int deg = s.shape.max_cell_degree();
    if (f.characteristic() <= static_cast<u64>(deg)) throw PrimeTooSmall("prime must exceed the cell degrees");
    Truncated lx(deg), ly(deg);
    lx.at(0, 0) = s.position->x;
    ly.at(0, 0) = s.position->y;
    if (deg >= 1) {
      lx.at(1, 0) = s.frame->m11;
      lx.at(0, 1) = s.frame->m12;
      ly.at(1, 0) = s.frame->m21;
      ly.at(0, 1) = s.frame->m22;
    }
    const auto px = powers(f, lx, d), py = powers(f, ly, d);
    const auto cells = s.shape.cells();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto prod = multiply(f, px[static_cast<std::size_t>(cols[c].first)],
                                 py[static_cast<std::size_t>(cols[c].second)]);
      for (std::size_t r = 0; r < cells.size(); ++r)
        out(row + static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = prod.at(cells[r][0], cells[r][1]);
    }
    row += static_cast<Eigen::Index>(cells.size());
  }
  return out;
}

MatrixP conditions_matrix(const std::vector<Site>& sites, int d, const PrimeField& f, std::mt19937_64& rng) {
  return conditions_matrix(realize_sites(sites, f, rng), d, f);
}

std::int64_t hilbert_function_of(const std::vector<Site>& sites, int d, int trials, std::uint64_t seed,
                                 std::uint64_t prime) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const PrimeField f(prime);
  std::mt19937_64 rng(seed);
  std::int64_t best = 0;
  for (int t = 0; t < trials; ++t) best = std::max<std::int64_t>(best, rank(f, conditions_matrix(sites, d, f, rng)));
  return best;
}

std::int64_t system_dimension(const SystemDescriptor& sys, const std::vector<Site>& extra_sites, int trials,
                              std::uint64_t seed) {
  std::vector<Site> all = sys.base_sites;
  all.insert(all.end(), extra_sites.begin(), extra_sites.end());
  return plane_sections(sys.degree) - hilbert_function_of(all, sys.degree, trials, seed, sys.prime);
}

NagataTable verify_nagata_theorem(int k, int m, int d_max, int trials, std::uint64_t seed, std::uint64_t prime,
                                  bool force) {
  if (k < 1 || m < 1) throw DomainError("k and m must be positive");
  if (!force && (k > kOracleMaxK || m > kOracleMaxM))
    throw ResourceLimit("k = " + std::to_string(k) + ", m = " + std::to_string(m) +
                        " exceeds the desk-scale oracle limits (k <= 4, m <= 3)");
  NagataTable t;
  t.k = k;
  t.m = m;
  t.seed = seed;
  t.prime = prime;
  t.trials = trials;
  const std::vector<Site> sites(static_cast<std::size_t>(k * k), Site::fat_point(m));
  const auto deg = square_union_degree(k, m);
  t.pass = true;
  for (int d = 0; d <= d_max; ++d) {
    NagataRow r;
    r.d = d;
    r.oracle = hilbert_function_of(sites, d, trials, seed + static_cast<u64>(d), prime);
    r.virtual_value = virtual_hilbert(deg, d);
    r.match = r.oracle == r.virtual_value;
    t.pass = t.pass && r.match;
    t.rows.push_back(r);
  }
  return t;
}

std::string to_csv(const NagataTable& t) {
  std::ostringstream os;
  os << "# k=" << t.k << ",m=" << t.m << ",seed=" << t.seed << ",prime=" << t.prime << ",trials=" << t.trials
     << "\n";
  os << "d,oracle,virtual,match\n";
  for (const auto& r : t.rows)
    os << r.d << ',' << r.oracle << ',' << r.virtual_value << ',' << (r.match ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace limitseries
