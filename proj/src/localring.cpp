#include "limitseries/localring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "limitseries/errors.hpp"
#include "limitseries/linalg.hpp"

namespace limitseries {

namespace {

using u64 = std::uint64_t;

constexpr int kDegShift = 55;
constexpr MonoKey kDegUnit = MonoKey{1} << kDegShift;

int var_shift(int dim, int j) {
  // j is the 0-based variable index, 1 <= j < dim; x_d sits highest.
  return kDegShift - 8 * (dim - j);
}

bool by_key_desc(const Term& a, const Term& b) { return a.key > b.key; }

Poly scaled(const PrimeField& f, Poly p, u64 c) {
  for (auto& t : p) t.coef = f.mul(t.coef, c);
  return p;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

void check_sequence(const std::vector<int>& ns) {
  if (ns.empty()) throw InvalidSequence("level sequence is empty");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw InvalidSequence("levels must be >= 1");
    if (i > 0 && ns[i] >= ns[i - 1]) throw InvalidSequence("levels must be strictly decreasing");
  }
}

void check_speed(int v) {
  if (v < 1) throw DomainError("speed must be positive");
}

}  // namespace

// ---------------------------------------------------------------- codec

MonomialCodec::MonomialCodec(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("monomial codec supports 1 <= d <= 5");
}

MonoKey MonomialCodec::encode(const Exponent& x, int t) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("exponent length differs from ring dimension");
  int deg = 0;
  MonoKey key = 0;
  for (int j = 0; j < dim_; ++j) {
    if (x[j] < 0 || x[j] > kMaxExponent) throw CapExceeded("exponent out of codec range");
    deg += x[j];
    if (j > 0) key |= static_cast<MonoKey>(kMaxExponent - x[j]) << var_shift(dim_, j);
  }
  if (deg > kMaxExponent) throw CapExceeded("x-degree out of codec range");
  if (t < 0 || t > kMaxT) throw CapExceeded("t-exponent out of codec range");
  key |= static_cast<MonoKey>(deg) << kDegShift;
  key |= static_cast<MonoKey>(kMaxT - t);
  return key;
}

Exponent MonomialCodec::x_exponent(MonoKey k) const {
  Exponent x(static_cast<std::size_t>(dim_), 0);
  int rest = x_degree(k);
  for (int j = 1; j < dim_; ++j) {
    x[j] = kMaxExponent - static_cast<int>((k >> var_shift(dim_, j)) & 0xFF);
    rest -= x[j];
  }
  x[0] = rest;
  return x;
}

int MonomialCodec::x1_exponent(MonoKey k) const {
  int rest = x_degree(k);
  for (int j = 1; j < dim_; ++j) rest -= kMaxExponent - static_cast<int>((k >> var_shift(dim_, j)) & 0xFF);
  return rest;
}

MonoKey MonomialCodec::multiply(MonoKey k, const Exponent& x, int t) const {
  Exponent a = x_exponent(unflag(k));
  for (int j = 0; j < dim_; ++j) a[j] += x[j];
  return encode(a, t_exponent(k) + t);
}

MonoKey MonomialCodec::divide_x1(MonoKey k) const { return unflag(k) - kDegUnit; }

// ---------------------------------------------------------------- polys

Poly poly_axpy(const PrimeField& f, const Poly& a, u64 c, const Poly& b) {
  Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].key > b[j].key)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].key > a[i].key) {
      const u64 v = f.mul(c, b[j].coef);
      if (v) out.push_back({b[j].key, v});
      ++j;
    } else {
      const u64 v = f.add(a[i].coef, f.mul(c, b[j].coef));
      if (v) out.push_back({a[i].key, v});
      ++i, ++j;
    }
  }
  return out;
}

Poly poly_normalize(const PrimeField& f, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), by_key_desc);
  Poly out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().key == t.key) {
      out.back().coef = f.add(out.back().coef, t.coef);
      if (out.back().coef == 0) out.pop_back();
    } else if (t.coef != 0) {
      out.push_back(t);
    }
  }
  return out;
}

Poly poly_truncate_t(const MonomialCodec& codec, const Poly& p, int n) {
  Poly out;
  for (const auto& t : p)
    if (codec.t_exponent(t.key) < n) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------- context

void RingContext::validate() const {
  MonomialCodec{dim};
  if (x_cap < 1) throw DomainError("x_cap must be >= 1");
  if (field.characteristic() <= static_cast<u64>(x_cap)) throw DomainError("prime must exceed x_cap");
  if (t_trunc != kUntruncated && t_trunc < 1) throw DomainError("t_trunc must be >= 1");
  if (t_precision < 1) throw DomainError("t_precision must be >= 1");
}

RingContext RingContext::with_trunc(int n) const {
  RingContext c = *this;
  c.t_trunc = n;
  return c;
}

RingContext RingContext::with_cap(int d) const {
  RingContext c = *this;
  c.x_cap = d;
  return c;
}

std::vector<Exponent> monomials_up_to(int dim, int deg) {
  std::vector<Exponent> out;
  Exponent cur(static_cast<std::size_t>(dim), 0);
  std::function<void(int, int)> rec = [&](int j, int rest) {
    if (j == dim - 1) {
      cur[j] = rest;
      out.push_back(cur);
      return;
    }
    for (int a = rest; a >= 0; --a) {
      cur[j] = a;
      rec(j + 1, rest - a);
    }
  };
  for (int d = 0; d <= deg; ++d) rec(0, d);
  return out;
}

Poly monomial(const RingContext& ctx, const Exponent& x, int t, u64 coef) {
  coef %= ctx.field.characteristic();
  if (coef == 0) return {};
  return {{ctx.codec().encode(x, t), coef}};
}

Poly translate_monomial(const RingContext& ctx, const Exponent& c, int v) {
  check_speed(v);
  const auto& f = ctx.field;
  const auto codec = ctx.codec();
  const int bound = ctx.t_bound();
  Poly out;
  // (x1 - t^v)^a = sum_j binom(a, j) (-1)^j x1^{a-j} t^{vj}; keys descend with j.
  u64 binom = 1;
  Exponent x = c;
  for (int j = 0; j <= c[0]; ++j) {
    if (j > 0) binom = f.mul(f.mul(binom, f.from_int(c[0] - j + 1)), f.inv(f.from_int(j)));
    const long long tdeg = static_cast<long long>(v) * j;
    if (tdeg >= bound) break;
    x[0] = c[0] - j;
    const u64 coef = (j % 2) ? f.neg(binom) : binom;
    if (coef) out.push_back({codec.encode(x, static_cast<int>(tdeg)), coef});
  }
  return out;
}

// ---------------------------------------------------------------- echelon

void EchelonBuilder::add(Poly v) {
  while (!v.empty()) {
    auto it = pivot_.find(v.front().key);
    if (it == pivot_.end()) break;
    v = poly_axpy(f_, v, f_.neg(v.front().coef), rows_[it->second]);
  }
  if (v.empty()) return;
  const u64 inv = f_.inv(v.front().coef);
  if (inv != 1) v = scaled(f_, std::move(v), inv);
  pivot_.emplace(v.front().key, rows_.size());
  rows_.push_back(std::move(v));
}

std::vector<Poly> EchelonBuilder::finish() {
  // Back-substitution in increasing lead order: the rows a row may depend on
  // are final by the time it is processed, and they carry no pivot keys
  // besides their own lead.
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].front().key < rows_[b].front().key; });
  std::unordered_map<MonoKey, u64> acc;
  for (std::size_t idx : order) {
    Poly& row = rows_[idx];
    bool dirty = false;
    for (std::size_t i = 1; i < row.size() && !dirty; ++i) dirty = pivot_.count(row[i].key) > 0;
    if (!dirty) continue;
    acc.clear();
    for (std::size_t i = 1; i < row.size(); ++i) {
      const auto& [key, c] = row[i];
      auto it = pivot_.find(key);
      if (it == pivot_.end()) {
        u64& slot = acc[key];
        slot = f_.add(slot, c);
        continue;
      }
      const Poly& sub = rows_[it->second];
      for (std::size_t s = 1; s < sub.size(); ++s) {
        u64& slot = acc[sub[s].key];
        slot = f_.sub(slot, f_.mul(c, sub[s].coef));
      }
    }
    Poly out{row.front()};
    std::vector<Term> rest;
    rest.reserve(acc.size());
    for (const auto& [key, c] : acc)
      if (c) rest.push_back({key, c});
    std::sort(rest.begin(), rest.end(), by_key_desc);
    out.insert(out.end(), rest.begin(), rest.end());
    row = std::move(out);
  }
  std::vector<Poly> result;
  result.reserve(rows_.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) result.push_back(std::move(rows_[*it]));
  rows_.clear();
  pivot_.clear();
  return result;
}

// ---------------------------------------------------------------- spans

MonomialSpace MonomialSpace::span_of(const RingContext& ctx, std::vector<Poly> vectors) {
  EchelonBuilder b(ctx.field);
  for (auto& v : vectors) b.add(std::move(v));
  MonomialSpace m(ctx);
  m.basis_ = b.finish();
  return m;
}

bool MonomialSpace::contains(const Poly& p) const {
  // In reduced form the coefficient of a row in any member equals the
  // member's coefficient at that row's pivot.
  std::unordered_map<MonoKey, std::size_t> lead;
  for (std::size_t i = 0; i < basis_.size(); ++i) lead.emplace(basis_[i].front().key, i);
  Poly r = p;
  for (const auto& t : p) {
    auto it = lead.find(t.key);
    if (it != lead.end()) r = poly_axpy(ctx_.field, r, ctx_.field.neg(t.coef), basis_[it->second]);
  }
  return r.empty();
}

MonomialSpace MonomialSpace::restrict_cap(int cap) const {
  const auto codec = ctx_.codec();
  MonomialSpace m(ctx_.with_cap(cap));
  for (const auto& row : basis_)
    if (codec.x_degree(row.front().key) <= cap) m.basis_.push_back(row);
  return m;
}

bool MonomialSpace::operator==(const MonomialSpace& o) const {
  return ctx_.dim == o.ctx_.dim && ctx_.x_cap == o.ctx_.x_cap && ctx_.t_bound() == o.ctx_.t_bound() &&
         basis_ == o.basis_;
}

MonomialSpace span(const FamilyIdeal& fam, int cap, int gen_cap) {
  const auto& ctx = fam.context;
  const auto codec = ctx.codec();
  const int bound = ctx.t_bound();
  if (gen_cap < cap) gen_cap = cap;
  std::vector<Poly> vecs;
  auto push_multiples = [&](const Poly& g, const Exponent& mono) {
    for (int b = 0; b < bound; ++b) {
      std::vector<Term> terms;
      for (const auto& t : g) {
        if (codec.t_exponent(t.key) + b >= bound) continue;
        terms.push_back({codec.multiply(t.key, mono, b), t.coef});
      }
      if (terms.empty()) break;
      vecs.push_back(poly_normalize(ctx.field, std::move(terms)));
    }
  };
  for (const auto& g : fam.generators) {
    if (g.empty()) continue;
    const int dg = codec.x_degree(g.front().key);
    if (dg > gen_cap) continue;
    if (fam.kind == FamilyIdeal::Kind::Ideal) {
      for (const auto& mono : monomials_up_to(ctx.dim, gen_cap - dg)) push_multiples(g, mono);
    } else {
      Exponent mono(static_cast<std::size_t>(ctx.dim), 0);
      for (int a = 0; a + dg <= gen_cap; ++a) {
        mono[0] = a;
        push_multiples(g, mono);
      }
    }
  }
  if (fam.kind == FamilyIdeal::Kind::X1Module && fam.free_block) {
    for (const auto& x : monomials_up_to(ctx.dim, cap)) {
      Exponent base(x.begin() + 1, x.end());
      if (fam.free_block->height(base) > 0) continue;
      for (int b = 0; b < bound; ++b) vecs.push_back({{codec.encode(x, b), 1}});
    }
  }
  // Inserting in increasing lead order keeps lead reductions short.
  std::sort(vecs.begin(), vecs.end(), [](const Poly& a, const Poly& b) { return a.front().key < b.front().key; });
  return MonomialSpace::span_of(ctx.with_cap(gen_cap), std::move(vecs)).restrict_cap(cap);
}

FamilyIdeal translate_ideal(const Staircase& e, int v, const RingContext& ctx) {
  check_speed(v);
  if (e.dim() != ctx.dim) throw DimensionMismatch("staircase and ring dimensions differ");
  FamilyIdeal fam;
  fam.context = ctx;
  fam.provenance = Provenance::TranslatedStaircase;
  for (const auto& c : e.complement_generators()) {
    const int deg = std::accumulate(c.begin(), c.end(), 0);
    if (deg > ctx.x_cap) throw CapExceeded("generator of x-degree " + std::to_string(deg) + " exceeds cap");
    if (ctx.t_trunc == RingContext::kUntruncated && static_cast<long long>(v) * c[0] >= ctx.t_precision)
      throw CapExceeded("translated generator needs t-degree beyond working precision");
    fam.generators.push_back(translate_monomial(ctx, c, v));
  }
  return fam;
}

MonomialSpace translated_span(const Staircase& e, int v, const RingContext& ctx) {
  check_speed(v);
  if (e.dim() != ctx.dim) throw DimensionMismatch("staircase and ring dimensions differ");
  const auto codec = ctx.codec();
  std::vector<Poly> vecs;
  for (const auto& c : monomials_up_to(ctx.dim, ctx.x_cap)) {
    if (e.contains(c)) continue;
    const Poly base = translate_monomial(ctx.with_trunc(ctx.t_bound()), c, v);
    for (int b = 0; b < ctx.t_bound(); ++b) {
      Poly p;
      for (const auto& t : base) {
        const int tt = codec.t_exponent(t.key) + b;
        if (tt < ctx.t_bound()) p.push_back({t.key - static_cast<MonoKey>(b), t.coef});
      }
      vecs.push_back(std::move(p));
    }
  }
  std::sort(vecs.begin(), vecs.end(), [](const Poly& a, const Poly& b) { return a.front().key < b.front().key; });
  return MonomialSpace::span_of(ctx, std::move(vecs));
}

MonomialSpace truncate(const MonomialSpace& m, int n_to) {
  if (n_to < 1) throw InvalidTruncation("truncation level must be >= 1");
  if (n_to > m.context().t_bound()) throw InvalidTruncation("cannot truncate to a higher level");
  const auto codec = m.context().codec();
  std::vector<Poly> vecs;
  for (const auto& row : m.basis()) {
    Poly p = poly_truncate_t(codec, row, n_to);
    if (!p.empty()) vecs.push_back(std::move(p));
  }
  std::sort(vecs.begin(), vecs.end(), [](const Poly& a, const Poly& b) { return a.front().key < b.front().key; });
  return MonomialSpace::span_of(m.context().with_trunc(n_to), std::move(vecs));
}

FamilyIdeal truncate(const FamilyIdeal& fam, int n_to) {
  if (n_to < 1) throw InvalidTruncation("truncation level must be >= 1");
  if (n_to > fam.context.t_bound()) throw InvalidTruncation("cannot truncate to a higher level");
  FamilyIdeal out = fam;
  out.context = fam.context.with_trunc(n_to);
  const auto codec = fam.context.codec();
  out.generators.clear();
  for (const auto& g : fam.generators) {
    Poly p = poly_truncate_t(codec, g, n_to);
    if (!p.empty()) out.generators.push_back(std::move(p));
  }
  return out;
}

MonomialSpace colon_x1(const MonomialSpace& m) {
  const auto& ctx = m.context();
  if (ctx.x_cap <= 0) throw CapExhausted("no x-degree headroom left for a colon");
  const auto codec = ctx.codec();
  const auto& f = ctx.field;

  // Kernel of the map sending an element to its x1-free part. Rows are
  // visited in increasing lead order, so reductions only subtract rows with
  // smaller leads and every survivor keeps its own lead.
  std::unordered_map<MonoKey, Poly> pivot;  // x1-free key -> row, monic there
  std::vector<Poly> kernel;
  auto x1_free = [&](MonoKey k) { return codec.x1_exponent(k) == 0; };
  for (auto it = m.basis().rbegin(); it != m.basis().rend(); ++it) {
    Poly v = *it;
    for (;;) {
      auto t = std::find_if(v.begin(), v.end(), [&](const Term& x) { return x1_free(x.key); });
      if (t == v.end()) {
        kernel.push_back(std::move(v));
        break;
      }
      auto p = pivot.find(t->key);
      if (p == pivot.end()) {
        const MonoKey key = t->key;
        pivot.emplace(key, scaled(f, std::move(v), f.inv(t->coef)));
        break;
      }
      v = poly_axpy(f, v, f.neg(t->coef), p->second);
    }
  }
  std::vector<Poly> divided;
  divided.reserve(kernel.size());
  for (auto& v : kernel) {
    for (auto& t : v) t.key = codec.divide_x1(t.key);
    divided.push_back(std::move(v));
  }
  return MonomialSpace::span_of(ctx.with_cap(ctx.x_cap - 1), std::move(divided));
}

// ---------------------------------------------------------------- chain

ChainCaps required_caps(const Staircase& e, int v, const std::vector<int>& ns) {
  check_speed(v);
  const int k = static_cast<int>(ns.size());
  const int n1 = ns.empty() ? 1 : ns.front();
  int need = 0, gen = 0;
  for (const auto& [base, h] : e.heights()) {
    const int m = std::accumulate(base.begin(), base.end(), 0);
    // Past x1-degree h - 1 + ceil(n1/v) the component holds every monomial.
    const int n0 = h - 1 + ceil_div(n1, v);
    need = std::max(need, m + n0);
    gen = std::max(gen, m + n0 + h);
  }
  ChainCaps caps;
  caps.chain_cap = std::max(k + 1, k + need);
  caps.output_cap = caps.chain_cap - k;
  caps.gen_cap = std::max(caps.output_cap, gen);
  return caps;
}

std::vector<ChainStage> residual_chain_stages(const Staircase& e, int v, const std::vector<int>& ns,
                                              const RingContext& ctx) {
  check_sequence(ns);
  check_speed(v);
  ctx.validate();
  const auto caps = required_caps(e, v, ns);
  if (ctx.x_cap < caps.chain_cap)
    throw CapExceeded("x_cap " + std::to_string(ctx.x_cap) + " below the " + std::to_string(caps.chain_cap) +
                      " needed for an exact chain");
  std::vector<ChainStage> stages;
  std::string label = std::to_string(ns[0]);
  MonomialSpace cur = translated_span(e, v, ctx.with_trunc(ns[0]));
  stages.push_back({"J_{" + label + "}", cur});
  for (std::size_t j = 0; j < ns.size(); ++j) {
    if (j > 0) {
      label += ":" + std::to_string(ns[j]);
      cur = truncate(cur, ns[j]);
      stages.push_back({"J_{" + label + "}", cur});
    }
    cur = colon_x1(cur);
    stages.push_back({"J_{" + label + ":}", cur});
  }
  return stages;
}

MonomialSpace residual_chain(const Staircase& e, int v, const std::vector<int>& ns, const RingContext& ctx) {
  return residual_chain_stages(e, v, ns, ctx).back().space;
}

int alpha(int n_i, int v, int h) { return std::max(0, n_i - v * h); }

FamilyIdeal closed_form_residual(const Staircase& e, int v, const std::vector<int>& ns, const RingContext& ctx) {
  check_speed(v);
  if (!ns.empty()) check_sequence(ns);
  if (e.dim() != ctx.dim) throw DimensionMismatch("staircase and ring dimensions differ");
  const int k = static_cast<int>(ns.size());
  FamilyIdeal fam;
  fam.context = k > 0 ? ctx.with_trunc(ns.back()) : ctx;
  fam.kind = FamilyIdeal::Kind::X1Module;
  fam.free_block = e;
  const auto codec = ctx.codec();
  const int bound = fam.context.t_bound();
  for (const auto& [base, h] : e.heights()) {
    Exponent c{h};
    c.insert(c.end(), base.begin(), base.end());
    const Poly fm = translate_monomial(fam.context, c, v);
    fam.generators.push_back(fm);
    for (int i = 1; i <= k; ++i) {
      const int a = alpha(ns[static_cast<std::size_t>(k - i)], v, h);
      Poly g;
      for (const auto& t : fm) {
        const int tt = codec.t_exponent(t.key) + a;
        if (tt >= bound) continue;
        if (codec.x1_exponent(t.key) < i)
          throw DivisionWitnessFailure("t^" + std::to_string(a) + " f_m is not divisible by x1^" + std::to_string(i) +
                                       " in R_" + std::to_string(bound) + " (column height " + std::to_string(h) +
                                       ")");
        g.push_back({t.key - static_cast<MonoKey>(a) - static_cast<MonoKey>(i) * kDegUnit, t.coef});
      }
      if (!g.empty()) fam.generators.push_back(std::move(g));
    }
  }
  return fam;
}

MonomialSpace special_fiber(const MonomialSpace& m) { return truncate(m, 1); }

int fiber_exponent(int h, int v, const std::vector<int>& ns) {
  int p = 0;
  for (int n : ns)
    if (static_cast<long long>(n) <= static_cast<long long>(v) * h) ++p;
  return std::max(0, h - p);
}

Staircase fiber_staircase(const Staircase& e, int v, const std::vector<int>& ns) {
  Staircase::HeightMap out;
  for (const auto& [base, h] : e.heights()) out[base] = fiber_exponent(h, v, ns);
  return Staircase::from_heights(e.dim(), out);
}

bool is_boundary(const Staircase& e, int v, const std::vector<int>& ns) {
  for (const auto& [base, h] : e.heights())
    for (int n : ns)
      if (static_cast<long long>(n) == static_cast<long long>(v) * h) return true;
  return false;
}

MonomialSpace monomial_ideal_span(const Staircase& e, const RingContext& ctx, int cap) {
  if (e.dim() != ctx.dim) throw DimensionMismatch("staircase and ring dimensions differ");
  const auto codec = ctx.codec();
  std::vector<Poly> vecs;
  for (const auto& c : monomials_up_to(ctx.dim, cap)) {
    if (e.contains(c)) continue;
    for (int b = 0; b < ctx.t_bound(); ++b) vecs.push_back({{codec.encode(c, b), 1}});
  }
  return MonomialSpace::span_of(ctx.with_cap(cap), std::move(vecs));
}

bool inside_monomial_ideal(const MonomialSpace& m, const Staircase& e) {
  const auto codec = m.context().codec();
  for (const auto& row : m.basis())
    for (const auto& t : row)
      if (e.contains(codec.x_exponent(t.key))) return false;
  return true;
}

// ---------------------------------------------------------------- flat limit

MonomialSpace flat_limit(const std::vector<Poly>& family, const RingContext& ctx, std::uint64_t seed) {
  const auto codec = ctx.codec();
  const auto& f = ctx.field;
  // Columns: the distinct x-monomials, in decreasing order.
  std::vector<MonoKey> cols;
  int tmax = 0;
  for (const auto& p : family)
    for (const auto& t : p) {
      if (codec.x_degree(t.key) > ctx.x_cap) throw CapExceeded("family element exceeds x_cap");
      cols.push_back(t.key | 0xFFFF);
      tmax = std::max(tmax, codec.t_exponent(t.key));
    }
  std::sort(cols.begin(), cols.end(), std::greater<>());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::unordered_map<MonoKey, Eigen::Index> col_of;
  for (std::size_t i = 0; i < cols.size(); ++i) col_of.emplace(cols[i], static_cast<Eigen::Index>(i));

  const auto nrows = static_cast<Eigen::Index>(family.size());
  const auto ncols = static_cast<Eigen::Index>(cols.size());
  PolyMatrix<u64> pm;
  pm.coeffs.assign(static_cast<std::size_t>(tmax) + 1, MatrixP::Zero(nrows, ncols));
  for (Eigen::Index r = 0; r < nrows; ++r)
    for (const auto& t : family[static_cast<std::size_t>(r)])
      pm.coeffs[static_cast<std::size_t>(codec.t_exponent(t.key))](r, col_of.at(t.key | 0xFFFF)) = t.coef;

  // Generic rank over F_p(t) from random evaluations.
  std::mt19937_64 rng(seed);
  Eigen::Index expected = 0;
  for (int trial = 0; trial < 2; ++trial) expected = std::max(expected, rank(f, pm.evaluate(f, f.random(rng))));

  const auto res = flat_limit_rows(f, pm, ctx.t_precision, expected);
  std::vector<Poly> rows;
  for (Eigen::Index i = 0; i < res.limit.rows.rows(); ++i) {
    Poly p;
    for (Eigen::Index j = 0; j < ncols; ++j) {
      const u64 c = res.limit.rows(i, j);
      if (c) p.push_back({cols[static_cast<std::size_t>(j)], c});
    }
    rows.push_back(std::move(p));
  }
  return MonomialSpace::span_of(ctx.with_trunc(1), std::move(rows));
}

}  // namespace limitseries
