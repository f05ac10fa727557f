#include "doctest.h"

#include <chrono>

#include "corpus.hpp"
#include "limitseries/errors.hpp"
#include "limitseries/localring.hpp"

using namespace limitseries;

namespace {

RingContext ring(int dim, int n, int cap) {
  RingContext ctx;
  ctx.dim = dim;
  ctx.t_trunc = n;
  ctx.x_cap = cap;
  return ctx;
}

// Builds a polynomial from (exponent, t, signed coefficient) triples.
Poly poly(const RingContext& ctx, std::initializer_list<std::tuple<Exponent, int, long long>> terms) {
  std::vector<Term> ts;
  for (const auto& [x, t, c] : terms) ts.push_back({ctx.codec().encode(x, t), ctx.field.from_int(c)});
  return poly_normalize(ctx.field, ts);
}

}  // namespace

TEST_CASE("monomial codec order") {
  MonomialCodec c(3);
  // Degree first, then reverse lexicographic, then smaller t.
  CHECK(c.encode({0, 0, 2}, 0) > c.encode({1, 0, 0}, 0));
  CHECK(c.encode({2, 0, 0}, 0) > c.encode({1, 1, 0}, 0));
  CHECK(c.encode({1, 1, 0}, 0) > c.encode({0, 2, 0}, 0));
  CHECK(c.encode({0, 2, 0}, 0) > c.encode({1, 0, 1}, 0));
  CHECK(c.encode({1, 0, 0}, 0) > c.encode({1, 0, 0}, 1));
  const auto k = c.encode({3, 1, 2}, 7);
  CHECK(c.x_exponent(k) == Exponent{3, 1, 2});
  CHECK(c.t_exponent(k) == 7);
  CHECK(c.x1_exponent(k) == 3);
  CHECK(c.x_exponent(c.divide_x1(k)) == Exponent{2, 1, 2});
  CHECK(c.multiply(k, {0, 1, 0}, 2) == c.encode({3, 2, 2}, 9));
  CHECK_THROWS_AS(MonomialCodec(6), DomainError);
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials_up_to(2, 2).size() == 6);
  CHECK(monomials_up_to(3, 3).size() == 20);
  CHECK(monomials_up_to(1, 4).size() == 5);
}

TEST_CASE("context validation") {
  RingContext ctx;
  CHECK_NOTHROW(ctx.validate());
  ctx.field = PrimeField(7);
  ctx.x_cap = 7;
  CHECK_THROWS_AS(ctx.validate(), DomainError);
  ctx.x_cap = 0;
  CHECK_THROWS_AS(ctx.validate(), DomainError);
}

TEST_CASE("translated generators") {
  const auto ctx = ring(2, 4, 6);
  auto fam = translate_ideal(regular(1), 1, ctx);
  REQUIRE(fam.generators.size() == 2);
  CHECK(fam.generators[0] == poly(ctx, {{{1, 0}, 0, 1}, {{0, 0}, 1, -1}}));
  CHECK(fam.generators[1] == poly(ctx, {{{0, 1}, 0, 1}}));

  fam = translate_ideal(Staircase::from_cells({{0, 0}, {1, 0}}), 2, ctx);
  CHECK(fam.generators[0] == poly(ctx, {{{2, 0}, 0, 1}, {{1, 0}, 2, -2}}));  // t^4 dropped in R_4
  CHECK(fam.generators[1] == poly(ctx, {{{0, 1}, 0, 1}}));

  fam = translate_ideal(regular(2), 1, ctx);
  REQUIRE(fam.generators.size() == 3);
  CHECK(fam.generators[0] == poly(ctx, {{{2, 0}, 0, 1}, {{1, 0}, 1, -2}, {{0, 0}, 2, 1}}));
  CHECK(fam.generators[1] == poly(ctx, {{{1, 1}, 0, 1}, {{0, 1}, 1, -1}}));
  CHECK(fam.generators[2] == poly(ctx, {{{0, 2}, 0, 1}}));

  CHECK_THROWS_AS(translate_ideal(regular(4), 1, ring(2, 4, 3)), CapExceeded);
  RingContext untrunc = ring(2, RingContext::kUntruncated, 8);
  untrunc.t_precision = 3;
  CHECK_THROWS_AS(translate_ideal(Staircase::from_columns({2}), 2, untrunc), CapExceeded);
}

TEST_CASE("translated span agrees with the ideal span") {
  for (int h : {1, 2, 3}) {
    const auto e = Staircase::from_columns({h, 1});
    const auto ctx = ring(2, 4, 6);
    const auto fam = translate_ideal(e, 1, ctx);
    CHECK(span(fam, 6, 6) == translated_span(e, 1, ctx));
  }
  const auto e3 = Staircase::from_heights(3, {{{0, 0}, 2}, {{1, 0}, 1}});
  const auto ctx3 = ring(3, 3, 4);
  CHECK(span(translate_ideal(e3, 2, ctx3), 4, 4) == translated_span(e3, 2, ctx3));
}

TEST_CASE("truncation") {
  const auto ctx = ring(2, 3, 4);
  const auto m = MonomialSpace::span_of(ctx, {poly(ctx, {{{1, 0}, 0, 1}, {{0, 0}, 1, -1}})});
  const auto m1 = truncate(m, 1);
  CHECK(m1.basis() == std::vector<Poly>{poly(ctx, {{{1, 0}, 0, 1}})});
  CHECK_THROWS_AS(truncate(m, 4), InvalidTruncation);
  CHECK_THROWS_AS(truncate(m1, 2), InvalidTruncation);

  FamilyIdeal fam;
  fam.context = ctx;
  fam.generators = {poly(ctx, {{{2, 0}, 0, 1}, {{1, 0}, 1, -2}, {{0, 0}, 2, 1}})};
  CHECK(truncate(fam, 2).generators[0] == poly(ctx, {{{2, 0}, 0, 1}, {{1, 0}, 1, -2}}));

  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    const auto e = testing::random_plane_staircase(rng, 8);
    const auto j = translated_span(e, 1 + static_cast<int>(rng() % 3), ring(2, 6, 5));
    const int a = 1 + static_cast<int>(rng() % 6), b = 1 + static_cast<int>(rng() % 6);
    CHECK(truncate(truncate(j, std::max(a, b)), std::min(a, b)) == truncate(j, std::min(a, b)));
  }
}

TEST_CASE("colon by x1") {
  const auto ctx = ring(2, 1, 5);
  const auto e = Staircase::from_columns({2, 1, 1});  // I^E = (x^2, xy, y^3)
  CHECK(colon_x1(monomial_ideal_span(e, ctx, 5)) == monomial_ideal_span(regular(1), ctx, 4));
  CHECK(colon_x1(monomial_ideal_span(Staircase::segment(1), ring(1, 1, 3), 3)) ==
        monomial_ideal_span(Staircase(1), ring(1, 1, 2), 2));

  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 100; ++iter) {
    const auto s = testing::random_plane_staircase(rng, 15);
    const int cap = s.max_cell_degree() + 2;
    const auto c = ring(2, 1 + static_cast<int>(rng() % 3), cap);
    Staircase::HeightMap shifted;
    for (const auto& [base, h] : s.heights()) shifted[base] = h - 1;
    const auto expect = monomial_ideal_span(Staircase::from_heights(2, shifted), c, cap - 1);
    CHECK(colon_x1(monomial_ideal_span(s, c, cap)) == expect);
  }
  CHECK_THROWS_AS(colon_x1(MonomialSpace(ring(2, 1, 1).with_cap(0))), CapExhausted);
}

TEST_CASE("residual chain examples") {
  // A simple point at speed 1 reaching level 1: the colon is the unit ideal.
  {
    const auto e = regular(1);
    const std::vector<int> ns{1};
    auto ctx = ring(2, RingContext::kUntruncated, required_caps(e, 1, ns).chain_cap);
    const auto res = residual_chain(e, 1, ns, ctx);
    CHECK(res.contains(monomial(res.context(), {0, 0}, 0)));
  }
  // Two cells on a line, d = 1: (x - t)^2 and t x - 2 t^2 in R_3.
  {
    const auto e = Staircase::segment(2);
    const std::vector<int> ns{3};
    const auto caps = required_caps(e, 1, ns);
    auto ctx = ring(1, RingContext::kUntruncated, caps.chain_cap);
    const auto res = residual_chain(e, 1, ns, ctx);
    const auto c3 = res.context();
    CHECK(res.contains(poly(c3, {{{2}, 0, 1}, {{1}, 1, -2}, {{0}, 2, 1}})));
    CHECK(res.contains(poly(c3, {{{1}, 1, 1}, {{0}, 2, -2}})));
    CHECK_FALSE(res.contains(poly(c3, {{{1}, 0, 1}})));
    const auto fam = closed_form_residual(e, 1, ns, ctx);
    REQUIRE(fam.generators.size() == 2);
    CHECK(fam.generators[1] == poly(c3, {{{1}, 1, 1}, {{0}, 2, -2}}));
    CHECK(span(fam, caps.output_cap, caps.gen_cap) == res);
  }
  // A point at speed 2 reaching level 3: t (x - t^2) / x = t in R_3.
  {
    const auto e = Staircase::segment(1);
    const std::vector<int> ns{3};
    auto ctx = ring(1, RingContext::kUntruncated, required_caps(e, 2, ns).chain_cap);
    const auto res = residual_chain(e, 2, ns, ctx);
    CHECK(res.contains(poly(res.context(), {{{0}, 1, 1}})));
    CHECK(res.contains(poly(res.context(), {{{1}, 0, 1}, {{0}, 2, -1}})));
    CHECK_FALSE(res.contains(poly(res.context(), {{{0}, 0, 1}})));
  }
}

TEST_CASE("chain argument checks") {
  const auto e = regular(2);
  auto ctx = ring(2, RingContext::kUntruncated, 10);
  CHECK_THROWS_AS(residual_chain(e, 1, {3, 3}, ctx), InvalidSequence);
  CHECK_THROWS_AS(residual_chain(e, 1, {}, ctx), InvalidSequence);
  CHECK_THROWS_AS(residual_chain(e, 1, {2, 0}, ctx), InvalidSequence);
  CHECK_THROWS_AS(residual_chain(e, 1, {5, 3}, ctx.with_cap(3)), CapExceeded);
  // Without the gap rule the low-order coefficients need not vanish.
  CHECK_THROWS_AS(closed_form_residual(Staircase::segment(2), 2, {6, 5}, ring(1, 1, 8)), DivisionWitnessFailure);
}

TEST_CASE("closed form with no levels") {
  const auto e = regular(2);
  const auto fam = closed_form_residual(e, 1, {}, ring(2, 3, 6));
  CHECK(fam.generators.size() == 2);
  CHECK(fam.generators[0] == translate_monomial(ring(2, 3, 6), {2, 0}, 1));
}

TEST_CASE("special fiber examples") {
  const auto two = Staircase::from_cells({{0, 0}, {1, 0}});
  {
    const std::vector<int> ns{3};
    const auto ctx = ring(2, RingContext::kUntruncated, required_caps(two, 1, ns).chain_cap);
    const auto fib = special_fiber(residual_chain(two, 1, ns, ctx));
    CHECK(fib == monomial_ideal_span(two, fib.context(), fib.context().x_cap));
  }
  {
    const std::vector<int> ns{3};
    const auto ctx = ring(2, RingContext::kUntruncated, required_caps(two, 2, ns).chain_cap);
    const auto fib = special_fiber(residual_chain(two, 2, ns, ctx));
    CHECK(fib == monomial_ideal_span(regular(1), fib.context(), fib.context().x_cap));
    CHECK(fiber_staircase(two, 2, ns) == regular(1));
  }
  {
    // Boundary: n = v h. The fiber is the unit ideal, not I^{S(E, 1)} = I^E.
    const std::vector<int> ns{1};
    CHECK(is_boundary(regular(1), 1, ns));
    const auto ctx = ring(2, RingContext::kUntruncated, required_caps(regular(1), 1, ns).chain_cap);
    const auto fib = special_fiber(residual_chain(regular(1), 1, ns, ctx));
    CHECK(fib == monomial_ideal_span(Staircase(), fib.context(), fib.context().x_cap));
    CHECK(suppress(regular(1), 1) == regular(1));
    CHECK(fiber_staircase(regular(1), 1, ns).empty());
  }
}

TEST_CASE("fiber exponent rule") {
  CHECK(fiber_exponent(2, 1, {3}) == 2);
  CHECK(fiber_exponent(2, 2, {3}) == 1);
  CHECK(fiber_exponent(1, 1, {1}) == 0);
  CHECK(fiber_exponent(3, 1, {7, 3}) == 2);
  CHECK(fiber_exponent(3, 1, {7, 2}) == 2);
  CHECK(fiber_exponent(1, 1, {3, 1}) == 0);
}

TEST_CASE("random chains: closed form, trace and specialization") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 25; ++iter) {
    const auto in = testing::random_chain_instance(rng, 10, 3, 3);
    const auto ctx = testing::chain_context(in);
    const auto caps = required_caps(in.e, in.v, in.ns);
    const auto stages = residual_chain_stages(in.e, in.v, in.ns, ctx);
    const auto& res = stages.back().space;
    CAPTURE(iter);
    CHECK(span(closed_form_residual(in.e, in.v, in.ns, ctx), caps.output_cap, caps.gen_cap) == res);

    std::vector<int> ts;
    for (int n : in.ns) ts.push_back(n / in.v);
    const auto fib = special_fiber(res);
    CHECK(fib == monomial_ideal_span(suppress_seq(in.e, ts), fib.context(), fib.context().x_cap));
    CHECK(inside_monomial_ideal(stages[stages.size() - 2].space, slice_embedded(in.e, ts.back())));
  }
}

TEST_CASE("flat limit examples") {
  auto ctx = ring(2, RingContext::kUntruncated, 4);
  const auto lim1 = flat_limit({poly(ctx, {{{0, 1}, 0, 1}}), poly(ctx, {{{2, 0}, 0, 1}, {{0, 0}, 2, -1}})}, ctx);
  CHECK(lim1 == MonomialSpace::span_of(ctx.with_trunc(1), {poly(ctx, {{{0, 1}, 0, 1}}), poly(ctx, {{{2, 0}, 0, 1}})}));

  const auto lim2 = flat_limit({poly(ctx, {{{1, 0}, 0, 1}}), poly(ctx, {{{0, 2}, 0, 1}, {{0, 1}, 1, -1}})}, ctx);
  CHECK(lim2 == MonomialSpace::span_of(ctx.with_trunc(1), {poly(ctx, {{{1, 0}, 0, 1}}), poly(ctx, {{{0, 2}, 0, 1}})}));

  const auto lim3 = flat_limit({poly(ctx, {{{1, 0}, 0, 1}, {{0, 1}, 1, 1}}), poly(ctx, {{{1, 0}, 1, 1}})}, ctx);
  CHECK(lim3 == MonomialSpace::span_of(ctx.with_trunc(1), {poly(ctx, {{{1, 0}, 0, 1}}), poly(ctx, {{{0, 1}, 0, 1}})}));

  // t-independent families are their own limit.
  const std::vector<Poly> fixed{poly(ctx, {{{1, 1}, 0, 1}, {{0, 0}, 0, 3}}), poly(ctx, {{{2, 0}, 0, 1}})};
  CHECK(flat_limit(fixed, ctx) == MonomialSpace::span_of(ctx.with_trunc(1), fixed));

  ctx.t_precision = 1;
  CHECK_THROWS_AS(flat_limit({poly(ctx, {{{1, 0}, 0, 1}, {{0, 1}, 1, 1}}), poly(ctx, {{{1, 0}, 1, 1}})}, ctx),
                  PrecisionExceeded);
}
