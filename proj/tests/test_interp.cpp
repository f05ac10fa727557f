#include "doctest.h"

#include "limitseries/errors.hpp"
#include "limitseries/hilbert.hpp"
#include "limitseries/interp.hpp"

using namespace limitseries;

namespace {

std::vector<Site> fat_points(int count, int m) { return std::vector<Site>(static_cast<std::size_t>(count), Site::fat_point(m)); }

}  // namespace

TEST_CASE("conditions matrix shapes and ranks") {
  const PrimeField f;
  std::mt19937_64 rng(11);
  const auto one = conditions_matrix(fat_points(1, 2), 2, f, rng);
  CHECK(one.rows() == 3);
  CHECK(one.cols() == 6);
  CHECK(rank(f, one) == 3);
  const auto none = conditions_matrix({}, 3, f, rng);
  CHECK(none.rows() == 0);
  CHECK(none.cols() == 10);
  const auto two = conditions_matrix(fat_points(2, 2), 2, f, rng);
  CHECK(two.rows() == 6);
  CHECK(rank(f, two) == 5);
  CHECK_THROWS_AS(conditions_matrix(fat_points(1, 1), 7, PrimeField(7), rng), PrimeTooSmall);
}

TEST_CASE("explicit positions") {
  const PrimeField f;
  // Taylor coefficients at the origin pick out the low monomials.
  Site s{PlanePoint{0, 0}, Frame::identity(), regular(2)};
  const auto m = conditions_matrix({s}, 2, f);
  MatrixP expect = MatrixP::Zero(3, 6);
  expect(0, 0) = 1;  // 1
  expect(1, 1) = 1;  // x
  expect(2, 2) = 1;  // y
  CHECK(m == expect);
  Site a{PlanePoint{1, 2}, std::nullopt, regular(1)};
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(realize_sites({a, a}, f, rng), DomainError);
}

TEST_CASE("system dimensions") {
  CHECK(system_dimension({4, fat_points(5, 2), kDefaultPrime}, {}, 3, 1) == 1);
  CHECK(system_dimension({1, fat_points(1, 1), kDefaultPrime}, {}, 3, 1) == 2);
  CHECK(system_dimension({4, fat_points(4, 2), kDefaultPrime}, {}, 3, 1) == 3);
  CHECK(system_dimension({6, fat_points(9, 2), kDefaultPrime}, {}, 3, 1) == 1);
}

TEST_CASE("Hilbert function values") {
  CHECK(hilbert_function_of(fat_points(4, 1), 1, 3, 5) == 3);
  CHECK(hilbert_function_of(fat_points(9, 2), 6, 3, 5) == 27);
  CHECK(hilbert_function_of(fat_points(2, 2), 2, 3, 5) == 5);
  CHECK(hilbert_function_of(fat_points(2, 2), 2, 3, 5, kSecondaryPrime) == 5);
}

TEST_CASE("rank monotonicity and bounds") {
  std::mt19937_64 rng(99);
  const PrimeField f;
  std::vector<Site> sites;
  std::int64_t prev = 0;
  for (int i = 0; i < 6; ++i) {
    sites.push_back(Site{PlanePoint{f.random(rng), f.random(rng)}, Frame::identity(), regular(1 + i % 3)});
    const auto m = conditions_matrix(sites, 5, f);
    const auto r = rank(f, m);
    CHECK(r >= prev);
    CHECK(r <= std::min(m.rows(), m.cols()));
    prev = r;
  }
}

TEST_CASE("fat point conditions do not depend on the frame") {
  const PrimeField f;
  std::mt19937_64 rng(4);
  const PlanePoint p{f.random(rng), f.random(rng)}, q{f.random(rng), f.random(rng)};
  const auto base = rank(f, conditions_matrix({{p, Frame::identity(), regular(3)}, {q, Frame::identity(), regular(2)}}, 4, f));
  for (int i = 0; i < 10; ++i) {
    const auto m = conditions_matrix({{p, Frame::random(f, rng), regular(3)}, {q, Frame::random(f, rng), regular(2)}}, 4, f);
    CHECK(rank(f, m) == base);
    CHECK(rowspace_contains(f, conditions_matrix({{p, Frame::identity(), regular(3)}, {q, Frame::identity(), regular(2)}}, 4, f), m));
  }
}

TEST_CASE("collinear positions never beat random ones") {
  const PrimeField f;
  std::vector<Site> collinear;
  for (std::uint64_t i = 1; i <= 5; ++i) collinear.push_back({PlanePoint{i, 2 * i}, Frame::identity(), regular(1)});
  const auto special = rank(f, conditions_matrix(collinear, 2, f));
  CHECK(special == 3);  // five points on a line impose three conditions on conics
  CHECK(hilbert_function_of(std::vector<Site>(5, Site::fat_point(1)), 2, 3, 8) == 5);
  CHECK(hilbert_function_of(std::vector<Site>(5, Site::fat_point(1)), 2, 3, 8) >= special);
}

TEST_CASE("general shapes get generic frames") {
  // A length-2 scheme with a random tangent direction: conditions on lines.
  Site s{std::nullopt, std::nullopt, Staircase::from_columns({2})};
  CHECK(hilbert_function_of({s}, 1, 3, 21) == 2);
  CHECK(hilbert_function_of({s, s}, 2, 3, 21) == 4);
}

TEST_CASE("desk-scale oracle tables") {
  const auto t = verify_nagata_theorem(2, 2, 6, 3, 7);
  CHECK(t.pass);
  CHECK(t.rows.size() == 7);
  CHECK(verify_nagata_theorem(3, 1, 4, 3, 7).pass);
  CHECK(verify_nagata_theorem(4, 2, 11, 3, 7).pass);
  CHECK_THROWS_AS(verify_nagata_theorem(12, 9, 3, 1, 7), ResourceLimit);
  const auto a = to_csv(verify_nagata_theorem(2, 1, 3, 3, 42));
  const auto b = to_csv(verify_nagata_theorem(2, 1, 3, 3, 42));
  CHECK(a == b);
  CHECK(a.find("d,oracle,virtual,match") != std::string::npos);
  CHECK(a.find("seed=42") != std::string::npos);
}
