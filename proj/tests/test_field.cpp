#include "doctest.h"

#include "limitseries/errors.hpp"
#include "limitseries/field.hpp"
#include "limitseries/linalg.hpp"

using namespace limitseries;

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(kDefaultPrime));
  CHECK(is_prime(kSecondaryPrime));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));  // Carmichael
  CHECK_FALSE(is_prime(kDefaultPrime - 2));
  CHECK_THROWS_AS(PrimeField(15), DomainError);
}

TEST_CASE("field arithmetic") {
  PrimeField f(101);
  CHECK(f.add(100, 5) == 4);
  CHECK(f.sub(3, 5) == 99);
  CHECK(f.mul(f.inv(7), 7) == 1);
  CHECK(f.from_int(-1) == 100);
  CHECK(f.to_signed(100) == -1);
  PrimeField big;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto a = big.random_nonzero(rng);
    CHECK(big.mul(a, big.inv(a)) == 1);
  }
}

TEST_CASE("dense rank, kernel and row echelon") {
  PrimeField f(101);
  MatrixP m(3, 4);
  m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1;
  CHECK(rank(f, m) == 2);
  const auto ker = nullspace(f, m);
  CHECK(ker.rows() == 2);
  for (Eigen::Index i = 0; i < ker.rows(); ++i)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      std::uint64_t s = 0;
      for (Eigen::Index c = 0; c < m.cols(); ++c) s = f.add(s, f.mul(m(r, c), ker(i, c)));
      CHECK(s == 0);
    }
  const auto ef = reduced_row_echelon(f, m);
  CHECK(ef.pivots == std::vector<Eigen::Index>{0, 1});
  CHECK(rowspace_contains(f, ef.rows, m));
}

TEST_CASE("t-adic elimination of a polynomial matrix") {
  // rows x + t y and t x; the limit is spanned by x and y.
  PrimeField f;
  PolyMatrix<std::uint64_t> pm;
  pm.coeffs.assign(2, MatrixP::Zero(2, 2));
  pm.coeffs[0](0, 0) = 1;
  pm.coeffs[1](0, 1) = 1;
  pm.coeffs[1](1, 0) = 1;
  const auto res = flat_limit_rows(f, pm, 8, 2);
  CHECK(res.limit.rank() == 2);
  CHECK(res.dropped == 0);
  CHECK_THROWS_AS(flat_limit_rows(f, pm, 1, 2), PrecisionExceeded);
}
