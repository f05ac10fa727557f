#ifndef LIMITSERIES_FIELD_HPP
#define LIMITSERIES_FIELD_HPP

#include <cstdint>
#include <random>

namespace limitseries {

/// Mersenne prime 2^61 - 1, the default characteristic.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;
/// Second prime for cross-checks: the largest prime below 2^61 - 1.
inline constexpr std::uint64_t kSecondaryPrime = (std::uint64_t{1} << 61) - 31;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The prime field F_p for p < 2^62. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Scalar = std::uint64_t;

  /// Throws DomainError unless p is a prime below 2^62.
  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t characteristic() const { return p_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }

  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const;
  /// Inverse of a nonzero element.
  Scalar inv(Scalar a) const;

  Scalar from_int(std::int64_t v) const;
  /// Symmetric representative in (-p/2, p/2], for printing.
  std::int64_t to_signed(Scalar a) const;

  /// Uniform element drawn from a 64-bit engine (bias below 2^-2 for p near 2^62).
  Scalar random(std::mt19937_64& rng) const { return rng() % p_; }
  Scalar random_nonzero(std::mt19937_64& rng) const { return 1 + rng() % (p_ - 1); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
};

}  // namespace limitseries

#endif  // LIMITSERIES_FIELD_HPP
