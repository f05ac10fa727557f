#include "limitseries/field.hpp"

#include "limitseries/errors.hpp"

#include <string>

namespace limitseries {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for n < 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (u64{1} << 62) || !is_prime(p)) {
    throw DomainError("modulus " + std::to_string(p) + " is not a prime below 2^62");
  }
}

PrimeField::Scalar PrimeField::pow(Scalar a, std::uint64_t e) const { return powmod(a, e, p_); }

PrimeField::Scalar PrimeField::inv(Scalar a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return powmod(a, p_ - 2, p_);
}

PrimeField::Scalar PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<u64>(v) % p_;
  u64 m = static_cast<u64>(-(v + 1)) % p_;  // avoids overflow at INT64_MIN
  return sub(p_ - 1, m);
}

std::int64_t PrimeField::to_signed(Scalar a) const {
  return a > p_ / 2 ? -static_cast<std::int64_t>(p_ - a) : static_cast<std::int64_t>(a);
}

}  // namespace limitseries
