#ifndef LIMITSERIES_LOCALRING_HPP
#define LIMITSERIES_LOCALRING_HPP

// Truncated rings R_n = F_p[x_1..x_d][t]/(t^n) with a cap D on total x-degree.
//
// Ideals and modules are handled through their finite-dimensional shadows:
// the F_p-span of their elements of x-degree <= D, kept as a reduced echelon
// basis over the monomials x^a t^b.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limitseries/field.hpp"
#include "limitseries/staircase.hpp"

namespace limitseries {

using MonoKey = std::uint64_t;

/// Packs (a, b) for x^a t^b into 64 bits so that integer order is the
/// monomial order: degrevlex on x, ties broken by smaller t first.
///
/// Layout from the top: 1 flag bit, 8 bits of x-degree, 8 bits per variable
/// x_d .. x_2 holding 255 - a_j, 16 bits holding 65535 - b. The flag bit is
/// set on monomials free of x_1 to realize the elimination order used by the
/// colon computation.
class MonomialCodec {
 public:
  static constexpr int kMaxDim = 5;
  static constexpr int kMaxExponent = 255;
  static constexpr int kMaxT = 65535;

  explicit MonomialCodec(int dim);

  int dim() const { return dim_; }
  MonoKey encode(const Exponent& x, int t) const;
  Exponent x_exponent(MonoKey k) const;
  int t_exponent(MonoKey k) const { return kMaxT - static_cast<int>(k & 0xFFFF); }
  int x_degree(MonoKey k) const { return static_cast<int>((k >> 55) & 0xFF); }
  int x1_exponent(MonoKey k) const;
  /// x^a t^b * key, with the flag cleared.
  MonoKey multiply(MonoKey k, const Exponent& x, int t) const;
  /// key / x_1; requires a_1 >= 1.
  MonoKey divide_x1(MonoKey k) const;
  static MonoKey flag(MonoKey k) { return k | (MonoKey{1} << 63); }
  static MonoKey unflag(MonoKey k) { return k & ~(MonoKey{1} << 63); }
  static bool flagged(MonoKey k) { return (k >> 63) != 0; }

 private:
  int dim_;
};

struct Term {
  MonoKey key;
  std::uint64_t coef;
  bool operator==(const Term& o) const { return key == o.key && coef == o.coef; }
};

/// Sparse polynomial in x and t: terms sorted by key, descending, nonzero coefficients.
using Poly = std::vector<Term>;

/// Sum a + c * b.
Poly poly_axpy(const PrimeField& f, const Poly& a, std::uint64_t c, const Poly& b);
/// Normalizes an unsorted term list (merges duplicates, drops zeros).
Poly poly_normalize(const PrimeField& f, std::vector<Term> terms);
/// Drops every term with t-exponent >= n.
Poly poly_truncate_t(const MonomialCodec& codec, const Poly& p, int n);

/// Ambient ring data for the truncated computations.
struct RingContext {
  static constexpr int kUntruncated = -1;

  int dim = 2;
  PrimeField field{kDefaultPrime};
  int t_trunc = kUntruncated;  ///< n in t^n, or kUntruncated
  int x_cap = 8;               ///< D, the total x-degree cap
  int t_precision = 64;        ///< working precision when untruncated

  /// Throws DomainError unless the invariants p > D, D >= 1, n >= 1 hold.
  void validate() const;
  MonomialCodec codec() const { return MonomialCodec(dim); }
  /// Effective bound on t-exponents: n, or the working precision.
  int t_bound() const { return t_trunc == kUntruncated ? t_precision : t_trunc; }
  RingContext with_trunc(int n) const;
  RingContext with_cap(int d) const;
};

/// Every exponent vector of length dim with total degree <= deg, graded.
std::vector<Exponent> monomials_up_to(int dim, int deg);

/// Polynomial x^a t^b.
Poly monomial(const RingContext& ctx, const Exponent& x, int t, std::uint64_t coef = 1);
/// Tr_v(x^c) = (x_1 - t^v)^{c_1} x_2^{c_2} ... x_d^{c_d}, truncated at ctx.t_bound().
Poly translate_monomial(const RingContext& ctx, const Exponent& c, int v);

/// Finite-dimensional shadow of an ideal or module: the F_p-span of its
/// elements of x-degree <= x_cap in R_{t_trunc}, in reduced echelon form.
class MonomialSpace {
 public:
  explicit MonomialSpace(RingContext ctx) : ctx_(std::move(ctx)) {}
  /// Reduced echelon span of arbitrary vectors (all must respect ctx bounds).
  static MonomialSpace span_of(const RingContext& ctx, std::vector<Poly> vectors);

  const RingContext& context() const { return ctx_; }
  const std::vector<Poly>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

  /// Membership by reduction against the basis.
  bool contains(const Poly& p) const;
  /// Intersection with x-degree <= cap.
  MonomialSpace restrict_cap(int cap) const;

  bool operator==(const MonomialSpace& o) const;
  bool operator!=(const MonomialSpace& o) const { return !(*this == o); }

 private:
  friend class EchelonBuilder;
  RingContext ctx_;
  std::vector<Poly> basis_;  // sorted by leading key, descending
};

/// Incremental reduced-echelon construction over sparse vectors.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(const PrimeField& f) : f_(f) {}
  void add(Poly v);
  /// Fully reduced rows, sorted by leading key descending.
  std::vector<Poly> finish();
  std::size_t rank() const { return rows_.size(); }

 private:
  PrimeField f_;
  std::unordered_map<MonoKey, std::size_t> pivot_;
  std::vector<Poly> rows_;
};

enum class Provenance { TranslatedStaircase, Derived };

/// Generators of an ideal (or of an F_p[x_1, t]-module) in the truncated ring.
struct FamilyIdeal {
  enum class Kind {
    Ideal,     ///< closed under multiplication by every x_j and t
    X1Module,  ///< closed under x_1 and t only, plus the free block below
  };

  RingContext context;
  std::vector<Poly> generators;
  Provenance provenance = Provenance::Derived;
  Kind kind = Kind::Ideal;
  /// X1Module only: every x'^m with height(m) == 0 in this staircase spans a
  /// free block x_1^a x'^m t^b.
  std::optional<Staircase> free_block;
};

/// Span of a family at x-degree <= cap; multiples are generated up to
/// gen_cap (>= cap) before restricting.
MonomialSpace span(const FamilyIdeal& fam, int cap, int gen_cap);

/// J(E, v) = Tr_v(I^E): images of the minimal generators of the complement.
FamilyIdeal translate_ideal(const Staircase& e, int v, const RingContext& ctx);
/// Span of J(E, v) at x-degree <= ctx.x_cap in R_{ctx.t_bound()}. The images of
/// the monomials outside E form a basis since Tr_v preserves x-degree.
MonomialSpace translated_span(const Staircase& e, int v, const RingContext& ctx);

/// psi_{n, n_to}: image in R_{n_to}.
MonomialSpace truncate(const MonomialSpace& m, int n_to);
FamilyIdeal truncate(const FamilyIdeal& fam, int n_to);

/// (M : x_1), valid at x-degree <= cap - 1.
MonomialSpace colon_x1(const MonomialSpace& m);

/// x-degree cap needed by residual_chain so that every step is exact, and
/// the generation cap used when spanning the closed form at the output cap.
struct ChainCaps {
  int chain_cap;   ///< D for the starting ideal
  int output_cap;  ///< D - k
  int gen_cap;     ///< for span(closed_form_residual)
};
ChainCaps required_caps(const Staircase& e, int v, const std::vector<int>& ns);

struct ChainStage {
  std::string label;  ///< e.g. "J_{7}", "J_{7:}", "J_{7:3}"
  MonomialSpace space;
};

/// Every stage J_{n1}, J_{n1:}, J_{n1:n2}, ... by brute-force linear algebra.
std::vector<ChainStage> residual_chain_stages(const Staircase& e, int v, const std::vector<int>& ns,
                                              const RingContext& ctx);
/// J_{n1:...:nk:} in R_{nk}, at x-degree <= ctx.x_cap - k.
MonomialSpace residual_chain(const Staircase& e, int v, const std::vector<int>& ns, const RingContext& ctx);

/// alpha_i = max(0, n_i - v h).
int alpha(int n_i, int v, int h);

/// Generators f_m and t^{alpha_{k-i+1}} f_m / x_1^i (1 <= i <= k) per column,
/// in R_{n_k}, plus the free block C(t).
FamilyIdeal closed_form_residual(const Staircase& e, int v, const std::vector<int>& ns, const RingContext& ctx);

/// Setting t = 0.
MonomialSpace special_fiber(const MonomialSpace& m);

/// x_1-exponent of the special fiber over a column of height h:
/// h - #{j : n_j <= v h}.
int fiber_exponent(int h, int v, const std::vector<int>& ns);
/// Staircase of the special fiber predicted by fiber_exponent.
Staircase fiber_staircase(const Staircase& e, int v, const std::vector<int>& ns);
/// True when some n_j equals v h(m) for a column of E.
bool is_boundary(const Staircase& e, int v, const std::vector<int>& ns);

/// Span of I^E (times F_p[t] when n > 1) at x-degree <= cap in R_n.
MonomialSpace monomial_ideal_span(const Staircase& e, const RingContext& ctx, int cap);
/// Every basis vector of m lies in I^E (x) F_p[t].
bool inside_monomial_ideal(const MonomialSpace& m, const Staircase& e);

/// Flat limit over t -> 0 of the F_p(t)-span of a family; result lives in
/// R_1 at the context's x-cap. Throws PrecisionExceeded if the working
/// precision cannot separate the family.
MonomialSpace flat_limit(const std::vector<Poly>& family, const RingContext& ctx, std::uint64_t seed = 1);

}  // namespace limitseries

#endif  // LIMITSERIES_LOCALRING_HPP
