#ifndef LIMITSERIES_INTERP_HPP
#define LIMITSERIES_INTERP_HPP

// Dimension of plane curve systems through unions of monomial schemes, by the
// rank of a conditions matrix over F_p at random positions.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "limitseries/field.hpp"
#include "limitseries/linalg.hpp"
#include "limitseries/staircase.hpp"

namespace limitseries {

struct PlanePoint {
  std::uint64_t x = 0, y = 0;
  bool operator==(const PlanePoint& o) const { return x == o.x && y == o.y; }
};

/// Local coordinates u at a site: (x, y) = position + M u.
struct Frame {
  std::uint64_t m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  static Frame identity() { return {}; }
  static Frame random(const PrimeField& f, std::mt19937_64& rng);
  std::uint64_t det(const PrimeField& f) const;
};

/// A monomial scheme placed in the plane: the cells of `shape` are the
/// Taylor coefficients, in frame coordinates, that must vanish.
struct Site {
  std::optional<PlanePoint> position;  ///< drawn at random when unset
  std::optional<Frame> frame;          ///< identity for fat points, random otherwise
  Staircase shape = regular(1);

  static Site fat_point(int m) { return Site{std::nullopt, std::nullopt, regular(m)}; }
};

struct SystemDescriptor {
  int degree = 0;
  std::vector<Site> base_sites;
  std::uint64_t prime = kDefaultPrime;
};

/// Column order of the conditions matrix: x^i y^j for i + j <= d, graded.
std::vector<std::pair<int, int>> plane_monomials(int d);

/// Fills in unset positions and frames; explicit positions must be distinct.
std::vector<Site> realize_sites(const std::vector<Site>& sites, const PrimeField& f, std::mt19937_64& rng);

/// One row per cell of every shape, one column per monomial of degree <= d.
/// Sites must be realized. Throws PrimeTooSmall unless p > d.
MatrixP conditions_matrix(const std::vector<Site>& sites, int d, const PrimeField& f);
/// Realizes the sites with `rng`, then builds the matrix.
MatrixP conditions_matrix(const std::vector<Site>& sites, int d, const PrimeField& f, std::mt19937_64& rng);

/// Max rank of the stacked conditions over `trials` random realizations.
std::int64_t hilbert_function_of(const std::vector<Site>& sites, int d, int trials, std::uint64_t seed,
                                 std::uint64_t prime = kDefaultPrime);

/// (d+1)(d+2)/2 minus the generic rank of base and extra conditions.
std::int64_t system_dimension(const SystemDescriptor& sys, const std::vector<Site>& extra_sites, int trials,
                              std::uint64_t seed);

struct NagataRow {
  int d = 0;
  std::int64_t oracle = 0;
  std::int64_t virtual_value = 0;
  bool match = false;
};

struct NagataTable {
  int k = 0, m = 0;
  std::uint64_t seed = 0;
  std::uint64_t prime = kDefaultPrime;
  int trials = 0;
  std::vector<NagataRow> rows;
  bool pass = false;
};

/// Default desk-scale limits for the oracle.
inline constexpr int kOracleMaxK = 4;
inline constexpr int kOracleMaxM = 3;

/// Compares the oracle with min((d+1)(d+2)/2, k^2 m(m+1)/2) for d <= d_max.
/// Throws ResourceLimit beyond the desk-scale limits unless `force`.
NagataTable verify_nagata_theorem(int k, int m, int d_max, int trials, std::uint64_t seed,
                                  std::uint64_t prime = kDefaultPrime, bool force = false);

/// "# seed=...,prime=..." header, then "d,oracle,virtual,match" rows.
std::string to_csv(const NagataTable& t);

}  // namespace limitseries

#endif  // LIMITSERIES_INTERP_HPP
