#ifndef LIMITSERIES_LINALG_HPP
#define LIMITSERIES_LINALG_HPP

// Exact dense linear algebra over a finite field, on Eigen storage.
//
// The kernels are templated on the field type; Field must expose Scalar,
// zero(), one(), add, sub, neg, mul and inv. Eigen provides storage, blocks
// and row swaps; arithmetic goes through the field object.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "limitseries/errors.hpp"
#include "limitseries/field.hpp"

namespace limitseries {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense matrix over F_p, residues stored as 64-bit words.
using MatrixP = Matrix<PrimeField::Scalar>;

template <class Scalar>
struct EchelonForm {
  Matrix<Scalar> rows;              ///< rank x cols, reduced row echelon form
  std::vector<Eigen::Index> pivots; ///< pivot column of each row, increasing
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

namespace detail {

/// row(dst) -= factor * row(src), restricted to columns >= from.
template <class Field, class M>
void row_axpy(const Field& f, M& m, Eigen::Index dst, Eigen::Index src,
              typename Field::Scalar factor, Eigen::Index from = 0) {
  for (Eigen::Index c = from; c < m.cols(); ++c) {
    if (m(src, c) != 0) m(dst, c) = f.sub(m(dst, c), f.mul(factor, m(src, c)));
  }
}

template <class Field, class M>
void row_scale(const Field& f, M& m, Eigen::Index r, typename Field::Scalar factor) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = f.mul(factor, m(r, c));
}

}  // namespace detail

/// Gauss-Jordan elimination; returns the nonzero rows of the reduced form.
template <class Field, class Derived>
EchelonForm<typename Field::Scalar> reduced_row_echelon(const Field& f,
                                                        const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Field::Scalar;
  Matrix<Scalar> m = input;
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Eigen::Index piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    detail::row_scale(f, m, r, f.inv(m(r, c)));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != r && m(i, c) != 0) detail::row_axpy(f, m, i, r, m(i, c), c);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.topRows(r), std::move(pivots)};
}

template <class Field, class Derived>
Eigen::Index rank(const Field& f, const Eigen::MatrixBase<Derived>& m) {
  // Forward elimination only.
  using Scalar = typename Field::Scalar;
  Matrix<Scalar> a = m;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const Scalar inv = f.inv(a(r, c));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) != 0) detail::row_axpy(f, a, i, r, f.mul(a(i, c), inv), c);
    }
    ++r;
  }
  return r;
}

/// Basis of the right kernel {x : m x = 0}, one vector per row of the result.
template <class Field, class Derived>
Matrix<typename Field::Scalar> nullspace(const Field& f, const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Field::Scalar;
  const auto ef = reduced_row_echelon(f, m);
  const Eigen::Index n = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (auto p : ef.pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
  Matrix<Scalar> out(n - ef.rank(), n);
  out.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    out(k, free) = f.one();
    for (Eigen::Index i = 0; i < ef.rank(); ++i) out(k, ef.pivots[i]) = f.neg(ef.rows(i, free));
    ++k;
  }
  return out;
}

/// True iff every row of `rows` lies in the row space of `basis`.
template <class Field, class D1, class D2>
bool rowspace_contains(const Field& f, const Eigen::MatrixBase<D1>& basis,
                       const Eigen::MatrixBase<D2>& rows) {
  using Scalar = typename Field::Scalar;
  if (rows.rows() == 0) return true;
  Matrix<Scalar> stacked(basis.rows() + rows.rows(), basis.cols());
  stacked << basis, rows;
  return rank(f, stacked) == rank(f, basis);
}

/// Coefficients of a matrix with entries in F_p[t]: coeffs[b] multiplies t^b.
template <class Scalar>
struct PolyMatrix {
  std::vector<Matrix<Scalar>> coeffs;

  Eigen::Index rows() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }
  Eigen::Index cols() const { return coeffs.empty() ? 0 : coeffs.front().cols(); }
  int degree_bound() const { return static_cast<int>(coeffs.size()); }

  /// Value at t = t0.
  template <class Field>
  Matrix<Scalar> evaluate(const Field& f, Scalar t0) const {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(rows(), cols());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j)
          out(i, j) = f.add(f.mul(out(i, j), t0), (*it)(i, j));
    }
    return out;
  }
};

template <class Scalar>
struct FlatLimitResult {
  EchelonForm<Scalar> limit;  ///< span of the t -> 0 limit of the row space
  int dropped = 0;            ///< rows that vanished to working precision
};

/// Flat limit of the row space of a polynomial matrix.
///
/// t-adic elimination: each row is reduced against the constant terms of the
/// rows kept so far; when its constant term vanishes it is divided by t. Rows
/// that vanish to `precision` are dropped as dependent. If `expected_rank` is
/// nonnegative and fewer rows survive, PrecisionExceeded is thrown.
template <class Field>
FlatLimitResult<typename Field::Scalar> flat_limit_rows(const Field& f,
                                                        const PolyMatrix<typename Field::Scalar>& pm,
                                                        int precision, Eigen::Index expected_rank = -1) {
  using Scalar = typename Field::Scalar;
  const Eigen::Index ncols = pm.cols();
  // Each working row is a (precision x ncols) block of t-coefficients.
  struct Kept {
    Matrix<Scalar> series;
    Eigen::Index pivot;
  };
  std::vector<Kept> kept;
  FlatLimitResult<Scalar> result;

  for (Eigen::Index r = 0; r < pm.rows(); ++r) {
    Matrix<Scalar> v = Matrix<Scalar>::Zero(precision, ncols);
    for (int b = 0; b < std::min(precision, pm.degree_bound()); ++b) v.row(b) = pm.coeffs[b].row(r);
    int known = precision;  // rows [0, known) of v are exact
    bool placed = false;
    while (known > 0 && !placed) {
      // Shift out leading zero layers.
      int val = 0;
      while (val < known && (v.row(val).array() == 0).all()) ++val;
      if (val == known) break;
      if (val > 0) {
        v.topRows(known - val) = v.middleRows(val, known - val).eval();
        v.bottomRows(precision - (known - val)).setZero();
        known -= val;
      }
      // Reduce the constant layer against the kept pivots; each kept constant
      // layer vanishes at the pivots of rows kept before it.
      for (const auto& k : kept) {
        const Scalar c = v(0, k.pivot);
        if (c == 0) continue;
        for (int b = 0; b < known; ++b)
          for (Eigen::Index j = 0; j < ncols; ++j)
            if (k.series(b, j) != 0) v(b, j) = f.sub(v(b, j), f.mul(c, k.series(b, j)));
      }
      Eigen::Index piv = 0;
      while (piv < ncols && v(0, piv) == 0) ++piv;
      if (piv < ncols) {
        // Normalize so the pivot entry of the constant layer is one.
        const Scalar inv = f.inv(v(0, piv));
        for (int b = 0; b < known; ++b)
          for (Eigen::Index j = 0; j < ncols; ++j) v(b, j) = f.mul(v(b, j), inv);
        // Kept series are only trusted to `known` layers.
        v.bottomRows(precision - known).setZero();
        kept.push_back({std::move(v), piv});
        placed = true;
      }
    }
    if (!placed) ++result.dropped;
  }

  if (expected_rank >= 0 && static_cast<Eigen::Index>(kept.size()) < expected_rank) {
    throw PrecisionExceeded("flat limit kept " + std::to_string(kept.size()) + " of " +
                            std::to_string(expected_rank) + " rows at t-precision " +
                            std::to_string(precision));
  }
  Matrix<Scalar> lim(static_cast<Eigen::Index>(kept.size()), ncols);
  for (std::size_t i = 0; i < kept.size(); ++i) lim.row(static_cast<Eigen::Index>(i)) = kept[i].series.row(0);
  result.limit = reduced_row_echelon(f, lim);
  return result;
}

}  // namespace limitseries

#endif  // LIMITSERIES_LINALG_HPP
