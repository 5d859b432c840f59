#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pnembed {

// GMP-backed rational; always in lowest terms with a positive denominator.
// Expression templates are disabled so the type composes cleanly with Eigen.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;
using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;

template <typename Scalar>
struct RowEchelon {
    Matrix<Scalar> reduced;
    Eigen::Index rank = 0;
    std::vector<Eigen::Index> pivots;
};

/// Reduced row-echelon form by Gauss-Jordan elimination. The pivot in each
/// column is the first row (at or below the current one) with a nonzero
/// entry, so the output is deterministic. Requires an exact field scalar.
template <typename Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    RowEchelon<Scalar> out;
    out.reduced = m;
    auto& a = out.reduced;
    const Scalar zero(0);

    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index pivot = row;
        while (pivot < a.rows() && a(pivot, col) == zero)
            ++pivot;
        if (pivot == a.rows())
            continue;
        if (pivot != row)
            a.row(pivot).swap(a.row(row));

        const Scalar inv = Scalar(1) / a(row, col);
        for (Eigen::Index j = col; j < a.cols(); ++j)
            a(row, j) *= inv;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == zero)
                continue;
            const Scalar factor = a(i, col);
            for (Eigen::Index j = col; j < a.cols(); ++j)
                a(i, j) -= factor * a(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = static_cast<Eigen::Index>(out.pivots.size());
    return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m)
{
    return rref(m).rank;
}

/// Basis of { v : m v = 0 }, one vector per free column in column order.
/// Each vector has a 1 at its free column and zeros at the other free columns.
template <typename Derived>
std::vector<Vector<typename Derived::Scalar>> nullspace_basis(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    const auto ech = rref(m);
    const Eigen::Index cols = m.cols();

    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (auto p : ech.pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<Vector<Scalar>> basis;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)])
            continue;
        Vector<Scalar> v = Vector<Scalar>::Constant(cols, Scalar(0));
        v(free) = Scalar(1);
        for (Eigen::Index r = 0; r < ech.rank; ++r)
            v(ech.pivots[static_cast<std::size_t>(r)]) = -ech.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// True iff v is a linear combination of the rows of `rows`.
template <typename DerivedM, typename DerivedV>
bool in_span(const Eigen::MatrixBase<DerivedM>& rows, const Eigen::MatrixBase<DerivedV>& v)
{
    using Scalar = typename DerivedM::Scalar;
    if (v.size() != rows.cols())
        throw std::invalid_argument("in_span: vector dimension does not match row length");
    Matrix<Scalar> stacked(rows.rows() + 1, rows.cols());
    stacked.topRows(rows.rows()) = rows;
    for (Eigen::Index j = 0; j < v.size(); ++j)
        stacked(rows.rows(), j) = v(j);
    return rank(rows) == rank(stacked);
}

/// Row-reduced basis of the row space: the nonzero rows of rref(m).
template <typename Derived>
Matrix<typename Derived::Scalar> row_basis(const Eigen::MatrixBase<Derived>& m)
{
    auto ech = rref(m);
    return ech.reduced.topRows(ech.rank);
}

/// Scales a rational vector to the primitive integer vector on the same ray
/// (denominators cleared, common factor removed). Throws std::overflow_error
/// if an entry does not fit in 64 bits.
IntVector clear_denominators(const RatVector& v);

template <typename Derived>
RatMatrix to_rational(const Eigen::MatrixBase<Derived>& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = Rational(m(i, j));
    return out;
}

template <typename Derived>
RatVector to_rational_vector(const Eigen::MatrixBase<Derived>& v)
{
    RatVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = Rational(v(i));
    return out;
}

/// Exact integer dot product; throws std::overflow_error on 64-bit overflow.
std::int64_t checked_dot(const IntVector& a, const IntVector& b);

} // namespace pnembed
