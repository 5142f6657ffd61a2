#pragma once

#include "bz/laurent.hpp"

#include <cstddef>
#include <vector>

namespace bz {

/// Dense row-major matrix of Laurent scalars.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<std::vector<LaurentScalar>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    LaurentScalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const LaurentScalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<LaurentScalar> data_;
};

using LaurentVector = std::vector<LaurentScalar>;

LaurentVector operator*(const RationalMatrix& m, const LaurentVector& x);

/// Fraction-free (Bareiss) elimination; every division is exact in the
/// Laurent ring.
LaurentScalar mat_det(const RationalMatrix& m);

/// Laplace expansion along the first row with memoized minors. Exponential
/// in size; kept as an independent check on mat_det.
LaurentScalar det_cofactor(const RationalMatrix& m);

/// Solve m x = t by Cramer's rule. Each x_i = det(m_i) / det(m) must be an
/// exact Laurent quotient; this always holds when det(m) is a nonzero
/// rational.
LaurentVector mat_solve(const RationalMatrix& m, const LaurentVector& t);

} // namespace bz
