#include "bz/matrix.hpp"

#include "bz/errors.hpp"

#include <unordered_map>

namespace bz {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<LaurentScalar>>& rows) {
    if (rows.empty()) return {};
    RationalMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

LaurentVector operator*(const RationalMatrix& m, const LaurentVector& x) {
    if (m.cols() != x.size()) throw DomainError("matrix-vector dimension mismatch");
    LaurentVector y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m.at(i, j) * x[j];
    return y;
}

LaurentScalar mat_det(const RationalMatrix& m) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    RationalMatrix a = m;
    LaurentScalar prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k).is_zero()) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = exact_divide(a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    LaurentScalar d = a.at(n - 1, n - 1);
    return negate ? -d : d;
}

namespace {

struct CofactorSolver {
    const RationalMatrix& m;
    std::unordered_map<std::uint32_t, LaurentScalar> memo;

    // Determinant of the minor on the last popcount(cols) rows and the
    // column set cols.
    LaurentScalar minor(std::uint32_t cols) {
        if (cols == 0) return 1;
        if (auto it = memo.find(cols); it != memo.end()) return it->second;
        const std::size_t n = m.rows();
        const std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(cols));
        LaurentScalar total;
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(cols & (1u << j))) continue;
            if (!m.at(row, j).is_zero()) {
                LaurentScalar t = m.at(row, j) * minor(cols & ~(1u << j));
                if (sign > 0) total += t; else total -= t;
            }
            sign = -sign;
        }
        memo.emplace(cols, total);
        return total;
    }
};

} // namespace

LaurentScalar det_cofactor(const RationalMatrix& m) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    if (m.rows() > 20) throw GuardExceeded("cofactor expansion limited to size 20");
    CofactorSolver s{m, {}};
    return s.minor(m.rows() == 0 ? 0u : (1u << m.rows()) - 1);
}

LaurentVector mat_solve(const RationalMatrix& m, const LaurentVector& t) {
    if (!m.square()) throw DomainError("solve with a non-square matrix");
    if (m.rows() != t.size()) throw DomainError("solve: right-hand side has wrong length");
    const std::size_t n = m.rows();
    LaurentScalar det = mat_det(m);
    if (det.is_zero()) throw DomainError("singular matrix");
    LaurentVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        RationalMatrix mi = m;
        for (std::size_t r = 0; r < n; ++r) mi.at(r, i) = t[r];
        x[i] = exact_divide(mat_det(mi), det);
    }
    return x;
}

} // namespace bz
