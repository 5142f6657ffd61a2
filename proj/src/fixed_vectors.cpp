#include "bz/fixed_vectors.hpp"

#include "bz/combinatorics.hpp"
#include "bz/errors.hpp"
#include "bz/matrix.hpp"

namespace bz {

LaurentScalar q_power(std::int64_t k) { return LaurentScalar::var(kResidueVar, 2 * k); }

LaurentScalar q_factorial(int k) {
    LaurentScalar out = 1, bracket = 0;
    for (int i = 1; i <= k; ++i) {
        bracket += q_power(i - 1);
        out *= bracket;
    }
    return out;
}

LaurentScalar gaussian_multinomial(const std::vector<int>& parts) {
    int n = 0;
    LaurentScalar den = 1;
    for (int p : parts) {
        if (p < 1) throw DomainError("flag type parts must be positive");
        n += p;
        den *= q_factorial(p);
    }
    return exact_divide(q_factorial(n), den);
}

LaurentScalar k1_dimension(const MultiSegment& s) {
    std::vector<int> lengths;
    for (const auto& seg : s.segments()) {
        if (seg.label.deg != 1 || seg.label.artin != 0)
            throw DomainError("fixed-vector dimension needs unramified-character support; label " +
                              seg.label.name + " is not one");
        lengths.push_back(seg.len);
    }
    return gaussian_multinomial(lengths) * q_power(k1_valuation(lengths));
}

std::int64_t k1_valuation(const std::vector<int>& lengths) {
    std::int64_t total = 0;
    for (int l : lengths) total += static_cast<std::int64_t>(l) * (l - 1) / 2;
    return total;
}

std::int64_t k1_valuation(const MultiSegment& s) {
    std::vector<int> lengths;
    for (const auto& seg : s.segments()) lengths.push_back(seg.len);
    return k1_valuation(lengths);
}

std::int64_t monodromy_nonzero_count(const JordanType& j) {
    int n = 0;
    for (int p : j.parts) {
        if (p < 1) throw DomainError("Jordan block sizes must be positive");
        n += p;
    }
    const auto dim = static_cast<std::size_t>(n);
    RationalMatrix nil(dim, dim);
    std::size_t offset = 0;
    for (int p : j.parts) {
        for (int i = 0; i + 1 < p; ++i) nil.at(offset + i, offset + i + 1) = 1;
        offset += static_cast<std::size_t>(p);
    }
    // exp(N) - 1 = N + N^2/2! + ... ; N^n = 0.
    RationalMatrix sum(dim, dim), power = nil;
    for (int k = 1; k <= n; ++k) {
        Rational inv_fact(1, 1);
        inv_fact /= Rational(factorial(k));
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                if (!power.at(a, b).is_zero()) sum.at(a, b) += power.at(a, b) * LaurentScalar(inv_fact);
        power = power * nil;
    }
    std::int64_t count = 0;
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            if (!sum.at(a, b).is_zero()) ++count;
    return count;
}

Rational eval_at_q(const LaurentScalar& p, const Rational& q) {
    const VarId v = intern_var(kResidueVar);
    Rational total = 0;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [id, e] : m.entries())
            if (id != v) throw DomainError("eval_at_q: unexpected variable " + var_name(id));
        std::int64_t e = m.exponent(v);
        if (e % 2 != 0) throw DomainError("eval_at_q: odd power of v has no value in Q(q)");
        total += c * LaurentScalar(q).pow(e / 2).constant();
    }
    return total;
}

} // namespace bz
