#pragma once

#include "bz/laurent.hpp"
#include "bz/segments.hpp"

#include <cstdint>
#include <vector>

namespace bz {

/// Jordan block sizes of a nilpotent operator.
struct JordanType {
    std::vector<int> parts;
};

/// q = v^2 as a Laurent scalar.
LaurentScalar q_power(std::int64_t k);

/// [k]_q! = prod_{i=1..k} (1 + q + ... + q^{i-1}).
LaurentScalar q_factorial(int k);

/// Number of F_q-points of the partial flag variety of type parts, as a
/// polynomial in q = v^2.
LaurentScalar gaussian_multinomial(const std::vector<int>& parts);

/// Dimension of the principal-congruence fixed vectors of the full induced
/// representation pi(S). Needs every label to be an unramified character.
LaurentScalar k1_dimension(const MultiSegment& s);

/// sum over segments of len (len - 1) / 2.
std::int64_t k1_valuation(const MultiSegment& s);
std::int64_t k1_valuation(const std::vector<int>& lengths);

/// Nonzero entries of exp(N) - 1 for N nilpotent in Jordan form.
std::int64_t monodromy_nonzero_count(const JordanType& j);

/// Value of a polynomial in v with only even exponents at a rational q.
Rational eval_at_q(const LaurentScalar& p, const Rational& q);

} // namespace bz
