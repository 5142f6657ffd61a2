#pragma once

#include "bz/laurent.hpp"
#include "bz/matrix.hpp"
#include "bz/segments.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace bz {

/// (n-l)! l! sum_{k=1..d} C(j-1,k-1) C(n-j,l-k) u^{k-l}, for l, j in 1..d.
/// u must be a unit (a nonzero monomial).
RationalMatrix build_matrix_A(int n, int d, const LaurentScalar& u);

/// prod_{k=1..d} (n-k)! k!
Integer det_A_closed(int n, int d);

struct SkeletonSegment {
    int len = 1;
    int start2 = 0;
    LaurentScalar w = 1;  // extra twist on top of |det|^{start2/2}; a monomial
    std::string var;      // twist variable of this segment

    /// Value at the uniformizer of the character the segment begins with:
    /// w * v^{-start2}.
    LaurentScalar base_twist() const;
};

struct SkeletonLine {
    CuspidalLabel cuspidal;
    Rational a = 1;  // product of the other lines' idempotent traces
    int d_tau = 1;
    std::vector<SkeletonSegment> segments;

    int n() const;                    // sum of lengths
    int block_size() const { return cuspidal.deg * n(); }
    std::vector<int> lengths() const;
    /// prod 1 / l!
    Rational inv_length_factorials() const;
};

struct TwistSkeleton {
    std::vector<SkeletonLine> lines;

    /// Labels distinct, lengths positive, a > 0, twists monomials, variable
    /// names unique. Empty variable names become z1, z2, ... in line order.
    void validate_and_name();
    std::vector<std::string> variables() const;
    MultiSegment as_multisegment() const;
};

/// A probe f'_j of degree d on one line: slot j in 1..n, scale
/// (prod 1/l!) q^{(n+1)/2 - j}.
struct ProbeDescriptor {
    int line = 0;
    int j = 1;
    int d = 0;
    LaurentScalar scale;
};

ProbeDescriptor make_probe(const TwistSkeleton& sk, int line, int j, int d);

/// Source of trace values. Evaluation must be free of side effects.
struct TraceOracle {
    std::function<LaurentScalar(const ProbeDescriptor&)> eval;
    LaurentScalar v;  // square root of q: a rational, or the formal variable v
};

/// Doubled q-exponents e_j of the modulus constants b_j = v^{e_j}.
std::vector<std::int64_t> block_modulus_halfexponents(const std::vector<int>& block_sizes);

/// Solve for U_l = sum over segments of length l of (b w z)^d, from the
/// probes of one line in degree d. d must be a multiple of the twisting index.
std::map<int, LaurentScalar> recover_power_sums(const TraceOracle& oracle, const TwistSkeleton& sk, int line, int d);

/// Polynomial in elementary symmetric functions e_k and power sums p_k.
/// Text form: terms joined by '+', each an optional rational coefficient
/// followed by '*'-separated factors e<k>[^a], p<k>[^a] or prod[^a] (the
/// product of all variables); "1" is the constant.
struct SymmetricTarget {
    struct Factor {
        char kind = 'e';  // 'e', 'p', or 'P' for the full product
        int k = 0;
        int exp = 1;
    };
    struct Term {
        Rational coeff = 1;
        std::vector<Factor> factors;
    };
    std::vector<Term> terms;

    static SymmetricTarget parse(const std::string& text);
    /// (x_1 ... x_N)^m
    static SymmetricTarget product_power(int m);
    std::string to_string() const;
};

/// Evaluate target in N variables whose power sums p_1.. are given (at least
/// N of them), via Newton's identities.
LaurentScalar newton_symmetric(const SymmetricTarget& target, const std::vector<LaurentScalar>& power_sums, int N);

/// Elementary symmetric e_0..e_N from power sums p_1..p_N.
std::vector<LaurentScalar> elementary_from_power_sums(const std::vector<LaurentScalar>& p, int N);

/// target((w z)^I) over the segments of one line with the given length,
/// computed from oracle probes only.
LaurentScalar detect_twists(const TraceOracle& oracle, const TwistSkeleton& sk, int line, int length,
                            const SymmetricTarget& target);

} // namespace bz
