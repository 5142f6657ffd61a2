#pragma once

#include "bz/laurent.hpp"
#include "bz/segments.hpp"
#include "bz/twist_detect.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bz {

/// I divides d.
bool admissible_degree(std::int64_t d, std::int64_t I);

/// r (x) Sp(m) (x) chi, with chi(uniformizer) = twist.
struct WDBlock {
    CuspidalLabel label;
    int m = 1;
    LaurentScalar twist = 1;
};

struct WDRep {
    std::vector<WDBlock> blocks;
};

/// One block per segment; twist = supplied monomial times v^{-start2}.
/// Missing entries in twists mean no extra twist.
WDRep wd_of_multisegment(const MultiSegment& s, const std::vector<LaurentScalar>& twists = {});

/// m (artin + psi_cond deg) + inertia_inv
std::int64_t epsilon_twist_exponent(const CuspidalLabel& label, int m, std::int64_t psi_cond);

/// Opaque epsilon(r (x) Sp(m), s, psi) at the untwisted point.
struct EpsilonBase {
    std::string label;
    int m = 1;
    std::string s_tag = "s";
    std::string psi_tag = "psi";
    auto operator<=>(const EpsilonBase&) const = default;
    bool operator==(const EpsilonBase&) const = default;
};

/// prod(bases) * coeff, coeff a monomial.
struct EpsilonFactor {
    std::multiset<EpsilonBase> bases;
    LaurentScalar coeff = 1;

    friend EpsilonFactor operator*(const EpsilonFactor& a, const EpsilonFactor& b);
    friend bool operator==(const EpsilonFactor&, const EpsilonFactor&) = default;
};

/// Product over blocks of base * twist^e, e the override for that block
/// index if given, else epsilon_twist_exponent. Overrides must be multiples
/// of the block's twisting index.
EpsilonFactor epsilon_of(const WDRep& r, std::int64_t psi_cond,
                         const std::map<std::size_t, std::int64_t>& exponent_override = {});

/// Caller-supplied exponents keyed by (line, segment) or (line, length).
struct ExponentPolicy {
    std::map<std::pair<int, int>, std::int64_t> by_segment;
    std::map<std::pair<int, int>, std::int64_t> by_length;
};

/// Exponent of each segment's twist variable, class by class.
std::vector<std::vector<std::int64_t>> family_exponents(const TwistSkeleton& sk, std::int64_t psi_cond,
                                                        const ExponentPolicy& policy);

/// Bases at the base point times prod z_i^{m_i}; m_i constant on each
/// (line, length) class and divisible by the line's twisting index.
EpsilonFactor epsilon_family_polynomial(const TwistSkeleton& sk, std::int64_t psi_cond, const ExponentPolicy& policy);

} // namespace bz
