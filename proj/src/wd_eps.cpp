#include "bz/wd_eps.hpp"

#include "bz/errors.hpp"

namespace bz {

bool admissible_degree(std::int64_t d, std::int64_t I) {
    if (I < 1) throw DomainError("twisting index must be positive");
    return d % I == 0;
}

WDRep wd_of_multisegment(const MultiSegment& s, const std::vector<LaurentScalar>& twists) {
    if (twists.size() > s.size()) throw DomainError("more twists than segments");
    WDRep r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& seg = s.segments()[i];
        LaurentScalar t = i < twists.size() ? twists[i] : LaurentScalar(1);
        if (!t.is_monomial()) throw DomainError("block twist must be a nonzero monomial");
        r.blocks.push_back({seg.label, seg.len, t * LaurentScalar::var(kResidueVar, -seg.start2)});
    }
    return r;
}

std::int64_t epsilon_twist_exponent(const CuspidalLabel& label, int m, std::int64_t psi_cond) {
    return static_cast<std::int64_t>(m) * (label.artin + psi_cond * label.deg) + label.inertia_inv;
}

EpsilonFactor operator*(const EpsilonFactor& a, const EpsilonFactor& b) {
    EpsilonFactor out = a;
    out.bases.insert(b.bases.begin(), b.bases.end());
    out.coeff *= b.coeff;
    return out;
}

EpsilonFactor epsilon_of(const WDRep& r, std::int64_t psi_cond, const std::map<std::size_t, std::int64_t>& exponent_override) {
    for (const auto& [idx, e] : exponent_override) {
        if (idx >= r.blocks.size()) throw DomainError("exponent override for a missing block");
        if (!admissible_degree(e, r.blocks[idx].label.twist_index))
            throw DomainError("exponent " + std::to_string(e) + " is not a multiple of the twisting index " +
                              std::to_string(r.blocks[idx].label.twist_index));
    }
    EpsilonFactor out;
    for (std::size_t i = 0; i < r.blocks.size(); ++i) {
        const auto& b = r.blocks[i];
        if (!b.twist.is_monomial()) throw DomainError("block twist must be a nonzero monomial");
        auto it = exponent_override.find(i);
        std::int64_t e = it != exponent_override.end() ? it->second : epsilon_twist_exponent(b.label, b.m, psi_cond);
        out.bases.insert(EpsilonBase{b.label.name, b.m});
        out.coeff *= b.twist.pow(e);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> family_exponents(const TwistSkeleton& sk, std::int64_t psi_cond,
                                                        const ExponentPolicy& policy) {
    for (const auto& [key, e] : policy.by_segment) {
        if (key.first < 0 || key.first >= static_cast<int>(sk.lines.size()) || key.second < 0 ||
            key.second >= static_cast<int>(sk.lines[key.first].segments.size()))
            throw DomainError("exponent policy names a missing segment");
    }
    for (const auto& [key, e] : policy.by_length)
        if (key.first < 0 || key.first >= static_cast<int>(sk.lines.size()))
            throw DomainError("exponent policy names a missing line");
    std::vector<std::vector<std::int64_t>> out;
    for (int li = 0; li < static_cast<int>(sk.lines.size()); ++li) {
        const auto& line = sk.lines[li];
        std::map<int, std::int64_t> class_exp;
        std::vector<std::int64_t> row;
        for (int si = 0; si < static_cast<int>(line.segments.size()); ++si) {
            const int len = line.segments[si].len;
            std::int64_t e = epsilon_twist_exponent(line.cuspidal, len, psi_cond);
            if (auto it = policy.by_length.find({li, len}); it != policy.by_length.end()) e = it->second;
            if (auto it = policy.by_segment.find({li, si}); it != policy.by_segment.end()) e = it->second;
            auto [c, fresh] = class_exp.try_emplace(len, e);
            if (!fresh && c->second != e)
                throw DomainError("exponent varies within the class of length " + std::to_string(len) + " on line " +
                                  line.cuspidal.name);
            if (!admissible_degree(e, line.cuspidal.twist_index))
                throw DomainError("exponent " + std::to_string(e) + " on line " + line.cuspidal.name +
                                  " is not a multiple of the twisting index " +
                                  std::to_string(line.cuspidal.twist_index));
            row.push_back(e);
        }
        out.push_back(std::move(row));
    }
    return out;
}

EpsilonFactor epsilon_family_polynomial(const TwistSkeleton& sk, std::int64_t psi_cond, const ExponentPolicy& policy) {
    auto exps = family_exponents(sk, psi_cond, policy);
    EpsilonFactor out;
    for (std::size_t li = 0; li < sk.lines.size(); ++li) {
        const auto& line = sk.lines[li];
        for (std::size_t si = 0; si < line.segments.size(); ++si) {
            out.bases.insert(EpsilonBase{line.cuspidal.name, line.segments[si].len});
            out.coeff *= LaurentScalar::var(line.segments[si].var, exps[li][si]);
        }
    }
    return out;
}

} // namespace bz
