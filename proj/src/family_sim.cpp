#include "bz/family_sim.hpp"

#include "bz/errors.hpp"
#include "bz/weyl.hpp"

#include <random>
#include <set>

namespace bz {

const FamilyPoint& SyntheticFamily::point(const std::string& id) const {
    for (const auto& p : points)
        if (p.id == id) return p;
    throw DomainError("unknown point " + id);
}

std::map<std::string, LaurentScalar> SyntheticFamily::twist_values(const std::string& id) const {
    const auto& p = point(id);
    std::map<std::string, LaurentScalar> out;
    for (const auto& name : skeleton.variables()) {
        auto it = p.z.find(name);
        out.emplace(name, it == p.z.end() ? LaurentScalar(1) : LaurentScalar(it->second));
    }
    return out;
}

SyntheticFamily make_family(TwistSkeleton skeleton, std::vector<FamilyPoint> points, std::string base_point,
                            std::optional<Rational> q) {
    skeleton.validate_and_name();
    auto vars = skeleton.variables();
    std::set<std::string> known(vars.begin(), vars.end()), ids;
    bool has_base = false;
    for (const auto& p : points) {
        if (!ids.insert(p.id).second) throw DomainError("duplicate point id " + p.id);
        has_base |= p.id == base_point;
        for (const auto& [name, value] : p.z) {
            if (!known.count(name)) throw DomainError("point " + p.id + " assigns unknown variable " + name);
            if (value == 0) throw DomainError("point " + p.id + " assigns zero to " + name);
        }
    }
    if (!has_base) throw DomainError("base point " + base_point + " is not among the points");
    SyntheticFamily fam{std::move(skeleton), std::move(points), std::move(base_point)};
    if (q) {
        Rational root;
        if (*q <= 0 || !rational_sqrt(*q, root))
            throw DomainError("q must be the square of a positive rational; omit it for formal v");
        fam.v = LaurentScalar(root);
    }
    return fam;
}

LaurentScalar probe_trace(const TwistSkeleton& sk, const ProbeDescriptor& probe,
                          const std::map<std::string, LaurentScalar>& twists, const LaurentScalar& v,
                          OracleImpl impl) {
    if (probe.line < 0 || probe.line >= static_cast<int>(sk.lines.size())) throw DomainError("unknown probe line");
    const auto& ln = sk.lines[probe.line];
    const int n = ln.n();
    if (probe.j < 1 || probe.j > n) throw DomainError("unknown probe slot");
    const auto lengths = ln.lengths();

    std::vector<int> blocks;
    for (const auto& l : sk.lines) blocks.push_back(l.block_size());
    const LaurentScalar b = LaurentScalar::var(kResidueVar, block_modulus_halfexponents(blocks)[probe.line]);

    // (b w_i z_i)^d for each segment.
    std::vector<LaurentScalar> twist_pow;
    for (const auto& seg : ln.segments) {
        auto it = twists.find(seg.var);
        if (it == twists.end()) throw DomainError("no twist value for " + seg.var);
        twist_pow.push_back((b * seg.base_twist() * it->second).pow(probe.d));
    }

    Integer dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(ln.d_tau), static_cast<unsigned long>(n - 1));

    LaurentScalar sum;
    if (impl == OracleImpl::ClosedForm) {
        for (const auto& s : jacquet_isotypic(lengths, probe.j, ln.d_tau))
            sum += LaurentScalar(Rational(s.multiplicity)) * twist_pow[s.line_index - 1] *
                   LaurentScalar::var(kResidueVar, -s.q_exp2);
    } else {
        // Each w in S' contributes one copy of the twist of the segment whose
        // block receives slot j, with |det| exponent read off its position.
        std::vector<int> first(lengths.size() + 1, 0);
        for (std::size_t i = 0; i < lengths.size(); ++i) first[i + 1] = first[i] + lengths[i];
        for (const auto& w : enumerate_Sprime(lengths)) {
            const int pos = w[probe.j - 1];
            std::size_t i = 0;
            while (first[i + 1] < pos) ++i;
            const int k = pos - first[i];
            sum += LaurentScalar(Rational(dpow)) * twist_pow[i] *
                   LaurentScalar::var(kResidueVar, 2 * (k - lengths[i]) - (n + 1) + 2 * probe.j);
        }
    }
    LaurentScalar out = LaurentScalar(ln.a) * probe.scale * sum;
    if (v.is_constant()) out = out.substitute({{std::string(kResidueVar), v}});
    return out;
}

LaurentScalar oracle_eval(const SyntheticFamily& fam, const ProbeDescriptor& probe, const std::string& point,
                          OracleImpl impl) {
    return probe_trace(fam.skeleton, probe, fam.twist_values(point), fam.v, impl);
}

TraceOracle point_oracle(const SyntheticFamily& fam, const std::string& point, OracleImpl impl) {
    auto twists = fam.twist_values(point);
    TwistSkeleton sk = fam.skeleton;
    LaurentScalar v = fam.v;
    return {[sk, twists, v, impl](const ProbeDescriptor& p) { return probe_trace(sk, p, twists, v, impl); }, v};
}

TraceOracle symbolic_oracle(const TwistSkeleton& sk, const LaurentScalar& v, OracleImpl impl) {
    std::map<std::string, LaurentScalar> twists;
    for (const auto& name : sk.variables()) twists.emplace(name, LaurentScalar::var(name));
    return {[sk, twists, v, impl](const ProbeDescriptor& p) { return probe_trace(sk, p, twists, v, impl); }, v};
}

MultiSegment realized_multisegment(const TwistSkeleton& sk) {
    std::vector<Segment> segs;
    int counter = 0;
    for (const auto& line : sk.lines)
        for (const auto& seg : line.segments) {
            CuspidalLabel label = line.cuspidal;
            if (seg.w != LaurentScalar(1)) label.name += "#" + std::to_string(counter);
            ++counter;
            segs.push_back(Segment{label, seg.start2, seg.len});
        }
    return MultiSegment(std::move(segs));
}

RecoveryReport run_epsilon_recovery(const SyntheticFamily& fam, std::int64_t psi_cond, const ExponentPolicy& policy) {
    const auto& sk = fam.skeleton;
    if (!is_unlinked(realized_multisegment(sk)))
        throw DomainError("the family's multisegment is linked; epsilon recovery needs it unlinked");
    auto exps = family_exponents(sk, psi_cond, policy);
    RecoveryReport report;
    report.family = epsilon_family_polynomial(sk, psi_cond, policy);

    struct ClassTarget {
        int line, length;
        SymmetricTarget target;
    };
    std::vector<ClassTarget> classes;
    for (int li = 0; li < static_cast<int>(sk.lines.size()); ++li) {
        std::map<int, std::int64_t> class_exp;
        const auto& line = sk.lines[li];
        for (std::size_t si = 0; si < line.segments.size(); ++si) class_exp[line.segments[si].len] = exps[li][si];
        const int I = line.cuspidal.twist_index;
        for (const auto& [len, m] : class_exp) {
            if (m == 0) continue;
            SymmetricTarget t = SymmetricTarget::product_power(1);
            t.terms[0].factors[0].exp = static_cast<int>(m / I);
            classes.push_back({li, len, t});
        }
    }

    auto recover = [&](const std::string& id) {
        TraceOracle oracle = point_oracle(fam, id);
        LaurentScalar value = 1;
        for (const auto& c : classes) value *= detect_twists(oracle, sk, c.line, c.length, c.target);
        return value;
    };
    auto direct = [&](const std::string& id) {
        auto tw = fam.twist_values(id);
        return report.family.coeff.substitute(tw);
    };

    const LaurentScalar base_recovered = recover(fam.base_point);
    const LaurentScalar base_direct = direct(fam.base_point);
    for (const auto& p : fam.points) {
        PointRatio row;
        row.id = p.id;
        row.recovered = exact_divide(recover(p.id), base_recovered);
        row.direct = exact_divide(direct(p.id), base_direct);
        row.match = row.recovered == row.direct;
        report.pass &= row.match;
        report.rows.push_back(std::move(row));
    }
    return report;
}

RandomFamily random_family(std::uint64_t seed, const RandomFamilyOptions& opt) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto random_rational = [&]() {
        int num = 0;
        while (num == 0) num = uniform(-9, 9);
        Rational r(num, uniform(1, 5));
        r.canonicalize();
        return r;
    };

    RandomFamily rf;
    TwistSkeleton sk;
    const int lines = uniform(1, opt.max_lines);
    for (int li = 0; li < lines; ++li) {
        SkeletonLine line;
        CuspidalLabel& c = line.cuspidal;
        c.name = "tau" + std::to_string(li + 1);
        c.deg = uniform(1, 4);
        std::vector<int> divisors;
        for (int x = 1; x <= c.deg; ++x)
            if (c.deg % x == 0) divisors.push_back(x);
        c.twist_index = divisors[uniform(0, static_cast<int>(divisors.size()) - 1)];
        c.artin = c.twist_index * uniform(0, 3);
        c.inertia_inv = (c.deg == 1 && c.artin == 0) ? 1 : 0;
        c.unitary = true;
        const Rational normalizers[] = {Rational(1), Rational(2), Rational(3, 2)};
        line.a = normalizers[uniform(0, 2)];
        line.d_tau = uniform(1, 3);
        int budget = uniform(1, opt.max_n);
        while (budget > 0) {
            int len = uniform(1, budget);
            budget -= len;
            // Centred segments are nested or of opposite parity, so never linked.
            line.segments.push_back(SkeletonSegment{len, 1 - len, 1, ""});
        }
        sk.lines.push_back(std::move(line));
    }
    sk.validate_and_name();

    for (int li = 0; li < lines; ++li) {
        const auto& line = sk.lines[li];
        std::set<int> lens;
        for (const auto& s : line.segments) lens.insert(s.len);
        for (int len : lens)
            rf.policy.by_length[{li, len}] = static_cast<std::int64_t>(line.cuspidal.twist_index) * uniform(-2, 3);
    }
    rf.psi_cond = uniform(0, 2);

    std::vector<FamilyPoint> points{{"x0", {}}};
    for (int p = 1; p <= opt.points; ++p) {
        FamilyPoint pt{"x" + std::to_string(p), {}};
        for (const auto& name : sk.variables()) pt.z[name] = random_rational();
        points.push_back(std::move(pt));
    }
    rf.family = make_family(std::move(sk), std::move(points), "x0", Rational(4));
    return rf;
}

} // namespace bz
