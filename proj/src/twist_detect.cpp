#include "bz/twist_detect.hpp"

#include "bz/combinatorics.hpp"
#include "bz/errors.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace bz {

RationalMatrix build_matrix_A(int n, int d, const LaurentScalar& u) {
    if (n < 1 || d < 1 || d > n) throw DomainError("matrix A needs 1 <= d <= n");
    if (!u.is_monomial()) throw DomainError("u must be a nonzero monomial");
    RationalMatrix a(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int l = 1; l <= d; ++l)
        for (int j = 1; j <= d; ++j) {
            LaurentScalar sum;
            for (int k = 1; k <= d; ++k) {
                Integer c = binomial(j - 1, k - 1) * binomial(n - j, l - k);
                if (c != 0) sum += LaurentScalar(Rational(c)) * u.pow(k - l);
            }
            a.at(l - 1, j - 1) = LaurentScalar(Rational(factorial(n - l) * factorial(l))) * sum;
        }
    return a;
}

Integer det_A_closed(int n, int d) {
    if (n < 1 || d < 1 || d > n) throw DomainError("closed determinant needs 1 <= d <= n");
    Integer out = 1;
    for (int k = 1; k <= d; ++k) out *= factorial(n - k) * factorial(k);
    return out;
}

LaurentScalar SkeletonSegment::base_twist() const {
    return w * LaurentScalar::var(kResidueVar, -start2);
}

int SkeletonLine::n() const {
    int total = 0;
    for (const auto& s : segments) total += s.len;
    return total;
}

std::vector<int> SkeletonLine::lengths() const {
    std::vector<int> out;
    for (const auto& s : segments) out.push_back(s.len);
    return out;
}

Rational SkeletonLine::inv_length_factorials() const {
    Rational p = 1;
    for (const auto& s : segments) p /= Rational(factorial(s.len));
    return p;
}

void TwistSkeleton::validate_and_name() {
    if (lines.empty()) throw DomainError("skeleton has no lines");
    std::set<std::string> names, vars;
    int counter = 0;
    for (auto& line : lines) {
        line.cuspidal.validate();
        if (!names.insert(line.cuspidal.name).second)
            throw DomainError("cuspidal " + line.cuspidal.name + " appears on two lines");
        if (line.a <= 0) throw DomainError("normalizer a must be positive");
        if (line.d_tau < 1) throw DomainError("d_tau must be positive");
        if (line.segments.empty()) throw DomainError("line " + line.cuspidal.name + " has no segments");
        for (auto& seg : line.segments) {
            ++counter;
            if (seg.len < 1) throw DomainError("segment length must be positive");
            if (!seg.w.is_monomial()) throw DomainError("segment twist w must be a nonzero monomial");
            if (seg.var.empty()) seg.var = "z" + std::to_string(counter);
            if (seg.var == kResidueVar) throw DomainError("twist variable may not be named v");
            if (!vars.insert(seg.var).second) throw DomainError("twist variable " + seg.var + " used twice");
        }
    }
}

std::vector<std::string> TwistSkeleton::variables() const {
    std::vector<std::string> out;
    for (const auto& line : lines)
        for (const auto& seg : line.segments) out.push_back(seg.var);
    return out;
}

MultiSegment TwistSkeleton::as_multisegment() const {
    std::vector<Segment> segs;
    for (const auto& line : lines)
        for (const auto& seg : line.segments) segs.push_back(Segment{line.cuspidal, seg.start2, seg.len});
    return MultiSegment(std::move(segs));
}

ProbeDescriptor make_probe(const TwistSkeleton& sk, int line, int j, int d) {
    if (line < 0 || line >= static_cast<int>(sk.lines.size())) throw DomainError("probe line out of range");
    const auto& ln = sk.lines[line];
    const int n = ln.n();
    if (j < 1 || j > n) throw DomainError("probe slot j out of range");
    return {line, j, d, LaurentScalar(ln.inv_length_factorials()) * LaurentScalar::var(kResidueVar, n + 1 - 2 * j)};
}

std::vector<std::int64_t> block_modulus_halfexponents(const std::vector<int>& block_sizes) {
    std::vector<std::int64_t> out;
    std::int64_t after = 0, before = 0;
    for (int b : block_sizes) {
        if (b < 1) throw DomainError("block sizes must be positive");
        after += b;
    }
    for (int b : block_sizes) {
        after -= b;
        out.push_back(after - before);
        before += b;
    }
    return out;
}

namespace {

LaurentScalar v_pow(const TraceOracle& oracle, std::int64_t e) {
    return oracle.v.pow(e);
}

} // namespace

std::map<int, LaurentScalar> recover_power_sums(const TraceOracle& oracle, const TwistSkeleton& sk, int line, int d) {
    if (line < 0 || line >= static_cast<int>(sk.lines.size())) throw DomainError("line out of range");
    const auto& ln = sk.lines[line];
    if (d % ln.cuspidal.twist_index != 0)
        throw DomainError("degree " + std::to_string(d) + " is not a multiple of the twisting index " +
                          std::to_string(ln.cuspidal.twist_index));
    const int n = ln.n();
    Integer dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(ln.d_tau), static_cast<unsigned long>(n - 1));
    const Rational p = ln.inv_length_factorials();
    const LaurentScalar norm = LaurentScalar(ln.a * Rational(dpow) * p * p).inverse();
    LaurentVector t(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) t[j - 1] = oracle.eval(make_probe(sk, line, j, d)) * norm;
    // T_j = sum_l A_{l,j} U_l.
    RationalMatrix a = build_matrix_A(n, n, v_pow(oracle, 2)).transpose();
    LaurentVector u = mat_solve(a, t);
    std::map<int, LaurentScalar> out;
    for (int l = 1; l <= n; ++l) out.emplace(l, u[l - 1]);
    return out;
}

// ---------------------------------------------------------------------------
// Symmetric targets

namespace {

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

int parse_small_int(const std::string& s, const std::string& context) {
    if (s.empty() || s.size() > 6) throw DomainError("bad integer in target: " + context);
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("bad integer in target: " + context);
    return std::stoi(s);
}

} // namespace

SymmetricTarget SymmetricTarget::parse(const std::string& text) {
    SymmetricTarget out;
    if (trim(text).empty()) throw DomainError("empty target");
    for (const auto& term_text : split(text, '+')) {
        if (term_text.empty()) throw DomainError("empty term in target '" + text + "'");
        Term term;
        bool first = true;
        for (const auto& factor : split(term_text, '*')) {
            if (factor.empty()) throw DomainError("empty factor in target '" + text + "'");
            char c = factor[0];
            bool symbolic = c == 'e' || c == 'p';
            if (!symbolic) {
                if (!first) throw DomainError("coefficient must come first in '" + term_text + "'");
                term.coeff *= parse_rational(factor);
                first = false;
                continue;
            }
            first = false;
            auto caret = factor.find('^');
            std::string head = factor.substr(0, caret);
            Factor f;
            f.exp = caret == std::string::npos ? 1 : parse_small_int(factor.substr(caret + 1), factor);
            if (head == "prod") {
                f.kind = 'P';
            } else {
                f.kind = head[0];
                f.k = parse_small_int(head.substr(1), factor);
                if (f.k < 1) throw DomainError("symmetric function index must be positive: " + factor);
            }
            term.factors.push_back(f);
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

SymmetricTarget SymmetricTarget::product_power(int m) {
    if (m < 0) throw DomainError("product power must be nonnegative");
    SymmetricTarget t;
    Term term;
    if (m > 0) term.factors.push_back({'P', 0, m});
    t.terms.push_back(term);
    return t;
}

std::string SymmetricTarget::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << "+";
        const auto& t = terms[i];
        bool need_star = false;
        if (t.coeff != 1 || t.factors.empty()) {
            os << t.coeff.get_str();
            need_star = true;
        }
        for (const auto& f : t.factors) {
            if (need_star) os << "*";
            if (f.kind == 'P') os << "prod"; else os << f.kind << f.k;
            if (f.exp != 1) os << "^" << f.exp;
            need_star = true;
        }
    }
    return os.str();
}

std::vector<LaurentScalar> elementary_from_power_sums(const std::vector<LaurentScalar>& p, int N) {
    if (static_cast<int>(p.size()) < N)
        throw DomainError("need " + std::to_string(N) + " power sums, got " + std::to_string(p.size()));
    std::vector<LaurentScalar> e(static_cast<std::size_t>(N) + 1);
    e[0] = 1;
    // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    for (int k = 1; k <= N; ++k) {
        LaurentScalar acc;
        for (int i = 1; i <= k; ++i) {
            LaurentScalar t = e[k - i] * p[i - 1];
            if (i % 2 == 1) acc += t; else acc -= t;
        }
        e[k] = acc * LaurentScalar(Rational(1, k));
    }
    return e;
}

namespace {

LaurentScalar evaluate_target(const SymmetricTarget& target, const std::vector<LaurentScalar>& e,
                              std::vector<LaurentScalar> p, int N) {
    int max_p = 0;
    for (const auto& t : target.terms)
        for (const auto& f : t.factors)
            if (f.kind == 'p') max_p = std::max(max_p, f.k);
    // p_k = sum_{i=1..k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k, e_k = 0 past N.
    auto ek = [&](int k) { return k <= N ? e[k] : LaurentScalar(); };
    for (int k = static_cast<int>(p.size()) + 1; k <= max_p; ++k) {
        LaurentScalar acc;
        for (int i = 1; i < k; ++i) {
            LaurentScalar t = ek(i) * p[k - i - 1];
            if (i % 2 == 1) acc += t; else acc -= t;
        }
        LaurentScalar last = ek(k) * LaurentScalar(k);
        if (k % 2 == 1) acc += last; else acc -= last;
        p.push_back(acc);
    }
    LaurentScalar total;
    for (const auto& t : target.terms) {
        LaurentScalar term(t.coeff);
        for (const auto& f : t.factors) {
            LaurentScalar base = f.kind == 'P' ? e[N] : f.kind == 'e' ? ek(f.k) : p[f.k - 1];
            term *= base.pow(f.exp);
        }
        total += term;
    }
    return total;
}

} // namespace

LaurentScalar newton_symmetric(const SymmetricTarget& target, const std::vector<LaurentScalar>& power_sums, int N) {
    if (N < 0) throw DomainError("variable count must be nonnegative");
    auto e = elementary_from_power_sums(power_sums, N);
    return evaluate_target(target, e, power_sums, N);
}

LaurentScalar detect_twists(const TraceOracle& oracle, const TwistSkeleton& sk, int line, int length,
                            const SymmetricTarget& target) {
    if (line < 0 || line >= static_cast<int>(sk.lines.size())) throw DomainError("line out of range");
    const auto& ln = sk.lines[line];
    const int I = ln.cuspidal.twist_index;
    int N = 0;
    for (const auto& s : ln.segments) N += s.len == length;

    std::vector<int> blocks;
    for (const auto& l : sk.lines) blocks.push_back(l.block_size());
    const std::int64_t e_b = block_modulus_halfexponents(blocks)[line];

    // Power sums of X_i = (b w_i z_i)^I, then strip b^I from every variable.
    std::vector<LaurentScalar> p;
    for (int t = 1; t <= N; ++t) {
        auto u = recover_power_sums(oracle, sk, line, I * t);
        auto it = u.find(length);
        LaurentScalar pt = it == u.end() ? LaurentScalar() : it->second;
        p.push_back(pt * v_pow(oracle, -e_b * I * t));
    }
    return newton_symmetric(target, p, N);
}

} // namespace bz
