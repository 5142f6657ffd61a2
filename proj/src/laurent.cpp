#include "bz/laurent.hpp"

#include "bz/errors.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace bz {

namespace {

struct VarRegistry {
    std::mutex mu;
    std::unordered_map<std::string, VarId> ids;
    std::deque<std::string> names;  // deque: references stay valid on growth
};

VarRegistry& registry() {
    static VarRegistry r;
    return r;
}

} // namespace

VarId intern_var(std::string_view name) {
    if (name.empty()) throw DomainError("empty variable name");
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto [it, inserted] = r.ids.try_emplace(std::string(name), static_cast<VarId>(r.names.size()));
    if (inserted) r.names.emplace_back(name);
    return it->second;
}

const std::string& var_name(VarId id) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(id);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(std::string_view name, std::int64_t exp) {
    if (exp == 0) return {};
    return Monomial({{intern_var(name), exp}});
}

std::int64_t Monomial::exponent(VarId id) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry& e, VarId v) { return e.first < v; });
    return (it != entries_.end() && it->first == id) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin(), b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == entries_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            if (auto e = a->second + b->second; e != 0) out.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    return Monomial(std::move(out));
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(std::int64_t e) const {
    if (e == 0) return {};
    std::vector<Entry> out = entries_;
    for (auto& [id, x] : out) x *= e;
    return Monomial(std::move(out));
}

bool operator<(const Monomial& a, const Monomial& b) {
    auto x = a.entries_.begin(), y = b.entries_.begin();
    while (x != a.entries_.end() || y != b.entries_.end()) {
        VarId id;
        if (y == b.entries_.end() || (x != a.entries_.end() && x->first < y->first))
            id = x->first;
        else
            id = y->first;
        std::int64_t ea = (x != a.entries_.end() && x->first == id) ? x->second : 0;
        std::int64_t eb = (y != b.entries_.end() && y->first == id) ? y->second : 0;
        if (ea != eb) return ea < eb;
        if (x != a.entries_.end() && x->first == id) ++x;
        if (y != b.entries_.end() && y->first == id) ++y;
    }
    return false;
}

std::map<std::string, std::int64_t> Monomial::by_name() const {
    std::map<std::string, std::int64_t> out;
    for (auto& [id, e] : entries_) out[var_name(id)] = e;
    return out;
}

// ---------------------------------------------------------------------------
// LaurentScalar

// Coefficients built from (num, den) pairs may arrive unreduced.
LaurentScalar::LaurentScalar(const Rational& c) {
    if (c != 0) {
        Rational r = c;
        r.canonicalize();
        terms_.emplace(Monomial{}, r);
    }
}

LaurentScalar::LaurentScalar(const Monomial& m, const Rational& c) {
    if (c != 0) {
        Rational r = c;
        r.canonicalize();
        terms_.emplace(m, r);
    }
}

LaurentScalar LaurentScalar::var(std::string_view name, std::int64_t exp) {
    return LaurentScalar(Monomial::var(name, exp), 1);
}

bool LaurentScalar::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational LaurentScalar::constant() const {
    if (!is_constant()) throw DomainError("expected a pure rational, got " + to_string());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational LaurentScalar::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> LaurentScalar::variables() const {
    std::set<std::string> out;
    for (auto& [m, c] : terms_)
        for (auto& [id, e] : m.entries()) out.insert(var_name(id));
    return out;
}

std::int64_t LaurentScalar::min_exponent(VarId id) const {
    std::int64_t lo = 0;
    bool first = true;
    for (auto& [m, c] : terms_) {
        auto e = m.exponent(id);
        lo = first ? e : std::min(lo, e);
        first = false;
    }
    return lo;
}

std::int64_t LaurentScalar::max_exponent(VarId id) const {
    std::int64_t hi = 0;
    bool first = true;
    for (auto& [m, c] : terms_) {
        auto e = m.exponent(id);
        hi = first ? e : std::max(hi, e);
        first = false;
    }
    return hi;
}

void LaurentScalar::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentScalar LaurentScalar::operator-() const {
    LaurentScalar out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar out;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) {
    *this = *this * o;
    return *this;
}

LaurentScalar LaurentScalar::inverse() const {
    if (!is_monomial())
        throw DomainError("not a unit in the Laurent ring: " + to_string());
    auto& [m, c] = *terms_.begin();
    return LaurentScalar(m.inverse(), 1 / c);
}

LaurentScalar LaurentScalar::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    if (is_monomial()) {
        auto& [m, c] = *terms_.begin();
        Rational ce = 1;
        mpz_pow_ui(ce.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(ce.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(e));
        ce.canonicalize();
        return LaurentScalar(m.pow(e), ce);
    }
    LaurentScalar result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

namespace {

Rational rational_pow(const Rational& x, std::int64_t e) {
    if (e < 0) {
        if (x == 0) throw DomainError("zero raised to a negative power");
        return rational_pow(1 / x, -e);
    }
    Rational out = 1;
    mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
    out.canonicalize();
    return out;
}

} // namespace

Rational LaurentScalar::eval(const Assignment& assignment) const {
    Rational total = 0;
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [id, e] : m.entries()) {
            const auto& name = var_name(id);
            auto it = assignment.find(name);
            if (it == assignment.end()) throw DomainError("no value assigned to variable " + name);
            if (it->second == 0 && e < 0)
                throw DomainError("variable " + name + " assigned zero but occurs with negative exponent");
            t *= rational_pow(it->second, e);
        }
        total += t;
    }
    return total;
}

LaurentScalar LaurentScalar::substitute(const std::map<std::string, LaurentScalar>& values) const {
    LaurentScalar out;
    for (auto& [m, c] : terms_) {
        LaurentScalar t(c);
        std::vector<Monomial::Entry> kept;
        for (auto& [id, e] : m.entries()) {
            auto it = values.find(var_name(id));
            if (it == values.end())
                t *= LaurentScalar(Monomial::var(var_name(id), e), 1);
            else
                t *= it->second.pow(e);
        }
        out += t;
    }
    return out;
}

std::string LaurentScalar::to_string() const {
    if (terms_.empty()) return "0";
    // Print in a name-based order so output does not depend on intern order.
    std::vector<std::pair<std::map<std::string, std::int64_t>, Rational>> rows;
    for (auto& [m, c] : terms_) rows.emplace_back(m.by_name(), c);
    std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::ostringstream os;
    bool first = true;
    for (auto& [exps, c] : rows) {
        Rational coeff = c;
        if (!first) {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool unit = exps.empty() || (coeff != 1 && coeff != -1);
        if (unit) {
            os << coeff.get_str();
        } else if (coeff == -1) {
            os << "-";
        }
        bool need_star = unit;
        for (auto& [name, e] : exps) {
            if (need_star) os << "*";
            os << name;
            if (e != 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentScalar& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------

LaurentScalar exact_divide(const LaurentScalar& a, const LaurentScalar& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return {};
    if (b.is_monomial()) return a * b.inverse();

    // Long division by leading terms. If b | a then every quotient monomial
    // lies in the box [min_x(a) - min_x(b), max_x(a) - max_x(b)] for each
    // variable x, so leaving the box proves non-divisibility and bounds the
    // loop.
    std::set<VarId> vars;
    for (const auto* p : {&a, &b})
        for (auto& [m, c] : p->terms())
            for (auto& [id, e] : m.entries()) vars.insert(id);
    std::map<VarId, std::pair<std::int64_t, std::int64_t>> box;
    for (VarId id : vars)
        box[id] = {a.min_exponent(id) - b.min_exponent(id), a.max_exponent(id) - b.max_exponent(id)};

    const auto& [lead_m, lead_c] = *b.terms().rbegin();
    LaurentScalar quotient, rest = a;
    while (!rest.is_zero()) {
        const auto& [rm, rc] = *rest.terms().rbegin();
        Monomial tm = rm * lead_m.inverse();
        for (auto& [id, range] : box) {
            auto e = tm.exponent(id);
            if (e < range.first || e > range.second)
                throw NotExactDivision("Laurent division is not exact");
        }
        LaurentScalar t(tm, rc / lead_c);
        quotient += t;
        rest -= t * b;
    }
    return quotient;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    };
    trim(s);
    auto valid_int = [](const std::string& x) {
        size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
        if (i >= x.size()) return false;
        for (; i < x.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw DomainError("not a rational number: '" + s + "'");
    Rational r;
    r.get_num() = Integer(num, 10);
    r.get_den() = Integer(den, 10);
    if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

bool rational_sqrt(const Rational& r, Rational& root) {
    if (r < 0) return false;
    const Integer& n = r.get_num();
    const Integer& d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    root = Rational(sn, sd);
    root.canonicalize();
    return true;
}

} // namespace bz
