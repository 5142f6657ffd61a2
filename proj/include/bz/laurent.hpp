#pragma once

/*
 * Exact multivariate Laurent polynomials over Q.
 *
 * A LaurentScalar is a finite sum  c * x1^e1 * ... * xk^ek  with rational c
 * and integer (possibly negative) exponents. Variables are named; names are
 * interned once and referred to by id afterwards.
 *
 * The residue cardinality q never appears directly: it is written v^2, so the
 * half-integral powers q^{a/2} that show up in modulus characters are plain
 * integral powers of v.
 */

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bz {

using Integer = mpz_class;
using Rational = mpq_class;

/// Name of the formal square root of the residue cardinality.
inline constexpr std::string_view kResidueVar = "v";

using VarId = std::uint32_t;

VarId intern_var(std::string_view name);
const std::string& var_name(VarId id);

/// Sparse exponent vector, sorted by variable id, zero exponents never stored.
class Monomial {
public:
    using Entry = std::pair<VarId, std::int64_t>;

    Monomial() = default;
    static Monomial var(std::string_view name, std::int64_t exp = 1);

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_one() const { return entries_.empty(); }
    std::int64_t exponent(VarId id) const;

    Monomial operator*(const Monomial& other) const;
    Monomial inverse() const;
    Monomial pow(std::int64_t e) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// Lexicographic group order on Z^n (variables by id). Compatible with
    /// multiplication, which exact division relies on.
    friend bool operator<(const Monomial& a, const Monomial& b);

    /// Exponents keyed by variable name; used for printing and JSON.
    std::map<std::string, std::int64_t> by_name() const;

private:
    explicit Monomial(std::vector<Entry> e) : entries_(std::move(e)) {}
    std::vector<Entry> entries_;
};

/// Variable name -> value, for evaluation.
using Assignment = std::map<std::string, Rational>;

class LaurentScalar {
public:
    using TermMap = std::map<Monomial, Rational>;

    LaurentScalar() = default;
    LaurentScalar(const Rational& c);  // NOLINT: implicit by design of the algebra
    LaurentScalar(long c) : LaurentScalar(Rational(c)) {}  // NOLINT
    LaurentScalar(int c) : LaurentScalar(Rational(c)) {}   // NOLINT
    LaurentScalar(const Monomial& m, const Rational& c);

    static LaurentScalar var(std::string_view name, std::int64_t exp = 1);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    /// Value of a constant; throws DomainError otherwise.
    Rational constant() const;
    /// Coefficient of the monomial 1 (zero if absent).
    Rational constant_term() const;

    std::set<std::string> variables() const;
    std::int64_t min_exponent(VarId id) const;
    std::int64_t max_exponent(VarId id) const;

    LaurentScalar operator-() const;
    LaurentScalar& operator+=(const LaurentScalar& o);
    LaurentScalar& operator-=(const LaurentScalar& o);
    LaurentScalar& operator*=(const LaurentScalar& o);
    friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
    friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
    friend bool operator==(const LaurentScalar&, const LaurentScalar&) = default;

    /// Negative exponents require a monomial (the only units of the ring).
    LaurentScalar pow(std::int64_t e) const;
    /// Inverse of a unit (nonzero monomial); DomainError otherwise.
    LaurentScalar inverse() const;

    /// Exact substitution. Every occurring variable must be assigned, and a
    /// variable with a negative exponent must not be assigned zero.
    Rational eval(const Assignment& assignment) const;

    /// Replace some variables by Laurent scalars; the rest stay formal.
    LaurentScalar substitute(const std::map<std::string, LaurentScalar>& values) const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    TermMap terms_;
};

/// Quotient a / b in the Laurent polynomial ring; NotExactDivision when b
/// does not divide a there.
LaurentScalar exact_divide(const LaurentScalar& a, const LaurentScalar& b);

std::ostream& operator<<(std::ostream& os, const LaurentScalar& p);

/// Parse "3", "-3/2" into a canonical rational; DomainError on junk.
Rational parse_rational(std::string_view text);
std::string rational_string(const Rational& r);

/// Exact square root of a rational, if it is a square.
bool rational_sqrt(const Rational& r, Rational& root);

} // namespace bz
