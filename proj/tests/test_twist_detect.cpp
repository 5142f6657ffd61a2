#include "bz/combinatorics.hpp"
#include "bz/errors.hpp"
#include "bz/matrix.hpp"
#include "bz/twist_detect.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bz;

namespace {

LaurentScalar v(std::int64_t e = 1) { return LaurentScalar::var("v", e); }

long fact(long n) { return n <= 1 ? 1 : n * fact(n - 1); }
long choose(long a, long b) { return (b < 0 || a < 0 || b > a) ? 0 : fact(a) / (fact(b) * fact(a - b)); }

TwistSkeleton one_line(const std::vector<int>& lengths, int twist_index = 1, int deg = 1) {
    SkeletonLine line;
    line.cuspidal = CuspidalLabel{"tau", deg, twist_index, deg == 1 ? 0 : twist_index, deg == 1 ? 1 : 0, true};
    for (int l : lengths) line.segments.push_back(SkeletonSegment{l, 0, 1, ""});
    TwistSkeleton sk{{line}};
    sk.validate_and_name();
    return sk;
}

// Slot-j probe traces written straight from the Jacquet trace identity:
// a * scale_j * sum_i sum_k d^{n-1} m(l_i, k) (b w_i z_i)^d q^{k - l_i - (n+1)/2 + j}.
TraceOracle formula_oracle(const TwistSkeleton& sk, const std::map<std::string, LaurentScalar>& z,
                           const LaurentScalar& vval) {
    return {[sk, z, vval](const ProbeDescriptor& p) {
                const auto& ln = sk.lines[p.line];
                const long n = ln.n();
                long prod_fact = 1;
                for (const auto& s : ln.segments) prod_fact *= fact(s.len);
                std::vector<int> blocks;
                for (const auto& l : sk.lines) blocks.push_back(l.block_size());
                long before = 0, after = 0;
                for (int t = 0; t < static_cast<int>(blocks.size()); ++t) {
                    if (t < p.line) before += blocks[t];
                    if (t > p.line) after += blocks[t];
                }
                LaurentScalar b = v(after - before);
                long dpow = 1;
                for (long t = 1; t < n; ++t) dpow *= ln.d_tau;
                LaurentScalar sum;
                for (const auto& s : ln.segments)
                    for (long k = 1; k <= n; ++k) {
                        long m = fact(n - s.len) * fact(s.len) * choose(p.j - 1, k - 1) * choose(n - p.j, s.len - k);
                        if (m == 0) continue;
                        Rational mult(dpow * m, prod_fact);
                        mult.canonicalize();
                        sum += LaurentScalar(mult) * (b * s.base_twist() * z.at(s.var)).pow(p.d) *
                               v(2 * (k - s.len) - (n + 1) + 2 * p.j);
                    }
                LaurentScalar out = LaurentScalar(ln.a) * p.scale * sum;
                return vval.is_constant() ? out.substitute({{"v", vval}}) : out;
            },
            vval};
}

std::map<std::string, LaurentScalar> formal_z(const TwistSkeleton& sk) {
    std::map<std::string, LaurentScalar> z;
    for (const auto& name : sk.variables()) z.emplace(name, LaurentScalar::var(name));
    return z;
}

// Matrix with entries sum_k C(j-s, k-s) C(n-j, l-k) u^k (j >= s) or
// C(n-j, l-j) u^j (j < s), rows l = 1..rows.
RationalMatrix shifted_tilde(int n, int d, int s, const LaurentScalar& u, int rows) {
    RationalMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(d));
    for (int l = 1; l <= rows; ++l)
        for (int j = 1; j <= d; ++j) {
            LaurentScalar e;
            if (j >= s) {
                for (int k = 1; k <= d; ++k) {
                    long c = choose(j - s, k - s) * choose(n - j, l - k);
                    if (c) e += LaurentScalar(c) * u.pow(k);
                }
            } else {
                long c = choose(n - j, l - j);
                if (c) e = LaurentScalar(c) * u.pow(j);
            }
            m.at(l - 1, j - 1) = e;
        }
    return m;
}

} // namespace

TEST(BuildMatrixA, Examples) {
    EXPECT_EQ(build_matrix_A(1, 1, LaurentScalar(5)), RationalMatrix::from_rows({{1}}));
    EXPECT_EQ(build_matrix_A(2, 1, v(2)), RationalMatrix::from_rows({{1}}));
    auto a = build_matrix_A(2, 2, v(2));
    EXPECT_EQ(a, RationalMatrix::from_rows({{1, 1}, {LaurentScalar(2) * v(-2), 2}}));
    EXPECT_THROW(build_matrix_A(2, 3, v()), DomainError);
    EXPECT_THROW(build_matrix_A(2, 2, v() + 1), DomainError);
}

TEST(DetAClosed, Examples) {
    EXPECT_EQ(det_A_closed(1, 1), 1);
    EXPECT_EQ(det_A_closed(3, 2), 4);
    EXPECT_EQ(det_A_closed(3, 3), 24);
    EXPECT_THROW(det_A_closed(2, 3), DomainError);
}

// The closed product describes the determinant only with one column. In
// general det A = prod (n-k)! k! * (1 - 1/u)^{d(d-1)/2}, which is never
// zero for u != 1 and so still makes A invertible.
TEST(BuildMatrixA, DeterminantCarriesAPowerOfOneMinusInverseU) {
    const LaurentScalar u = v();
    const LaurentScalar factor = LaurentScalar(1) - v(-1);
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= n; ++d) {
            LaurentScalar det = mat_det(build_matrix_A(n, d, u));
            EXPECT_EQ(det, LaurentScalar(Rational(det_A_closed(n, d))) * factor.pow(d * (d - 1) / 2))
                << "n = " << n << " d = " << d;
            EXPECT_EQ(det == LaurentScalar(Rational(det_A_closed(n, d))), d == 1);
        }
    EXPECT_EQ(mat_det(build_matrix_A(3, 2, LaurentScalar(2))), LaurentScalar(2));
    EXPECT_EQ(mat_det(build_matrix_A(2, 2, v(2))), LaurentScalar(2) - LaurentScalar(2) * v(-2));
}

TEST(BuildMatrixA, InvertibleAwayFromUEqualsOne) {
    for (int n = 1; n <= 6; ++n)
        for (const Rational& u : {Rational(2), Rational(1, 3), Rational(-1), Rational(5, 2)})
            EXPECT_FALSE(mat_det(build_matrix_A(n, n, LaurentScalar(u))).is_zero());
    EXPECT_TRUE(mat_det(build_matrix_A(3, 3, LaurentScalar(1))).is_zero());
}

// Column j > s of the shifted matrix splits by Pascal's rule into row l and
// row l + 1 of the next one: A(s)_{l,j} = A(s+1)_{l,j} + u^{-1} A(s+1)_{l+1,j}.
// Columns j <= s agree outright.
TEST(BuildMatrixA, ShiftedMatricesSatisfyPascalRecursion) {
    const LaurentScalar u = v();
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= n; ++d) {
            for (int s = 1; s < d; ++s) {
                auto cur = shifted_tilde(n, d, s, u, d);
                auto next = shifted_tilde(n, d, s + 1, u, d + 1);
                for (int l = 1; l <= d; ++l)
                    for (int j = 1; j <= d; ++j) {
                        LaurentScalar expect = next.at(l - 1, j - 1);
                        if (j > s) expect += u.inverse() * next.at(l, j - 1);
                        EXPECT_EQ(cur.at(l - 1, j - 1), expect) << n << " " << d << " " << s << " " << l << " " << j;
                    }
            }
            // A = diag((n-l)! l! u^{-l}) * A(1).
            auto a = build_matrix_A(n, d, u);
            auto t = shifted_tilde(n, d, 1, u, d);
            for (int l = 1; l <= d; ++l)
                for (int j = 1; j <= d; ++j)
                    EXPECT_EQ(a.at(l - 1, j - 1), LaurentScalar(fact(n - l) * fact(l)) * u.pow(-l) * t.at(l - 1, j - 1));
        }
}

// The recursion mixes row l with row l + 1, and only in the later columns,
// so it is not a left multiplication by a unit lower triangular matrix.
TEST(BuildMatrixA, ShiftedMatricesAreNotRelatedByLowerTriangularFactor) {
    const LaurentScalar u = v();
    auto cur = shifted_tilde(2, 2, 1, u, 2);
    auto next = shifted_tilde(2, 2, 2, u, 2);
    EXPECT_EQ(cur, RationalMatrix::from_rows({{u, u}, {u, u.pow(2)}}));
    EXPECT_EQ(next, RationalMatrix::from_rows({{u, 0}, {u, u.pow(2)}}));
    auto e = RationalMatrix::identity(2);
    e.at(1, 0) = u.inverse();
    EXPECT_NE(e * next, cur);
    EXPECT_NE(mat_det(cur), mat_det(next));
}

TEST(RecoverPowerSums, Examples) {
    auto sk = one_line({1, 1});
    auto o = formal_z(sk);
    o["z1"] = 2;
    o["z2"] = 3;
    auto u = recover_power_sums(formula_oracle(sk, o, 2), sk, 0, 1);
    EXPECT_EQ(u.at(1), LaurentScalar(5));
    EXPECT_EQ(u.at(2), LaurentScalar(0));

    auto sk2 = one_line({2});
    auto u2 = recover_power_sums(formula_oracle(sk2, {{"z1", 7}}, 2), sk2, 0, 1);
    EXPECT_EQ(u2.at(2), LaurentScalar(7));
    EXPECT_EQ(u2.at(1), LaurentScalar(0));
}

TEST(RecoverPowerSums, FormalTwistsGivePowerSumsIdentically) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& lengths : compositions(n)) {
            auto sk = one_line(lengths);
            auto oracle = formula_oracle(sk, formal_z(sk), v());
            for (int d = 1; d <= 2; ++d) {
                auto u = recover_power_sums(oracle, sk, 0, d);
                for (int l = 1; l <= n; ++l) {
                    LaurentScalar expect;
                    for (const auto& s : sk.lines[0].segments)
                        if (s.len == l) expect += LaurentScalar::var(s.var, d);
                    EXPECT_EQ(u.at(l), expect);
                }
            }
        }
}

TEST(RecoverPowerSums, RejectsDegreeOutsideTwistIdeal) {
    auto sk = one_line({1, 1}, 2, 2);
    auto oracle = formula_oracle(sk, formal_z(sk), v());
    EXPECT_THROW(recover_power_sums(oracle, sk, 0, 3), DomainError);
    EXPECT_NO_THROW(recover_power_sums(oracle, sk, 0, 4));
}

TEST(NewtonSymmetric, Examples) {
    auto e1 = SymmetricTarget::parse("e1");
    EXPECT_EQ(newton_symmetric(e1, {LaurentScalar::var("p")}, 1), LaurentScalar::var("p"));
    EXPECT_EQ(newton_symmetric(SymmetricTarget::parse("e2"), {5, 13}, 2), LaurentScalar(6));
    EXPECT_EQ(newton_symmetric(SymmetricTarget::product_power(3), {5, 13}, 2), LaurentScalar(216));
    EXPECT_EQ(newton_symmetric(SymmetricTarget::parse("prod^3"), {5, 13}, 2), LaurentScalar(216));
    EXPECT_THROW(newton_symmetric(SymmetricTarget::parse("e2"), {5}, 2), DomainError);
}

TEST(NewtonSymmetric, AgreesWithExpandedProducts) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int N = 1; N <= 5; ++N)
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Rational> x(N);
            for (auto& xi : x) xi = val(rng);
            std::vector<LaurentScalar> p;
            for (int k = 1; k <= N; ++k) {
                Rational s = 0;
                for (const auto& xi : x) s += LaurentScalar(xi).pow(k).constant();
                p.push_back(s);
            }
            // prod (1 + x_i t) expanded gives the elementary functions.
            std::vector<Rational> e(N + 1, 0);
            e[0] = 1;
            for (const auto& xi : x)
                for (int k = N; k >= 1; --k) e[k] += xi * e[k - 1];
            auto got = elementary_from_power_sums(p, N);
            for (int k = 0; k <= N; ++k) EXPECT_EQ(got[k], LaurentScalar(e[k]));
            // Power sums past N come from the identities too.
            Rational p_next = 0;
            for (const auto& xi : x) p_next += LaurentScalar(xi).pow(N + 1).constant();
            auto target = SymmetricTarget::parse("p" + std::to_string(N + 1));
            EXPECT_EQ(newton_symmetric(target, p, N), LaurentScalar(p_next));
        }
}

TEST(SymmetricTarget, ParseAndPrint) {
    auto t = SymmetricTarget::parse("1/2*p1^2 + e2 + 3");
    EXPECT_EQ(t.to_string(), "1/2*p1^2+e2+3");
    EXPECT_EQ(newton_symmetric(t, {5, 13}, 2), LaurentScalar(Rational(25, 2) + 6 + 3));
    EXPECT_THROW(SymmetricTarget::parse(""), DomainError);
    EXPECT_THROW(SymmetricTarget::parse("e"), DomainError);
    EXPECT_THROW(SymmetricTarget::parse("e1*2"), DomainError);
    EXPECT_THROW(SymmetricTarget::parse("x1"), DomainError);
}

TEST(BlockModulus, Examples) {
    EXPECT_EQ(block_modulus_halfexponents({4}), (std::vector<std::int64_t>{0}));
    EXPECT_EQ(block_modulus_halfexponents({1, 1}), (std::vector<std::int64_t>{1, -1}));
    EXPECT_EQ(block_modulus_halfexponents({2, 1}), (std::vector<std::int64_t>{1, -2}));
    EXPECT_EQ(block_modulus_halfexponents({1, 2, 3}), (std::vector<std::int64_t>{5, 2, -3}));
}

TEST(DetectTwists, Examples) {
    auto sk = one_line({1, 1});
    auto oracle = formula_oracle(sk, {{"z1", 2}, {"z2", 3}}, 2);
    EXPECT_EQ(detect_twists(oracle, sk, 0, 1, SymmetricTarget::parse("e2")), LaurentScalar(6));
    EXPECT_EQ(detect_twists(oracle, sk, 0, 1, SymmetricTarget::parse("1")), LaurentScalar(1));
    EXPECT_EQ(detect_twists(oracle, sk, 0, 1, SymmetricTarget::parse("p2")), LaurentScalar(13));
}

TEST(DetectTwists, OtherLinesDoNotMatter) {
    SkeletonLine l1, l2;
    l1.cuspidal = bz::testing::unram("tau");
    l1.segments = {{1, 0, 1, ""}, {1, 0, 1, ""}};
    l2.cuspidal = CuspidalLabel{"sigma", 2, 2, 2, 0, true};
    l2.segments = {{2, -1, 1, ""}};
    l2.a = 3;
    TwistSkeleton sk{{l1, l2}};
    sk.validate_and_name();
    auto target = SymmetricTarget::parse("e2");
    for (int z3 : {1, 5, -7}) {
        auto oracle = formula_oracle(sk, {{"z1", 2}, {"z2", 3}, {"z3", z3}}, 2);
        EXPECT_EQ(detect_twists(oracle, sk, 0, 1, target), LaurentScalar(6));
    }
    // Line 2: (w z3)^2 with w = v^{1} = 2.
    auto oracle = formula_oracle(sk, {{"z1", 2}, {"z2", 3}, {"z3", 5}}, 2);
    EXPECT_EQ(detect_twists(oracle, sk, 1, 2, SymmetricTarget::parse("e1")), LaurentScalar(100));
}

TEST(DetectTwists, OutputsOnlyPowersOfTheTwistingIndex) {
    for (const auto& lengths : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 1}, {2, 2}})
        for (int I : {1, 2, 4}) {
            auto sk = one_line(lengths, I, 4);
            auto oracle = formula_oracle(sk, formal_z(sk), v());
            for (int len : {1, 2}) {
                auto value = detect_twists(oracle, sk, 0, len, SymmetricTarget::parse("e1 + prod^2 + p2"));
                for (const auto& [m, c] : value.terms())
                    for (const auto& [id, e] : m.entries())
                        if (var_name(id) != "v") EXPECT_EQ(e % I, 0) << value;
            }
        }
}
