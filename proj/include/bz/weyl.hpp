#pragma once

#include "bz/laurent.hpp"

#include <string>
#include <vector>

namespace bz {

/// Block sizes of a standard Levi, summing to n.
using Composition = std::vector<int>;

/// One-line notation with 1-based images: w[i - 1] = w(i).
using Permutation = std::vector<int>;

inline constexpr int kDefaultCosetGuard = 10;
inline constexpr int kDefaultLevicombGuard = 8;
inline constexpr int kDefaultSprimeGuard = 9;

Permutation inverse(const Permutation& w);

/// Minimal-length representatives of W_{Mp} \ S_n / W_M: w increasing on
/// every block of M and w^{-1} increasing on every block of Mp.
std::vector<Permutation> min_coset_reps(const Composition& Mp, const Composition& M, int n,
                                        int max_n = kDefaultCosetGuard);

/// Brute-force check that for M = (m,..,m), Mp = (m l_1, .., m l_r), every
/// representative w with w M w^{-1} != M has w^{-1} Mp w meet M != M.
bool levicomb_check(const std::vector<int>& lengths, int m, int max_n = kDefaultLevicombGuard);

/// w in S_n (n = sum lengths) with w^{-1} increasing on every block range.
std::vector<Permutation> enumerate_Sprime(const std::vector<int>& lengths, int max_n = kDefaultSprimeGuard);

/// #{w in enumerate_Sprime(lengths) : w(j) = n_{i-1} + k}, i, j, k 1-based.
Integer count_Sprime(const std::vector<Permutation>& sprime, const std::vector<int>& lengths, int i, int k, int j);

/// (n - l_i)! l_i! C(j-1, k-1) C(n-j, l_i-k) / prod l!; zero for k > l_i.
Integer m_multiplicity(int n, const std::vector<int>& lengths, int i, int k, int j);

/// One constituent of the Jacquet module in slot j: the line-i twist with
/// the stated multiplicity, tensored with |det|^{q_exp2 / 2}. At the
/// uniformizer that character takes the value q^{-q_exp2/2} = v^{-q_exp2}.
struct IsotypicSummand {
    int line_index = 0;  // i, 1-based
    int k = 0;
    Integer multiplicity;
    int q_exp2 = 0;
    std::string twist_var;
};

std::vector<IsotypicSummand> jacquet_isotypic(const std::vector<int>& lengths, int j, int d_tau);

} // namespace bz
