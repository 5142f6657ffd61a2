#include "bz/weyl.hpp"

#include "bz/combinatorics.hpp"
#include "bz/errors.hpp"

#include <algorithm>
#include <numeric>

namespace bz {

namespace {

int checked_sum(const std::vector<int>& parts, const char* what) {
    if (parts.empty()) throw DomainError(std::string(what) + " must be nonempty");
    int n = 0;
    for (int p : parts) {
        if (p < 1) throw DomainError(std::string(what) + " parts must be positive");
        n += p;
    }
    return n;
}

// block_of[x] = index of the block containing position x (0-based).
std::vector<int> block_index(const Composition& c) {
    std::vector<int> out;
    for (std::size_t b = 0; b < c.size(); ++b) out.insert(out.end(), c[b], static_cast<int>(b));
    return out;
}

bool increasing_on_blocks(const Permutation& w, const Composition& c) {
    int pos = 0;
    for (int size : c) {
        for (int t = 1; t < size; ++t)
            if (w[pos + t - 1] > w[pos + t]) return false;
        pos += size;
    }
    return true;
}

void guard(int n, int max_n, const char* what) {
    if (n > max_n)
        throw GuardExceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds guard " +
                            std::to_string(max_n));
}

} // namespace

Permutation inverse(const Permutation& w) {
    Permutation inv(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) inv[w[i] - 1] = static_cast<int>(i) + 1;
    return inv;
}

std::vector<Permutation> min_coset_reps(const Composition& Mp, const Composition& M, int n, int max_n) {
    if (checked_sum(Mp, "composition") != n || checked_sum(M, "composition") != n)
        throw DomainError("compositions must both sum to n");
    guard(n, max_n, "min_coset_reps");
    std::vector<Permutation> out;
    Permutation w(n);
    std::iota(w.begin(), w.end(), 1);
    do {
        if (increasing_on_blocks(w, M) && increasing_on_blocks(inverse(w), Mp)) out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

bool levicomb_check(const std::vector<int>& lengths, int m, int max_n) {
    int n = checked_sum(lengths, "lengths");
    if (m < 1) throw DomainError("m must be positive");
    guard(n * m, max_n, "levicomb_check");
    const int N = n * m;
    Composition M(n, m), Mp;
    for (int l : lengths) Mp.push_back(m * l);
    auto blockM = block_index(M), blockMp = block_index(Mp);
    for (const auto& w : min_coset_reps(Mp, M, N, max_n)) {
        // w M w^{-1} is the Levi of the partition {w(B)}; it is M exactly
        // when w carries each M-block onto an M-block.
        bool conj_is_M = true;
        for (int x = 0; x < N && conj_is_M; ++x)
            for (int y = x + 1; y < N; ++y)
                if (blockM[x] == blockM[y] && blockM[w[x] - 1] != blockM[w[y] - 1]) {
                    conj_is_M = false;
                    break;
                }
        if (conj_is_M) continue;
        // w^{-1} Mp w has blocks w^{-1}(B'); its meet with M is M iff every
        // M-block lies inside one of them, i.e. w maps it into one Mp-block.
        bool meet_is_M = true;
        for (int x = 0; x + 1 < N && meet_is_M; ++x)
            if (blockM[x] == blockM[x + 1] && blockMp[w[x] - 1] != blockMp[w[x + 1] - 1]) meet_is_M = false;
        if (meet_is_M) return false;
    }
    return true;
}

std::vector<Permutation> enumerate_Sprime(const std::vector<int>& lengths, int max_n) {
    int n = checked_sum(lengths, "lengths");
    guard(n, max_n, "enumerate_Sprime");
    std::vector<Permutation> out;
    // Enumerate w^{-1} directly: increasing on block ranges means it is a
    // shuffle, i.e. a word in block labels.
    std::vector<int> word = block_index(lengths);
    std::vector<int> start(lengths.size(), 0);
    for (std::size_t b = 1; b < lengths.size(); ++b) start[b] = start[b - 1] + lengths[b - 1];
    // word[p] = block whose next element e satisfies w^{-1}(e) = p.
    do {
        Permutation w(n);
        std::vector<int> next = start;
        for (int p = 0; p < n; ++p) w[p] = ++next[word[p]];
        out.push_back(std::move(w));
    } while (std::next_permutation(word.begin(), word.end()));
    std::sort(out.begin(), out.end());
    return out;
}

Integer count_Sprime(const std::vector<Permutation>& sprime, const std::vector<int>& lengths, int i, int k, int j) {
    int offset = 0;
    for (int b = 0; b < i - 1; ++b) offset += lengths[b];
    if (k > lengths[i - 1]) return 0;
    Integer count = 0;
    for (const auto& w : sprime)
        if (w[j - 1] == offset + k) ++count;
    return count;
}

Integer m_multiplicity(int n, const std::vector<int>& lengths, int i, int k, int j) {
    if (i < 1 || i > static_cast<int>(lengths.size())) throw DomainError("segment index out of range");
    if (j < 1 || j > n) throw DomainError("slot j out of range");
    if (k < 1) throw DomainError("k must be positive");
    const int l = lengths[i - 1];
    if (k > l) return 0;
    Rational value(factorial(n - l) * factorial(l) * binomial(j - 1, k - 1) * binomial(n - j, l - k));
    for (int li : lengths) value /= Rational(factorial(li));
    if (value.get_den() != 1) throw DomainError("multiplicity formula gave a non-integer");
    return value.get_num();
}

std::vector<IsotypicSummand> jacquet_isotypic(const std::vector<int>& lengths, int j, int d_tau) {
    int n = checked_sum(lengths, "lengths");
    if (j < 1 || j > n) throw DomainError("slot j must lie in 1..n");
    if (d_tau < 1) throw DomainError("d_tau must be positive");
    Integer dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(d_tau), static_cast<unsigned long>(n - 1));
    std::vector<IsotypicSummand> out;
    for (int i = 1; i <= static_cast<int>(lengths.size()); ++i)
        for (int k = 1; k <= n; ++k) {
            Integer m = m_multiplicity(n, lengths, i, k, j);
            if (m == 0) continue;
            out.push_back({i, k, dpow * m, 2 * (lengths[i - 1] - k) + (n + 1) - 2 * j, "z" + std::to_string(i)});
        }
    return out;
}

} // namespace bz
