#include "bz/combinatorics.hpp"

#include "bz/errors.hpp"

#include <functional>

namespace bz {

Integer factorial(std::int64_t n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

Integer binomial(std::int64_t top, std::int64_t bottom) {
    if (top < 0 || bottom < 0 || bottom > top) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
    return out;
}

Integer multinomial(const std::vector<int>& parts) {
    std::int64_t n = 0;
    Integer den = 1;
    for (int p : parts) {
        if (p < 0) throw DomainError("negative part in multinomial");
        n += p;
        den *= factorial(p);
    }
    return factorial(n) / den;
}

std::vector<std::vector<int>> compositions(int n) {
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    // Bit b of mask set means a cut after position b+1.
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int b = 0; b < n - 1; ++b) {
            if (mask & (1u << b)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.push_back(std::move(parts));
    }
    return out;
}

std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    if (n > 0) rec(n, n);
    return out;
}

} // namespace bz
