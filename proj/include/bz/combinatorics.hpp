#pragma once

#include "bz/laurent.hpp"

#include <cstdint>
#include <vector>

namespace bz {

Integer factorial(std::int64_t n);

/// C(top, bottom); zero when either entry is negative or bottom > top.
Integer binomial(std::int64_t top, std::int64_t bottom);

/// n! / (parts[0]! parts[1]! ...), n = sum of parts.
Integer multinomial(const std::vector<int>& parts);

/// All compositions of n (ordered lists of positive parts).
std::vector<std::vector<int>> compositions(int n);

/// All partitions of n, parts non-increasing.
std::vector<std::vector<int>> partitions(int n);

} // namespace bz
