#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mono/rational.hpp"

namespace mono {

// Binomial coefficient C(n, k); 0 when k < 0 or k > n. Throws DomainError
// when the result does not fit in 64 bits.
std::uint64_t binomial(int n, int k);
BigInt binomial_big(int n, int k);

std::uint64_t factorial(int n);

// Colexicographic rank of a strictly increasing combination:
// rank = sum_i C(c_i, i + 1).
std::uint64_t colex_rank(std::span<const int> combo);

// Inverse of colex_rank for combinations of size k. Writes into `out`
// (size k), in increasing order.
void colex_unrank(std::uint64_t rank, int k, std::span<int> out);

// Advances an increasing combination over [0, n) to its colex successor.
// Returns false after the last one.
bool next_combination_colex(std::span<int> combo, int n);

// All permutations of {0..r-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int r);

// Lexicographic index of a permutation of {0..r-1}.
std::size_t permutation_index(std::span<const int> perm);

}  // namespace mono
