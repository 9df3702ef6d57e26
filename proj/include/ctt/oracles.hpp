#pragma once

#include <cstdint>
#include <vector>

#include "ctt/combinatorics.hpp"
#include "ctt/games.hpp"

namespace ctt {

// Enumeration ceiling shared by every brute-force reference below.
struct OracleBudget {
    std::uint64_t max_enumeration = std::uint64_t(1) << 24;
};

// nu(S) evaluated directly from the game definition; bit i-1 of mask is
// membership of player i.
double coalition_value(const GameSpec& g, std::uint32_t mask);

// Semivalue pi(k) as the literal sum over all subsets of T minus {k}.
double brute_payoff(const GameSpec& g, int k, OracleBudget budget = {});
double brute_payoff_serial(const GameSpec& g, int k, OracleBudget budget = {});

// Exhaustive counting references.
long long brute_count_queens(int N, OracleBudget budget = {});
long long brute_count_sat(const CnfFormula& F, OracleBudget budget = {});
long long brute_count_sat_serial(const CnfFormula& F, OracleBudget budget = {});
long long brute_count_subsets(int n, int m, OracleBudget budget = {});
long long brute_count_sawtooth(const std::vector<std::vector<double>>& c, OracleBudget budget = {});
long long brute_count_partition(const std::vector<long long>& S, int n_parts,
                                OracleBudget budget = {});

// Permanent as the permutation sum.
double brute_permanent(const Matrix& A);
double brute_permanent_serial(const Matrix& A);

// Best reachable knapsack value by exhaustive choice enumeration; counts
// per item of one optimum are returned alongside the value.
struct KnapsackBrute {
    double best = 0.0;
    std::vector<int> counts;
    bool feasible = false;
};
KnapsackBrute brute_knapsack(const KnapsackInstance& inst, OracleBudget budget = {});

} // namespace ctt
