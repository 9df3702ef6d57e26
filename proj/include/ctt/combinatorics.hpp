#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ctt/search.hpp"
#include "ctt/tt_tensor.hpp"

namespace ctt {

using bigint = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<double>>; // rectangular, row major

struct CnfFormula {
    int vars = 0;
    std::vector<std::vector<int>> clauses; // signed 1-based literals

    void validate() const;
};

// Indicator of x > t on binary indices: entry at (i_1..i_d) with i_1 the
// most significant bit equals 1 when the encoded integer exceeds t.
// Ranks never pass 2.
TtTensor qtt_step_build(int d, long long t);

// Tensor of P(a_1[i_1] + ... + a_d[i_d]) with the middle at floor((d+1)/2).
// With no P the explicit rank-2 running-sum cores are emitted directly.
TtTensor linear_sum_build(const std::vector<std::vector<double>>& a,
                          const std::function<double(double)>& P = nullptr);

struct PermanentResult {
    double value = 0.0;
    std::vector<int> ranks;
    OpCount ops;
};

// Permanent of A as the contraction of the all-rows-distinct indicator
// against the rank-one tensor of A's columns. Ranks are the binomials.
PermanentResult permanent(const Matrix& A, int cap = 24);

// Gray-code Ryser formula with running row sums; the reference value.
double ryser_reference(const Matrix& A);

struct KnapsackInstance {
    std::vector<double> values;               // per item
    std::vector<std::vector<double>> weights; // one row per constraint
    std::vector<double> capacities;           // per constraint
    std::vector<int> bounds;                  // copies available per item; empty = all 1

    void validate() const;
};

struct KnapsackResult {
    SearchResult pick;        // indices = copies taken per item
    double total_value = 0.0; // recomputed from the raw values
    std::vector<int> ranks;   // of the final product tensor
};

// Value tensor times feasibility indicators, then a greedy argmax; the
// returned selection is re-verified against the raw constraints. eps > 0
// rounds the product after each indicator to tame ranks.
std::optional<KnapsackResult> knapsack_solve(const KnapsackInstance& inst, double eps = 0.0);

// Split S into n parts of equal sum; indices in the result give each
// element's part. none when no partition exists.
std::optional<SearchResult> partition_solve(const std::vector<long long>& S, int n_parts);

struct QueensResult {
    TtTensor tensor;
    bigint count = 0;
    std::vector<int> ranks;
};

// Non-attacking N-queens placements, one mode per board column. States
// pack 3N bits: occupied rows, then rows cut by rising diagonals (shifted
// forward each step), then by falling diagonals (shifted back).
QueensResult queens_tensor(int N, int cap = 12);

// Exact model count: one rank-<=2 indicator per clause (ordered by last
// variable), Hadamard products with rounding in between.
bigint sat_count(const CnfFormula& F);

// A satisfying assignment extracted from the same product, or none.
std::optional<std::vector<bool>> sat_model(const CnfFormula& F);

// Indicator of index tuples whose mapped values alternate strictly
// (each consecutive difference flips direction; the first step is free).
TtTensor sawtooth_build(const std::vector<std::vector<double>>& c);

// Number of subsets of {1..n} whose element sum is divisible by m
// (the empty set counts). Exact contraction; for m = 5 with 5 | n the
// closed-form eigenvalue powering is evaluated too and must agree.
bigint subsets_divisible_count(int n, int m);

// The m = 5 closed form (32^q + 4*2^q)/5 with q = n/5.
bigint subsets_divisible_analytic(int n);

} // namespace ctt
