#include "ctt/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ctt {

namespace {

void check_budget(std::uint64_t need, const OracleBudget& b, const char* what) {
    if (need > b.max_enumeration)
        throw std::runtime_error(std::string(what) + ": enumeration budget exceeded (" +
                                 std::to_string(need) + " > " +
                                 std::to_string(b.max_enumeration) + ")");
}

// Inserts a zero bit at position `pos`, shifting the higher bits up.
inline std::uint32_t widen_mask(std::uint32_t sub, int pos) {
    const std::uint32_t low = sub & ((std::uint32_t(1) << pos) - 1);
    const std::uint32_t high = (sub >> pos) << (pos + 1);
    return high | low;
}

} // namespace

double coalition_value(const GameSpec& g, std::uint32_t mask) {
    switch (g.kind) {
        case GameKind::Shoes: {
            const int L = (g.players - 1) / 2;
            int left = 0;
            int right = 0;
            for (int i = 1; i <= g.players; ++i) {
                if ((mask >> (i - 1)) & 1u) (i <= L ? left : right)++;
            }
            return double(std::min(left, right));
        }
        case GameKind::Airport: {
            double best = 0.0;
            for (int i = 1; i <= g.players; ++i)
                if ((mask >> (i - 1)) & 1u) best = std::max(best, g.costs[std::size_t(i) - 1]);
            return best;
        }
        case GameKind::Majority: {
            long long sum = 0;
            for (int i = 1; i <= g.players; ++i)
                if ((mask >> (i - 1)) & 1u) sum += g.weights_maj[std::size_t(i) - 1];
            return sum >= g.threshold ? 1.0 : 0.0;
        }
        case GameKind::Bankruptcy: {
            double outside = 0.0;
            for (int i = 1; i <= g.players; ++i)
                if (!((mask >> (i - 1)) & 1u)) outside += g.claims[std::size_t(i) - 1];
            return std::max(0.0, g.estate - outside);
        }
        case GameKind::OneSeller: {
            if (!(mask & 1u)) return 0.0;
            double best = 0.0;
            for (int i = 2; i <= g.players; ++i)
                if ((mask >> (i - 1)) & 1u) best = std::max(best, g.prices[std::size_t(i) - 2]);
            return best;
        }
    }
    throw std::logic_error("coalition_value: unknown game kind");
}

double brute_payoff_serial(const GameSpec& g, int k, OracleBudget budget) {
    g.validate();
    if (k < 1 || k > g.players) throw std::invalid_argument("brute_payoff: player out of range");
    if (g.players > 24) throw std::invalid_argument("brute_payoff: more than 24 players");
    const std::uint32_t subsets = std::uint32_t(1) << (g.players - 1);
    check_budget(subsets, budget, "brute_payoff");
    const std::uint32_t kbit = std::uint32_t(1) << (k - 1);
    double sum = 0.0;
    for (std::uint32_t sub = 0; sub < subsets; ++sub) {
        const std::uint32_t mask = widen_mask(sub, k - 1);
        const double p = semivalue_weight(g.weights, g.players, std::popcount(mask));
        sum += p * (coalition_value(g, mask | kbit) - coalition_value(g, mask));
    }
    return sum;
}

double brute_payoff(const GameSpec& g, int k, OracleBudget budget) {
    g.validate();
    if (k < 1 || k > g.players) throw std::invalid_argument("brute_payoff: player out of range");
    if (g.players > 24) throw std::invalid_argument("brute_payoff: more than 24 players");
    const std::int64_t subsets = std::int64_t(1) << (g.players - 1);
    check_budget(std::uint64_t(subsets), budget, "brute_payoff");
    const std::uint32_t kbit = std::uint32_t(1) << (k - 1);
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (std::int64_t sub = 0; sub < subsets; ++sub) {
        const std::uint32_t mask = widen_mask(std::uint32_t(sub), k - 1);
        const double p = semivalue_weight(g.weights, g.players, std::popcount(mask));
        sum += p * (coalition_value(g, mask | kbit) - coalition_value(g, mask));
    }
    return sum;
}

namespace {

long long queens_backtrack(int N, int row, std::uint32_t cols, std::uint32_t diag_up,
                           std::uint32_t diag_down) {
    if (row == N) return 1;
    long long count = 0;
    const std::uint32_t full = (std::uint32_t(1) << N) - 1;
    std::uint32_t free = full & ~(cols | diag_up | diag_down);
    while (free) {
        const std::uint32_t bit = free & (0u - free);
        free ^= bit;
        count += queens_backtrack(N, row + 1, cols | bit, ((diag_up | bit) << 1) & full,
                                  (diag_down | bit) >> 1);
    }
    return count;
}

} // namespace

long long brute_count_queens(int N, OracleBudget budget) {
    if (N < 1 || N > 16) throw std::invalid_argument("brute_count_queens: N out of range");
    // Column pruning alone already bounds the search tree by N! nodes.
    double tree = 1.0;
    for (int i = 2; i <= N; ++i) tree *= double(i);
    if (tree > double(budget.max_enumeration))
        throw std::runtime_error("brute_count_queens: enumeration budget exceeded");
    return queens_backtrack(N, 0, 0, 0, 0);
}

namespace {

bool sat_assignment_ok(const CnfFormula& F, std::uint32_t assign) {
    for (const auto& clause : F.clauses) {
        bool sat = false;
        for (int lit : clause) {
            const int var = std::abs(lit);
            const bool val = (assign >> (var - 1)) & 1u;
            if ((lit > 0) == val) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

} // namespace

long long brute_count_sat_serial(const CnfFormula& F, OracleBudget budget) {
    F.validate();
    if (F.vars > 24) throw std::invalid_argument("brute_count_sat: more than 24 variables");
    const std::uint32_t total = std::uint32_t(1) << F.vars;
    check_budget(total, budget, "brute_count_sat");
    long long count = 0;
    for (std::uint32_t a = 0; a < total; ++a)
        if (sat_assignment_ok(F, a)) ++count;
    return count;
}

long long brute_count_sat(const CnfFormula& F, OracleBudget budget) {
    F.validate();
    if (F.vars > 24) throw std::invalid_argument("brute_count_sat: more than 24 variables");
    const std::int64_t total = std::int64_t(1) << F.vars;
    check_budget(std::uint64_t(total), budget, "brute_count_sat");
    long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (std::int64_t a = 0; a < total; ++a)
        if (sat_assignment_ok(F, std::uint32_t(a))) ++count;
    return count;
}

long long brute_count_subsets(int n, int m, OracleBudget budget) {
    if (n < 1 || n > 24) throw std::invalid_argument("brute_count_subsets: n out of range");
    if (m < 2) throw std::invalid_argument("brute_count_subsets: modulus below 2");
    const std::uint32_t total = std::uint32_t(1) << n;
    check_budget(total, budget, "brute_count_subsets");
    long long count = 0;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        long long sum = 0;
        for (int k = 1; k <= n; ++k)
            if ((mask >> (k - 1)) & 1u) sum += k;
        if (sum % m == 0) ++count;
    }
    return count;
}

long long brute_count_sawtooth(const std::vector<std::vector<double>>& c, OracleBudget budget) {
    const int d = int(c.size());
    if (d < 2) throw std::invalid_argument("brute_count_sawtooth: need at least two positions");
    std::uint64_t total = 1;
    for (const auto& v : c) {
        if (v.empty()) throw std::invalid_argument("brute_count_sawtooth: empty value array");
        total *= v.size();
        check_budget(total, budget, "brute_count_sawtooth");
    }
    std::vector<int> idx(std::size_t(d), 0);
    long long count = 0;
    while (true) {
        bool ok = true;
        int dir = 0;
        for (int k = 1; k < d && ok; ++k) {
            const double delta =
                    c[std::size_t(k)][std::size_t(idx[std::size_t(k)])] -
                    c[std::size_t(k) - 1][std::size_t(idx[std::size_t(k) - 1])];
            const int step = delta > 0 ? 1 : (delta < 0 ? -1 : 0);
            if (step == 0 || step == dir) {
                ok = false;
            } else {
                dir = step;
            }
        }
        if (ok) ++count;
        int k = d - 1;
        while (k >= 0 && ++idx[std::size_t(k)] == int(c[std::size_t(k)].size())) {
            idx[std::size_t(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return count;
}

long long brute_count_partition(const std::vector<long long>& S, int n_parts,
                                OracleBudget budget) {
    const int d = int(S.size());
    if (d < 1 || n_parts < 1) throw std::invalid_argument("brute_count_partition: empty input");
    const long long total_sum = std::accumulate(S.begin(), S.end(), 0ll);
    if (total_sum % n_parts != 0) return 0;
    const long long target = total_sum / n_parts;
    std::uint64_t space = 1;
    for (int k = 0; k < d; ++k) {
        space *= std::uint64_t(n_parts);
        check_budget(space, budget, "brute_count_partition");
    }
    std::vector<int> idx(std::size_t(d), 0);
    long long count = 0;
    while (true) {
        std::vector<long long> sums(std::size_t(n_parts), 0);
        for (int k = 0; k < d; ++k) sums[std::size_t(idx[std::size_t(k)])] += S[std::size_t(k)];
        if (std::all_of(sums.begin(), sums.end(), [&](long long s) { return s == target; }))
            ++count;
        int k = d - 1;
        while (k >= 0 && ++idx[std::size_t(k)] == n_parts) {
            idx[std::size_t(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return count;
}

double brute_permanent_serial(const Matrix& A) {
    const int n = int(A.size());
    if (n == 0) return 1.0;
    if (n > 9) throw std::invalid_argument("brute_permanent: matrices above 9x9 unsupported");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    do {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= A[std::size_t(perm[std::size_t(i)])][std::size_t(i)];
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

namespace {

// Expansion over the first remaining column; rows_used marks consumed rows.
double permanent_minor(const Matrix& A, int col, std::uint32_t rows_used) {
    const int n = int(A.size());
    if (col == n) return 1.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if ((rows_used >> i) & 1u) continue;
        const double a = A[std::size_t(i)][std::size_t(col)];
        if (a == 0.0) continue;
        sum += a * permanent_minor(A, col + 1, rows_used | (std::uint32_t(1) << i));
    }
    return sum;
}

} // namespace

double brute_permanent(const Matrix& A) {
    const int n = int(A.size());
    if (n == 0) return 1.0;
    if (n > 9) throw std::invalid_argument("brute_permanent: matrices above 9x9 unsupported");
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const double a = A[std::size_t(i)][0];
        if (a == 0.0) continue;
        sum += a * permanent_minor(A, 1, std::uint32_t(1) << i);
    }
    return sum;
}

KnapsackBrute brute_knapsack(const KnapsackInstance& inst, OracleBudget budget) {
    inst.validate();
    const int n = int(inst.values.size());
    std::vector<int> bounds = inst.bounds;
    if (bounds.empty()) bounds.assign(std::size_t(n), 1);
    std::uint64_t space = 1;
    for (int b : bounds) {
        space *= std::uint64_t(b) + 1;
        check_budget(space, budget, "brute_knapsack");
    }
    KnapsackBrute out;
    std::vector<int> idx(std::size_t(n), 0);
    while (true) {
        bool feasible = true;
        for (std::size_t j = 0; j < inst.weights.size() && feasible; ++j) {
            double load = 0.0;
            for (int k = 0; k < n; ++k)
                load += inst.weights[j][std::size_t(k)] * idx[std::size_t(k)];
            feasible = load <= inst.capacities[j];
        }
        if (feasible) {
            double value = 0.0;
            for (int k = 0; k < n; ++k) value += inst.values[std::size_t(k)] * idx[std::size_t(k)];
            if (!out.feasible || value > out.best) {
                out.best = value;
                out.counts = idx;
                out.feasible = true;
            }
        }
        int k = n - 1;
        while (k >= 0 && ++idx[std::size_t(k)] > bounds[std::size_t(k)]) {
            idx[std::size_t(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

} // namespace ctt
