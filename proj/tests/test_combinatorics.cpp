#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ctt/combinatorics.hpp"
#include "ctt/oracles.hpp"
#include "ctt/search.hpp"
#include "ctt/tt_tensor.hpp"

using namespace ctt;

namespace {

Matrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix A(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& row : A)
        for (double& v : row) v = double(rng() >> 11) * 0x1.0p-53;
    return A;
}

double rel(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

bool all_zero_or_one(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0 && x != 1.0) return false;
    return true;
}

} // namespace

TEST_CASE("binary step tensor thresholds the encoded integer") {
    // d=4, t=5: x=6 is above, x=5 is not.
    const TtTensor t = qtt_step_build(4, 5);
    CHECK(eval_entry(t, {0, 1, 1, 0}) == 1.0); // 6
    CHECK(eval_entry(t, {0, 1, 0, 1}) == 0.0); // 5
    for (int d : {1, 2, 5, 8}) {
        for (long long th : {0LL, 1LL, (1LL << d) / 2, (1LL << d) - 1}) {
            const TtTensor s = qtt_step_build(d, th);
            const auto ranks = s.ranks();
            for (int r : ranks) CHECK(r <= 2);
            const auto full = to_full(s);
            CHECK(all_zero_or_one(full));
            for (long long x = 0; x < (1LL << d); ++x) {
                // Mode 1 carries the most significant bit.
                std::vector<int> idx(static_cast<std::size_t>(d));
                for (int k = 0; k < d; ++k) idx[std::size_t(k)] = int((x >> (d - 1 - k)) & 1);
                CHECK(eval_entry(s, idx) == (x > th ? 1.0 : 0.0));
            }
        }
    }
    // d=2, t=2: only x=3 exceeds the threshold.
    const TtTensor s = qtt_step_build(2, 2);
    CHECK(to_full(s) == std::vector<double>{0, 0, 0, 1});
    CHECK_THROWS_AS((void)qtt_step_build(3, 8), std::invalid_argument);
    CHECK_THROWS_AS((void)qtt_step_build(3, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)qtt_step_build(0, 0), std::invalid_argument);
}

TEST_CASE("running-sum chain evaluates linear forms and their transforms") {
    const std::vector<std::vector<double>> a{{0, 1}, {0, 2}, {0, 4}};
    const TtTensor t = linear_sum_build(a);
    CHECK(t.ranks() == std::vector<int>{1, 2, 2, 1});
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int i3 = 0; i3 < 2; ++i3)
                CHECK(eval_entry(t, {i1, i2, i3}) == doctest::Approx(i1 + 2 * i2 + 4 * i3));
    // Single mode.
    const TtTensor one = linear_sum_build({{3, 1, 4}});
    CHECK(to_full(one) == std::vector<double>{3, 1, 4});
    // With a pointwise transform the chain goes through the state table.
    const TtTensor ind = linear_sum_build(a, [](double s) { return s == 3.0 ? 1.0 : 0.0; });
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int i3 = 0; i3 < 2; ++i3)
                CHECK(eval_entry(ind, {i1, i2, i3}) == (i1 + 2 * i2 + 4 * i3 == 3 ? 1.0 : 0.0));
}

TEST_CASE("permanent ranks are the binomial coefficients") {
    const PermanentResult five = permanent(random_matrix(5, 1));
    CHECK(five.ranks == std::vector<int>{1, 5, 10, 10, 5, 1});
    const PermanentResult ten = permanent(random_matrix(10, 2));
    CHECK(ten.ranks == std::vector<int>{1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1});
}

TEST_CASE("permanent agrees with both references on random matrices") {
    for (int n = 1; n <= 7; ++n) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const Matrix A = random_matrix(n, 10 * std::uint64_t(n) + seed);
            const double tt = permanent(A).value;
            const double ryser = ryser_reference(A);
            const double brute = brute_permanent(A);
            CHECK(rel(tt, ryser) <= 1e-10);
            CHECK(rel(tt, brute) <= 1e-10);
        }
    }
}

TEST_CASE("permanent handles structured matrices exactly") {
    Matrix I(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i) I[std::size_t(i)][std::size_t(i)] = 1.0;
    CHECK(permanent(I).value == doctest::Approx(1.0));
    const Matrix ones(6, std::vector<double>(6, 1.0));
    CHECK(permanent(ones).value == doctest::Approx(720.0)); // 6!
    Matrix bad{{1, 2}, {3, 4}, {5, 6}};
    CHECK_THROWS_AS((void)permanent(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)permanent(random_matrix(25, 0)), std::invalid_argument);
}

TEST_CASE("permanent contraction cost stays within the counting bound") {
    for (int n : {8, 10, 12}) {
        const PermanentResult r = permanent(random_matrix(n, 3));
        CHECK(double(r.ops.total()) <= 2.0 * std::ldexp(double(n), n));
    }
}

TEST_CASE("knapsack returns verified feasible selections") {
    // The classic three-item instance, where the greedy sweep does land on
    // the optimum.
    KnapsackInstance inst;
    inst.values = {60, 100, 120};
    inst.weights = {{10, 20, 30}};
    inst.capacities = {50};
    const auto r = knapsack_solve(inst);
    REQUIRE(r.has_value());
    CHECK(r->total_value == doctest::Approx(220.0));
    CHECK(r->pick.indices == std::vector<int>{0, 1, 1});

    // The greedy sweep maximizes remaining slice sums, not the entry itself,
    // so on random instances it promises feasibility and consistency, not
    // optimality: value recomputed from the raw data, within the brute-force
    // optimum, and every constraint respected.
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + int(rng() % 4);
        KnapsackInstance k;
        for (int i = 0; i < n; ++i) {
            k.values.push_back(double(rng() % 50) + 1.0);
            k.bounds.push_back(1 + int(rng() % 2));
        }
        const int m = 1 + int(trial % 2);
        for (int c = 0; c < m; ++c) {
            std::vector<double> row;
            double tot = 0.0;
            for (int i = 0; i < n; ++i) {
                row.push_back(double(rng() % 9) + 1.0);
                tot += row.back() * k.bounds[std::size_t(i)];
            }
            k.weights.push_back(row);
            k.capacities.push_back(std::floor(tot / 2));
        }
        const auto got = knapsack_solve(k);
        const KnapsackBrute want = brute_knapsack(k);
        REQUIRE(got.has_value());
        REQUIRE(want.feasible);
        INFO("trial ", trial);
        double value = 0.0;
        for (int i = 0; i < n; ++i)
            value += k.values[std::size_t(i)] * got->pick.indices[std::size_t(i)];
        CHECK(got->total_value == doctest::Approx(value));
        CHECK(got->total_value > 0.0);
        CHECK(got->total_value <= want.best + 1e-9);
        // Selection is feasible under the raw constraints.
        for (std::size_t c = 0; c < k.weights.size(); ++c) {
            double load = 0.0;
            for (int i = 0; i < n; ++i)
                load += k.weights[c][std::size_t(i)] * got->pick.indices[std::size_t(i)];
            CHECK(load <= k.capacities[c] + 1e-9);
        }
    }
}

TEST_CASE("infeasible knapsack constraints yield no selection") {
    KnapsackInstance inst;
    inst.values = {5, 5};
    inst.weights = {{1, 1}};
    inst.capacities = {-1.0}; // nothing fits, not even the empty pick
    CHECK_FALSE(knapsack_solve(inst).has_value());
}

TEST_CASE("set partitioning balances sums or reports impossibility") {
    const auto two = partition_solve({1, 5, 11, 5}, 2);
    REQUIRE(two.has_value());
    long long s0 = 0, s1 = 0;
    const std::vector<long long> S{1, 5, 11, 5};
    for (std::size_t i = 0; i < S.size(); ++i)
        (two->indices[i] == 0 ? s0 : s1) += S[i];
    CHECK(s0 == 11);
    CHECK(s1 == 11);

    CHECK(partition_solve({1, 2, 3}, 2).has_value());  // {3} vs {1,2}
    CHECK(partition_solve({1, 1}, 2).has_value());
    CHECK_FALSE(partition_solve({1, 2}, 2).has_value());
    CHECK_FALSE(partition_solve({1, 2, 4}, 2).has_value()); // 7 is odd
    CHECK(partition_solve({3, 3, 3}, 3).has_value());
    CHECK(partition_solve({1, 2, 3, 4, 5, 6}, 3).has_value()); // 21 / 3 = 7
    CHECK_FALSE(partition_solve({5, 5, 5, 1}, 2).has_value()); // 16/2=8 unreachable
    CHECK_THROWS_AS((void)partition_solve({0, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)partition_solve({1, 2}, 0), std::invalid_argument);

    // Randomized agreement with the exhaustive checker.
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<long long> set;
        const int n = 4 + int(rng() % 5);
        for (int i = 0; i < n; ++i) set.push_back(1 + int(rng() % 7));
        const int parts = 2 + int(rng() % 2);
        const bool found = partition_solve(set, parts).has_value();
        const bool exists = brute_count_partition(set, parts) > 0;
        INFO("trial ", trial);
        CHECK(found == exists);
    }
}

TEST_CASE("queens tensors count exactly and contain only zeros and ones") {
    const std::vector<long long> counts{1, 0, 0, 2, 10, 4, 40, 92};
    for (int n = 1; n <= 8; ++n) {
        const QueensResult q = queens_tensor(n);
        CHECK(q.count == counts[std::size_t(n) - 1]);
        CHECK(q.count == brute_count_queens(n));
        CHECK(int(q.ranks.size()) == n + 1);
        if (n <= 6) CHECK(all_zero_or_one(to_full(q.tensor)));
    }
    CHECK_THROWS_AS((void)queens_tensor(0), std::invalid_argument);
    CHECK_THROWS_AS((void)queens_tensor(13), std::invalid_argument);
}

TEST_CASE("SAT model counting matches exhaustive enumeration") {
    // Hand-checked formulas first.
    CnfFormula F;
    F.vars = 3;
    F.clauses = {{1, -2}, {2, 3}};
    CHECK(sat_count(F) == 4);
    F.clauses = {{1}, {-1}};
    CHECK(sat_count(F) == 0);
    CHECK_FALSE(sat_model(F).has_value());
    F.clauses = {};
    CHECK(sat_count(F) == 8);
    F.clauses = {{1, -1}}; // tautology clause
    CHECK(sat_count(F) == 8);
    F.clauses = {{}}; // empty clause: unsatisfiable
    CHECK(sat_count(F) == 0);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        CnfFormula R;
        R.vars = 3 + int(rng() % 10);
        const int m = 2 + int(rng() % (2 * R.vars));
        for (int c = 0; c < m; ++c) {
            std::vector<int> clause;
            for (int j = 0; j < 3; ++j) {
                const int v = 1 + int(rng() % std::uint64_t(R.vars));
                clause.push_back(rng() % 2 ? v : -v);
            }
            clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
            R.clauses.push_back(clause);
        }
        const bigint got = sat_count(R);
        const long long want = brute_count_sat(R);
        INFO("trial ", trial, " vars ", R.vars, " clauses ", m);
        CHECK(got == want);
        const auto model = sat_model(R);
        CHECK(model.has_value() == (want > 0));
        if (model) {
            // Every clause holds under the extracted assignment.
            for (const auto& clause : R.clauses) {
                bool ok = false;
                for (int lit : clause) {
                    const bool val = (*model)[std::size_t(std::abs(lit)) - 1];
                    if ((lit > 0) == val) ok = true;
                }
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("alternating-difference indicator matches enumeration") {
    const std::vector<std::vector<double>> zig{{0, 2}, {1, 3}, {0, 2}};
    const TtTensor t = sawtooth_build(zig);
    CHECK(all_zero_or_one(to_full(t)));
    CHECK(contract_modes<long long>(t) == brute_count_sawtooth(zig));
    // Constant arrays never alternate.
    const std::vector<std::vector<double>> flat{{1, 1}, {1, 1}, {1, 1}};
    CHECK(contract_modes<long long>(sawtooth_build(flat)) == 0);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<std::vector<double>> c;
        const int d = 2 + int(rng() % 4);
        for (int k = 0; k < d; ++k) {
            std::vector<double> col;
            for (int i = 0, n = 2 + int(rng() % 3); i < n; ++i)
                col.push_back(double(rng() % 5));
            c.push_back(col);
        }
        INFO("trial ", trial);
        CHECK(contract_modes<long long>(sawtooth_build(c)) == brute_count_sawtooth(c));
    }
}

TEST_CASE("divisible-subset counts match enumeration and the closed form") {
    for (int n = 1; n <= 12; ++n)
        for (int m = 2; m <= 7; ++m)
            CHECK(subsets_divisible_count(n, m) == brute_count_subsets(n, m));
    // The modulus-five closed form holds whenever 5 divides n.
    for (int n = 5; n <= 60; n += 5)
        CHECK(subsets_divisible_count(n, 5) == subsets_divisible_analytic(n));
    CHECK(subsets_divisible_count(1, 5) == 1); // only the empty subset
    CHECK_THROWS_AS((void)subsets_divisible_count(3, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)subsets_divisible_analytic(7), std::invalid_argument);
}

TEST_CASE("CNF validation rejects malformed clauses") {
    CnfFormula F;
    F.vars = 2;
    F.clauses = {{0}};
    CHECK_THROWS_AS(F.validate(), std::invalid_argument);
    F.clauses = {{3}};
    CHECK_THROWS_AS(F.validate(), std::invalid_argument);
    F.vars = -1;
    F.clauses = {};
    CHECK_THROWS_AS(F.validate(), std::invalid_argument);
}
