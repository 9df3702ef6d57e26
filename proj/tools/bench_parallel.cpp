// Timed comparison of the OpenMP kernels against their serial references.
// Each row re-checks that both paths agree before reporting the speedup,
// so the benchmark doubles as a consistency test for the parallel code.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "ctt/combinatorics.hpp"
#include "ctt/games.hpp"
#include "ctt/oracles.hpp"

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now().time_since_epoch())
            .count();
}

struct Row {
    std::string task;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool match = false;
};

void print(const Row& r) {
    const double speedup = r.parallel_ms > 0.0 ? r.serial_ms / r.parallel_ms : 0.0;
    std::cout << r.task << ',' << r.serial_ms << ',' << r.parallel_ms << ',' << speedup << ','
              << (r.match ? 1 : 0) << '\n';
}

ctt::CnfFormula random_cnf(int vars, int clauses, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ctt::CnfFormula F;
    F.vars = vars;
    for (int c = 0; c < clauses; ++c) {
        std::vector<int> clause;
        for (int j = 0; j < 3; ++j) {
            const int v = int(rng() % std::uint64_t(vars)) + 1;
            clause.push_back(rng() % 2 == 0 ? v : -v);
        }
        F.clauses.push_back(clause);
    }
    return F;
}

} // namespace

int main() {
    using namespace ctt;
    std::cout << "task,serial_ms,parallel_ms,speedup,match\n";

    { // per-player semivalue payoffs of a 16-player weighted majority game
        const GameSpec g = random_game(GameKind::Majority, 16, 7);
        Row r{"brute_payoff majority players=16", 0, 0, true};
        double serial_sum = 0.0, parallel_sum = 0.0;
        double t0 = now_ms();
        for (int k = 1; k <= g.players; ++k) serial_sum += brute_payoff_serial(g, k);
        r.serial_ms = now_ms() - t0;
        t0 = now_ms();
        for (int k = 1; k <= g.players; ++k) parallel_sum += brute_payoff(g, k);
        r.parallel_ms = now_ms() - t0;
        r.match = std::abs(serial_sum - parallel_sum) <= 1e-9 * std::max(1.0, std::abs(serial_sum));
        print(r);
    }

    { // exhaustive model count of a random 3-CNF over 20 variables
        const CnfFormula F = random_cnf(20, 60, 11);
        Row r{"brute_count_sat vars=20 clauses=60", 0, 0, false};
        double t0 = now_ms();
        const long long serial = brute_count_sat_serial(F);
        r.serial_ms = now_ms() - t0;
        t0 = now_ms();
        const long long parallel = brute_count_sat(F);
        r.parallel_ms = now_ms() - t0;
        r.match = serial == parallel;
        print(r);
    }

    { // permutation-sum permanent of a random 10x10 matrix
        std::mt19937_64 rng(3);
        Matrix A(9, std::vector<double>(9));
        for (auto& row : A)
            for (double& v : row) v = double(rng() >> 11) * 0x1.0p-53;
        Row r{"brute_permanent n=9", 0, 0, false};
        double t0 = now_ms();
        const double serial = brute_permanent_serial(A);
        r.serial_ms = now_ms() - t0;
        t0 = now_ms();
        const double parallel = brute_permanent(A);
        r.parallel_ms = now_ms() - t0;
        r.match = std::abs(serial - parallel) <= 1e-9 * std::max(1.0, std::abs(serial));
        print(r);
    }

    { // tensor payoff vector: parallel payoff_all against a sequential loop
        const GameSpec g = random_game(GameKind::Bankruptcy, 40, 5);
        Row r{"payoff_all bankruptcy players=40", 0, 0, true};
        std::vector<double> serial(std::size_t(g.players));
        double t0 = now_ms();
        for (int k = 1; k <= g.players; ++k) serial[std::size_t(k) - 1] = payoff(g, k);
        r.serial_ms = now_ms() - t0;
        t0 = now_ms();
        const PayoffVector pv = payoff_all(g);
        r.parallel_ms = now_ms() - t0;
        for (int k = 1; k <= g.players; ++k) {
            const double a = serial[std::size_t(k) - 1];
            const double b = pv.values[std::size_t(k) - 1];
            if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) r.match = false;
        }
        print(r);
    }

    return 0;
}
