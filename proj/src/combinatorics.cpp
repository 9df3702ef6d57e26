#include "ctt/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ctt/derivative_chain.hpp"
#include "ctt/tt_round.hpp"

namespace ctt {

using rational = boost::multiprecision::cpp_rational;

// --- validation --------------------------------------------------------------

void CnfFormula::validate() const {
    if (vars < 0) throw std::invalid_argument("CnfFormula: negative variable count");
    for (const auto& clause : clauses)
        for (int lit : clause) {
            if (lit == 0) throw std::invalid_argument("CnfFormula: zero literal");
            if (std::abs(lit) > vars)
                throw std::invalid_argument("CnfFormula: literal " + std::to_string(lit) +
                                            " exceeds the variable count");
        }
}

void KnapsackInstance::validate() const {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("KnapsackInstance: no items");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("KnapsackInstance: negative item value");
    if (weights.size() != capacities.size())
        throw std::invalid_argument("KnapsackInstance: one capacity per constraint row required");
    for (const auto& row : weights) {
        if (row.size() != n)
            throw std::invalid_argument("KnapsackInstance: weight row length != item count");
        for (double w : row)
            if (!(w >= 0.0)) throw std::invalid_argument("KnapsackInstance: negative weight");
    }
    if (!bounds.empty()) {
        if (bounds.size() != n)
            throw std::invalid_argument("KnapsackInstance: bounds length != item count");
        for (int b : bounds)
            if (b < 0) throw std::invalid_argument("KnapsackInstance: negative bound");
    }
}

// --- step indicator ----------------------------------------------------------

TtTensor qtt_step_build(int d, long long t) {
    if (d < 1 || d > 62) throw std::invalid_argument("qtt_step_build: d must be in [1, 62]");
    if (t < 0 || t >= (1LL << d))
        throw std::invalid_argument("qtt_step_build: t must be in [0, 2^d)");
    std::vector<int> bits(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) bits[std::size_t(k) - 1] = int((t >> (d - k)) & 1);

    // State 0: prefix equal to t's prefix so far; state 1: already greater.
    auto step = [bits](int k, int i, int x) -> std::optional<int> {
        if (x == 1) return 1;
        const int b = bits[std::size_t(k) - 1];
        if (i > b) return 1;
        if (i == b) return 0;
        return std::nullopt;
    };
    DerivativeSpec<int> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    spec.side = [step](int k, int i, const int& x) { return step(k, i, x); };
    spec.mid = [step, d](int i, const int& left, const int&) -> std::optional<double> {
        auto s = step(d, i, left);
        if (!s || *s != 1) return std::nullopt;
        return 1.0;
    };
    spec.left_seed = 0;
    spec.right_seed = 0;
    return build_tt(spec);
}

// --- sums of one-hot selections ----------------------------------------------

TtTensor linear_sum_build(const std::vector<std::vector<double>>& a,
                          const std::function<double(double)>& P) {
    const int d = int(a.size());
    if (d < 1) throw std::invalid_argument("linear_sum_build: no modes");
    for (const auto& row : a)
        if (row.empty()) throw std::invalid_argument("linear_sum_build: empty mode");
    const int middle = (d + 1) / 2;

    if (!P) {
        // Running-sum cores: [1, s] times [[1, a],[0, 1]] blocks.
        std::vector<Core> cores;
        cores.reserve(std::size_t(d));
        for (int k = 1; k <= d; ++k) {
            const auto& row = a[std::size_t(k) - 1];
            const int n = int(row.size());
            Core c;
            c.n = n;
            c.r_left = (d == 1 || k == 1) ? 1 : 2;
            c.r_right = (d == 1 || k == d) ? 1 : 2;
            DenseCore dc;
            dc.values.assign(std::size_t(c.r_left) * n * c.r_right, 0.0);
            auto put = [&](int x, int i, int y, double v) {
                dc.values[(std::size_t(x) * n + std::size_t(i)) * c.r_right + std::size_t(y)] = v;
            };
            for (int i = 0; i < n; ++i) {
                if (d == 1) {
                    put(0, i, 0, row[std::size_t(i)]);
                } else if (k == 1) {
                    put(0, i, 0, 1.0);
                    put(0, i, 1, row[std::size_t(i)]);
                } else if (k == d) {
                    put(0, i, 0, row[std::size_t(i)]);
                    put(1, i, 0, 1.0);
                } else {
                    put(0, i, 0, 1.0);
                    put(0, i, 1, row[std::size_t(i)]);
                    put(1, i, 1, 1.0);
                }
            }
            c.data = std::move(dc);
            cores.push_back(std::move(c));
        }
        return TtTensor(std::move(cores), middle);
    }

    DerivativeSpec<double> spec;
    spec.d = d;
    spec.middle = middle;
    for (const auto& row : a) spec.mode_sizes.push_back(int(row.size()));
    spec.side = [&a](int k, int i, const double& x) -> std::optional<double> {
        return x + a[std::size_t(k) - 1][std::size_t(i)];
    };
    spec.mid = [&a, P, middle](int i, const double& left, const double& right)
            -> std::optional<double> {
        return P(left + right + a[std::size_t(middle) - 1][std::size_t(i)]);
    };
    spec.left_seed = 0.0;
    spec.right_seed = 0.0;
    return build_tt(spec);
}

// --- permanent ---------------------------------------------------------------

PermanentResult permanent(const Matrix& A, int cap) {
    const int N = int(A.size());
    if (N < 1) throw std::invalid_argument("permanent: empty matrix");
    if (cap > 63) throw std::invalid_argument("permanent: cap exceeds the bitmask width");
    if (N > cap)
        throw std::invalid_argument("permanent: N = " + std::to_string(N) +
                                    " exceeds the cap of " + std::to_string(cap));
    for (const auto& row : A)
        if (int(row.size()) != N) throw std::invalid_argument("permanent: matrix not square");

    DerivativeSpec<std::uint64_t> spec;
    spec.d = N;
    spec.middle = N;
    spec.mode_sizes.assign(std::size_t(N), N);
    spec.side = [](int, int i, const std::uint64_t& x) -> std::optional<std::uint64_t> {
        const std::uint64_t bit = std::uint64_t(1) << i;
        if (x & bit) return std::nullopt;
        return x | bit;
    };
    spec.mid = [](int i, const std::uint64_t& left, const std::uint64_t&)
            -> std::optional<double> {
        if (left & (std::uint64_t(1) << i)) return std::nullopt;
        return 1.0;
    };
    spec.left_seed = 0;
    spec.right_seed = 0;
    TtTensor t = build_tt(spec);

    WeightVectors w(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) {
        w[std::size_t(k) - 1].resize(std::size_t(N));
        for (int i = 0; i < N; ++i) w[std::size_t(k) - 1][std::size_t(i)] = A[std::size_t(i)][std::size_t(k) - 1];
    }
    auto [value, ops] = convolve_rank_one(t, w);

    PermanentResult r;
    r.value = value;
    r.ranks = t.ranks();
    r.ops = ops;
    return r;
}

double ryser_reference(const Matrix& A) {
    const int n = int(A.size());
    if (n < 1) throw std::invalid_argument("ryser_reference: empty matrix");
    if (n > 30) throw std::invalid_argument("ryser_reference: matrix too large to enumerate");
    for (const auto& row : A)
        if (int(row.size()) != n) throw std::invalid_argument("ryser_reference: matrix not square");

    std::vector<double> sums(std::size_t(n), 0.0);
    std::uint64_t subset = 0;
    double total = 0.0;
    for (std::uint64_t g = 1; g < (std::uint64_t(1) << n); ++g) {
        const int j = std::countr_zero(g);
        const std::uint64_t bit = std::uint64_t(1) << j;
        const double delta = (subset & bit) ? -1.0 : 1.0;
        subset ^= bit;
        for (int i = 0; i < n; ++i) sums[std::size_t(i)] += delta * A[std::size_t(i)][std::size_t(j)];
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= sums[std::size_t(i)];
        total += ((n - std::popcount(subset)) % 2 == 0) ? prod : -prod;
    }
    return total;
}

// --- knapsack ----------------------------------------------------------------

namespace {

// Feasibility indicator of one constraint row: running exact-rational weight
// sums, pruned as soon as they pass the capacity.
TtTensor knapsack_indicator(const std::vector<double>& row, double capacity,
                            const std::vector<int>& bounds) {
    const int d = int(row.size());
    DerivativeSpec<rational> spec;
    spec.d = d;
    spec.middle = d;
    for (int b : bounds) spec.mode_sizes.push_back(b + 1);
    const rational cap(capacity);
    spec.side = [&row, cap](int k, int i, const rational& x) -> std::optional<rational> {
        rational nx = x + rational(row[std::size_t(k) - 1]) * i;
        if (nx > cap) return std::nullopt;
        return nx;
    };
    spec.mid = [&row, cap, d](int i, const rational& left, const rational&)
            -> std::optional<double> {
        rational nx = left + rational(row[std::size_t(d) - 1]) * i;
        if (nx > cap) return std::nullopt;
        return 1.0;
    };
    spec.left_seed = rational(0);
    spec.right_seed = rational(0);
    return build_tt(spec);
}

} // namespace

std::optional<KnapsackResult> knapsack_solve(const KnapsackInstance& inst, double eps) {
    inst.validate();
    const int n = int(inst.values.size());
    const std::vector<int> bounds =
            inst.bounds.empty() ? std::vector<int>(std::size_t(n), 1) : inst.bounds;

    std::vector<std::vector<double>> a(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= bounds[std::size_t(k)]; ++i)
            a[std::size_t(k)].push_back(i * inst.values[std::size_t(k)]);
    TtTensor product = linear_sum_build(a);

    for (std::size_t j = 0; j < inst.weights.size(); ++j) {
        product = hadamard(product,
                           knapsack_indicator(inst.weights[j], inst.capacities[j], bounds));
        if (eps > 0.0) product = tt_round(product, eps);
    }

    const SearchResult pick = quasi_argmax(product);

    // The tensor is advisory; accept only what the raw data confirms.
    for (std::size_t j = 0; j < inst.weights.size(); ++j) {
        double load = 0.0;
        for (int k = 0; k < n; ++k)
            load += inst.weights[j][std::size_t(k)] * pick.indices[std::size_t(k)];
        if (load > inst.capacities[j]) return std::nullopt;
    }
    KnapsackResult r;
    r.pick = pick;
    r.total_value = 0.0;
    for (int k = 0; k < n; ++k)
        r.total_value += inst.values[std::size_t(k)] * pick.indices[std::size_t(k)];
    r.ranks = product.ranks();
    return r;
}

// --- equal-sum partition -------------------------------------------------------

std::optional<SearchResult> partition_solve(const std::vector<long long>& S, int n_parts) {
    const int d = int(S.size());
    if (d < 1) throw std::invalid_argument("partition_solve: empty set");
    if (n_parts < 1) throw std::invalid_argument("partition_solve: need at least one part");
    long long total = 0;
    for (long long s : S) {
        if (s <= 0) throw std::invalid_argument("partition_solve: elements must be positive");
        total += s;
    }
    if (total % n_parts != 0) return std::nullopt;
    const long long target = total / n_parts;

    auto indicator = [&](int part) {
        DerivativeSpec<long long> spec;
        spec.d = d;
        spec.middle = d;
        spec.mode_sizes.assign(std::size_t(d), n_parts);
        spec.side = [&S, part, target](int k, int i, const long long& x)
                -> std::optional<long long> {
            if (i != part) return x;
            const long long nx = x + S[std::size_t(k) - 1];
            if (nx > target) return std::nullopt;
            return nx;
        };
        spec.mid = [&S, part, target, d](int i, const long long& left, const long long&)
                -> std::optional<double> {
            const long long nx = left + (i == part ? S[std::size_t(d) - 1] : 0);
            return nx == target ? std::optional<double>(1.0) : std::nullopt;
        };
        spec.left_seed = 0;
        spec.right_seed = 0;
        return build_tt(spec);
    };

    TtTensor product = indicator(0);
    for (int part = 1; part < n_parts; ++part)
        product = tt_round(hadamard(product, indicator(part)), 0.0);

    auto found = find_nonzero(product);
    if (!found) return std::nullopt;
    if (found->value < 0.5) return std::nullopt; // rounding dust on a zero tensor

    std::vector<long long> sums(std::size_t(n_parts), 0);
    for (int k = 0; k < d; ++k) sums[std::size_t(found->indices[std::size_t(k)])] += S[std::size_t(k)];
    for (long long s : sums)
        if (s != target)
            throw std::logic_error("partition_solve: tensor produced an unbalanced assignment");
    return found;
}

// --- queens ------------------------------------------------------------------

QueensResult queens_tensor(int N, int cap) {
    if (N < 1) throw std::invalid_argument("queens_tensor: N must be positive");
    if (cap > 20) throw std::invalid_argument("queens_tensor: cap exceeds the packed state width");
    if (N > cap)
        throw std::invalid_argument("queens_tensor: N = " + std::to_string(N) +
                                    " exceeds the cap of " + std::to_string(cap));
    const std::uint64_t mask = (std::uint64_t(1) << N) - 1;

    // Low N bits: rows taken; middle N: rows cut by rising diagonals at the
    // next column; high N: rows cut by falling diagonals.
    auto step = [N, mask](int i, std::uint64_t x) -> std::optional<std::uint64_t> {
        const std::uint64_t rows = x & mask;
        const std::uint64_t up = (x >> N) & mask;
        const std::uint64_t down = (x >> (2 * N)) & mask;
        const std::uint64_t bit = std::uint64_t(1) << i;
        if ((rows | up | down) & bit) return std::nullopt;
        const std::uint64_t nrows = rows | bit;
        const std::uint64_t nup = ((up | bit) << 1) & mask;
        const std::uint64_t ndown = (down | bit) >> 1;
        return nrows | (nup << N) | (ndown << (2 * N));
    };

    DerivativeSpec<std::uint64_t> spec;
    spec.d = N;
    spec.middle = N;
    spec.mode_sizes.assign(std::size_t(N), N);
    spec.side = [step](int, int i, const std::uint64_t& x) { return step(i, x); };
    spec.mid = [step](int i, const std::uint64_t& left, const std::uint64_t&)
            -> std::optional<double> {
        if (!step(i, left)) return std::nullopt;
        return 1.0;
    };
    spec.left_seed = 0;
    spec.right_seed = 0;

    QueensResult r;
    r.tensor = build_tt(spec);
    r.count = contract_modes<bigint>(r.tensor);
    r.ranks = r.tensor.ranks();
    return r;
}

// --- SAT ---------------------------------------------------------------------

namespace {

struct ClauseChain {
    std::map<int, bool> wants; // variable -> required value
    int last = 0;
};

TtTensor clause_tensor(const ClauseChain& c, int d) {
    auto step = [&c](int k, int i, int x) -> std::optional<int> {
        int nx = x;
        auto it = c.wants.find(k);
        if (it != c.wants.end() && it->second == (i == 1)) nx = 1;
        if (k == c.last && nx == 0) return std::nullopt;
        return nx;
    };
    DerivativeSpec<int> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    spec.side = [step](int k, int i, const int& x) { return step(k, i, x); };
    spec.mid = [step, d](int i, const int& left, const int&) -> std::optional<double> {
        auto s = step(d, i, left);
        if (!s || *s != 1) return std::nullopt;
        return 1.0;
    };
    spec.left_seed = 0;
    spec.right_seed = 0;
    return build_tt(spec);
}

// The satisfied-tuples indicator, clauses folded in by ascending last
// variable with a lossless round after each product. Empty optional means
// the formula contains an empty clause and is trivially false.
std::optional<TtTensor> sat_product(const CnfFormula& F) {
    std::vector<ClauseChain> chains;
    chains.reserve(F.clauses.size());
    for (const auto& clause : F.clauses) {
        if (clause.empty()) return std::nullopt;
        ClauseChain c;
        for (int lit : clause) {
            const int var = std::abs(lit);
            const bool want = lit > 0;
            auto it = c.wants.find(var);
            // A clause holding both polarities of one variable is always true.
            if (it != c.wants.end() && it->second != want) {
                c.wants.clear();
                break;
            }
            c.wants[var] = want;
            c.last = std::max(c.last, var);
        }
        if (c.wants.empty()) continue; // tautological clause
        chains.push_back(std::move(c));
    }
    std::sort(chains.begin(), chains.end(),
              [](const ClauseChain& a, const ClauseChain& b) { return a.last < b.last; });

    DerivativeSpec<int> all;
    all.d = F.vars;
    all.middle = F.vars;
    all.mode_sizes.assign(std::size_t(F.vars), 2);
    all.side = [](int, int, const int& x) -> std::optional<int> { return x; };
    all.mid = [](int, const int&, const int&) -> std::optional<double> { return 1.0; };
    TtTensor product = build_tt(all); // all-ones: no clauses constrain anything yet

    for (const ClauseChain& c : chains)
        product = tt_round(hadamard(product, clause_tensor(c, F.vars)), 0.0);
    return product;
}

bool assignment_satisfies(const CnfFormula& F, const std::vector<bool>& x) {
    for (const auto& clause : F.clauses) {
        bool ok = false;
        for (int lit : clause)
            if (x[std::size_t(std::abs(lit)) - 1] == (lit > 0)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

} // namespace

bigint sat_count(const CnfFormula& F) {
    F.validate();
    if (F.vars == 0) {
        for (const auto& clause : F.clauses)
            if (clause.empty()) return 0;
        return 1;
    }
    auto product = sat_product(F);
    if (!product) return 0;
    if (F.clauses.empty()) return bigint(1) << F.vars;

    const double v = contract_modes<double>(*product);
    const double nearest = std::round(v);
    if (std::abs(v - nearest) > 1e-6 * std::max(1.0, std::abs(nearest)))
        throw std::runtime_error("sat_count: contraction drifted from an integer (" +
                                 std::to_string(v) + ")");
    return bigint(static_cast<long long>(nearest));
}

std::optional<std::vector<bool>> sat_model(const CnfFormula& F) {
    F.validate();
    if (F.vars == 0) {
        for (const auto& clause : F.clauses)
            if (clause.empty()) return std::nullopt;
        return std::vector<bool>{};
    }
    auto product = sat_product(F);
    if (!product) return std::nullopt;
    auto found = find_nonzero(*product);
    if (!found || found->value < 0.5) return std::nullopt;
    std::vector<bool> x(std::size_t(F.vars));
    for (int k = 0; k < F.vars; ++k) x[std::size_t(k)] = found->indices[std::size_t(k)] == 1;
    if (!assignment_satisfies(F, x))
        throw std::logic_error("sat_model: tensor produced a falsifying assignment");
    return x;
}

// --- alternating sequences -----------------------------------------------------

TtTensor sawtooth_build(const std::vector<std::vector<double>>& c) {
    const int d = int(c.size());
    if (d < 1) throw std::invalid_argument("sawtooth_build: no modes");
    for (const auto& row : c)
        if (row.empty()) throw std::invalid_argument("sawtooth_build: empty mode");

    using State = std::pair<double, int>; // (last value, direction of last step)
    auto step = [&c](int k, int i, const State& x) -> std::optional<State> {
        const double v = c[std::size_t(k) - 1][std::size_t(i)];
        if (k == 1) return State{v, 0};
        const double delta = v - x.first;
        if (delta == 0.0) return std::nullopt;
        const int dir = delta > 0.0 ? 1 : -1;
        if (dir == x.second) return std::nullopt; // same direction twice
        return State{v, dir};
    };
    DerivativeSpec<State> spec;
    spec.d = d;
    spec.middle = d;
    for (const auto& row : c) spec.mode_sizes.push_back(int(row.size()));
    spec.side = [step](int k, int i, const State& x) { return step(k, i, x); };
    spec.mid = [step, d](int i, const State& left, const State&) -> std::optional<double> {
        if (!step(d, i, left)) return std::nullopt;
        return 1.0;
    };
    spec.left_seed = State{0.0, 0};
    spec.right_seed = State{0.0, 0};
    return build_tt(spec);
}

// --- subset sums by residue -----------------------------------------------------

bigint subsets_divisible_count(int n, int m) {
    if (n < 1) throw std::invalid_argument("subsets_divisible_count: n must be positive");
    if (m < 2) throw std::invalid_argument("subsets_divisible_count: modulus must be at least 2");

    DerivativeSpec<int> spec;
    spec.d = n;
    spec.middle = n;
    spec.mode_sizes.assign(std::size_t(n), 2);
    spec.side = [m](int k, int i, const int& x) -> std::optional<int> {
        return int((x + std::int64_t(i) * k) % m);
    };
    spec.mid = [m, n](int i, const int& left, const int&) -> std::optional<double> {
        return (left + std::int64_t(i) * n) % m == 0 ? std::optional<double>(1.0) : std::nullopt;
    };
    spec.left_seed = 0;
    spec.right_seed = 0;
    const bigint count = contract_modes<bigint>(build_tt(spec));

    if (m == 5 && n % 5 == 0) {
        const bigint analytic = subsets_divisible_analytic(n);
        if (analytic != count)
            throw std::logic_error("subsets_divisible_count: closed form disagrees with the "
                                   "contraction (" + analytic.str() + " vs " + count.str() + ")");
    }
    return count;
}

bigint subsets_divisible_analytic(int n) {
    if (n < 0 || n % 5 != 0)
        throw std::invalid_argument("subsets_divisible_analytic: defined for multiples of 5");
    const unsigned q = unsigned(n / 5);
    const bigint numerator = boost::multiprecision::pow(bigint(32), q) +
                             4 * boost::multiprecision::pow(bigint(2), q);
    if (numerator % 5 != 0)
        throw std::logic_error("subsets_divisible_analytic: numerator not divisible by 5");
    return numerator / 5;
}

} // namespace ctt
