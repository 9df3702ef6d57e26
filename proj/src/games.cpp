#include "ctt/games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "ctt/derivative_chain.hpp"

namespace ctt {

void GameSpec::validate() const {
    if (players < 1) throw std::invalid_argument("GameSpec: need at least one player");
    switch (kind) {
    case GameKind::Shoes:
        if (players < 3 || players % 2 == 0)
            throw std::invalid_argument("GameSpec: shoes needs an odd player count 2L+1, L >= 1");
        break;
    case GameKind::Airport:
        if (int(costs.size()) != players)
            throw std::invalid_argument("GameSpec: one landing cost per player required");
        for (double c : costs)
            if (!(c >= 0.0)) throw std::invalid_argument("GameSpec: negative landing cost");
        break;
    case GameKind::Majority:
        if (int(weights_maj.size()) != players)
            throw std::invalid_argument("GameSpec: one voting weight per player required");
        for (long long w : weights_maj)
            if (w < 1) throw std::invalid_argument("GameSpec: voting weights must be >= 1");
        break;
    case GameKind::Bankruptcy:
        if (int(claims.size()) != players)
            throw std::invalid_argument("GameSpec: one claim per player required");
        for (double c : claims)
            if (!(c >= 0.0)) throw std::invalid_argument("GameSpec: negative claim");
        if (!(estate >= 0.0)) throw std::invalid_argument("GameSpec: negative estate");
        break;
    case GameKind::OneSeller:
        if (players < 2)
            throw std::invalid_argument("GameSpec: one-seller needs the seller and a buyer");
        if (int(prices.size()) != players - 1)
            throw std::invalid_argument("GameSpec: one price per buyer required");
        for (double p : prices)
            if (!(p >= 0.0)) throw std::invalid_argument("GameSpec: negative price");
        break;
    }
}

double semivalue_weight(Weights w, int players, int coalition_size) {
    if (coalition_size < 0 || coalition_size >= players) return 0.0;
    if (w == Weights::Banzhaf) return std::ldexp(1.0, 1 - players);
    double p = 1.0 / players; // s! (n-s-1)! / n! via the ratio recurrence
    for (int t = 1; t <= coalition_size; ++t) p *= double(t) / double(players - t);
    return p;
}

namespace {

WeightVectors ones_weights(const TtTensor& t) {
    WeightVectors w(std::size_t(t.dims()));
    for (int k = 1; k <= t.dims(); ++k)
        w[std::size_t(k) - 1].assign(std::size_t(t.mode_size(k)), 1.0);
    return w;
}

double ones_contract(const TtTensor& t) { return convolve_rank_one(t, ones_weights(t)).first; }

// Mode `pos` pinned to external index `slice` (the mode keeps size 1).
// A factor row is folded into a dense single-slice core; factor-free cores
// keep their storage kind.
TtTensor fix_mode(const TtTensor& t, int pos, int slice) {
    std::vector<Core> cores;
    cores.reserve(std::size_t(t.dims()));
    for (int k = 1; k <= t.dims(); ++k) {
        const Core& c = t.core(k);
        if (k != pos) {
            cores.push_back(c);
            continue;
        }
        if (slice < 0 || slice >= t.mode_size(k))
            throw std::out_of_range("fix_mode: slice out of range");
        Core nc;
        nc.r_left = c.r_left;
        nc.n = 1;
        nc.r_right = c.r_right;
        if (t.has_factor(k)) {
            DenseCore dc;
            dc.values.assign(std::size_t(c.r_left) * c.r_right, 0.0);
            const Factor& f = t.factor(k);
            for (int j = 0; j < c.n; ++j) {
                const double wj = f.at(slice, j);
                if (wj == 0.0) continue;
                for (int x = 0; x < c.r_left; ++x)
                    for (int y = 0; y < c.r_right; ++y)
                        dc.values[std::size_t(x) * c.r_right + std::size_t(y)] += wj * c.at(x, j, y);
            }
            nc.data = std::move(dc);
        } else if (c.is_sparse()) {
            SparseCore s;
            s.kind = c.sparse().kind;
            s.sel = {c.sparse().sel[std::size_t(slice)]};
            nc.data = std::move(s);
        } else {
            DenseCore dc;
            dc.values.assign(std::size_t(c.r_left) * c.r_right, 0.0);
            for (int x = 0; x < c.r_left; ++x)
                for (int y = 0; y < c.r_right; ++y)
                    dc.values[std::size_t(x) * c.r_right + std::size_t(y)] = c.at(x, slice, y);
            nc.data = std::move(dc);
        }
        cores.push_back(std::move(nc));
    }
    TtTensor out(std::move(cores), t.middle());
    for (int k = 1; k <= t.dims(); ++k)
        if (k != pos && t.has_factor(k)) out.set_factor(k, t.factor(k));
    return out;
}

// Mode `pos` contracted with (external slice 1 minus external slice 0):
// the member-minus-nonmember difference in one pass.
TtTensor fix_mode_difference(const TtTensor& t, int pos) {
    if (t.mode_size(pos) != 2)
        throw std::invalid_argument("fix_mode_difference: mode must have two external slices");
    std::vector<Core> cores;
    cores.reserve(std::size_t(t.dims()));
    for (int k = 1; k <= t.dims(); ++k) {
        const Core& c = t.core(k);
        if (k != pos) {
            cores.push_back(c);
            continue;
        }
        Core nc;
        nc.r_left = c.r_left;
        nc.n = 1;
        nc.r_right = c.r_right;
        DenseCore dc;
        dc.values.assign(std::size_t(c.r_left) * c.r_right, 0.0);
        auto add = [&](int j, double wj) {
            if (wj == 0.0) return;
            for (int x = 0; x < c.r_left; ++x)
                for (int y = 0; y < c.r_right; ++y)
                    dc.values[std::size_t(x) * c.r_right + std::size_t(y)] += wj * c.at(x, j, y);
        };
        if (t.has_factor(k)) {
            const Factor& f = t.factor(k);
            for (int j = 0; j < c.n; ++j) add(j, f.at(1, j) - f.at(0, j));
        } else {
            add(1, 1.0);
            add(0, -1.0);
        }
        nc.data = std::move(dc);
        cores.push_back(std::move(nc));
    }
    TtTensor out(std::move(cores), t.middle());
    for (int k = 1; k <= t.dims(); ++k)
        if (k != pos && t.has_factor(k)) out.set_factor(k, t.factor(k));
    return out;
}

// --- shoes -------------------------------------------------------------------

// Member counts flow toward the middle position L+1, where min(left side,
// right side) meets the coalition-size weight. `fix` pins player k's
// membership; k never counts toward |S|, which ranges over the others.
TtTensor shoes_tensor(const GameSpec& g, int k, int fix) {
    const int d = g.players;
    const int l = (d - 1) / 2 + 1;
    DerivativeSpec<int> spec;
    spec.d = d;
    spec.middle = l;
    spec.mode_sizes.assign(std::size_t(d), 2);
    spec.mode_sizes[std::size_t(k) - 1] = 1;
    auto member = [k, fix](int j, int i) { return j == k ? fix : i; };
    spec.side = [member](int j, int i, const int& x) -> std::optional<int> {
        return x + member(j, i);
    };
    const Weights w = g.weights;
    const int players = g.players;
    const int shift = fix;
    spec.mid = [member, l, w, players, shift](int i, const int& left, const int& right)
            -> std::optional<double> {
        const int m = member(l, i);
        const double nu = double(std::min(left, right + m));
        if (nu == 0.0) return std::nullopt;
        return nu * semivalue_weight(w, players, left + right + m - shift);
    };
    spec.left_seed = 0;
    spec.right_seed = 0;
    return build_tt(spec);
}

// --- airport / one-seller ------------------------------------------------------

// "Highest member pays" value tensor over positions sorted by descending
// cost. Internal slices: 0 skip, 1 join after someone, 2 join first (the
// slice the cost factor scales). With `seller_gate` a leading two-slice
// mode zeroes every coalition missing position 1.
TtTensor max_cost_tensor(const std::vector<double>& costs_desc, bool seller_gate) {
    const int nb = int(costs_desc.size());
    if (nb < 1) throw std::invalid_argument("max_cost_tensor: no cost-bearing positions");
    const int d = nb + (seller_gate ? 1 : 0);
    const int off = seller_gate ? 1 : 0;
    std::vector<int> r(std::size_t(d) + 1, 2);
    r[0] = 1;
    r[std::size_t(d)] = 1;
    if (seller_gate && d >= 1) r[1] = 1;

    std::vector<Core> cores;
    cores.reserve(std::size_t(d));
    for (int k = 1; k <= d; ++k) {
        Core c;
        c.r_left = r[std::size_t(k) - 1];
        c.r_right = r[std::size_t(k)];
        if (seller_gate && k == 1) {
            c.n = 2;
            SparseCore s;
            s.kind = SparseCore::Kind::RowSelect;
            s.sel = {{-1}, {0}};
            c.data = std::move(s);
        } else if (k < d) {
            c.n = 3;
            SparseCore s;
            s.kind = SparseCore::Kind::RowSelect;
            s.sel.assign(3, std::vector<int>(std::size_t(c.r_left), -1));
            for (int x = 0; x < c.r_left; ++x) s.sel[0][std::size_t(x)] = x;
            if (c.r_left == 2) s.sel[1][1] = 1;
            s.sel[2][0] = 1;
            c.data = std::move(s);
        } else {
            c.n = 3;
            DenseCore dc;
            dc.values.assign(std::size_t(c.r_left) * 3, 0.0);
            dc.values[2] = 1.0; // no member yet: only "join first" pays
            if (c.r_left == 2) {
                dc.values[3] = 1.0; // someone already pays: skip keeps the value
                dc.values[4] = 1.0; // ... and so does joining late
            }
            c.data = std::move(dc);
        }
        cores.push_back(std::move(c));
    }
    TtTensor t(std::move(cores), d);
    for (int k = off + 1; k <= d; ++k) {
        Factor f;
        f.n_external = 2;
        f.n_internal = 3;
        const double ck = costs_desc[std::size_t(k - off) - 1];
        f.values = {1.0, 0.0, 0.0, 0.0, 1.0, ck};
        t.set_factor(k, std::move(f));
    }
    return t;
}

// Coalition-size weight tensor p(|S|) over d membership modes.
TtTensor size_weight_tensor(int d, Weights w, int players) {
    DerivativeSpec<int> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    spec.side = [](int, int i, const int& x) -> std::optional<int> { return x + i; };
    spec.mid = [w, players](int i, const int& left, const int&) -> std::optional<double> {
        return semivalue_weight(w, players, left + i);
    };
    spec.left_seed = 0;
    spec.right_seed = 0;
    return build_tt(spec);
}

// Descending cost order shared by the value and weight chains. Returns the
// per-position costs and the chain position (1-based) of each player.
struct CostOrder {
    std::vector<double> costs_desc;
    std::vector<int> pos_of_player;
};

CostOrder order_by_cost(const std::vector<double>& costs, int first_player, int players) {
    CostOrder o;
    std::vector<int> idx(costs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&costs](int a, int b) { return costs[std::size_t(a)] > costs[std::size_t(b)]; });
    o.pos_of_player.assign(std::size_t(players) + 1, 0);
    const int lead = first_player - 1; // chain positions before the cost modes
    if (lead == 1) o.pos_of_player[1] = 1;
    for (int j = 0; j < int(idx.size()); ++j) {
        o.costs_desc.push_back(costs[std::size_t(idx[std::size_t(j)])]);
        o.pos_of_player[std::size_t(idx[std::size_t(j)]) + std::size_t(first_player)] = j + 1 + lead;
    }
    return o;
}

struct CostGame {
    TtTensor nu;     // value chain, cost factors attached
    TtTensor weight; // p(|S|) chain over the same positions
    int pos_k = 0;   // chain position of the payoff target
};

CostGame build_cost_game(const GameSpec& g, int k) {
    const bool seller = g.kind == GameKind::OneSeller;
    const CostOrder o = order_by_cost(seller ? g.prices : g.costs, seller ? 2 : 1, g.players);
    CostGame cg;
    cg.nu = max_cost_tensor(o.costs_desc, seller);
    cg.weight = size_weight_tensor(g.players, g.weights, g.players);
    cg.pos_k = o.pos_of_player[std::size_t(k)];
    return cg;
}

// --- weighted majority -----------------------------------------------------------

std::vector<int> other_players(int players, int k) {
    std::vector<int> o;
    for (int j = 1; j <= players; ++j)
        if (j != k) o.push_back(j);
    return o;
}

// p(|S|) nu(S [+ k]) over the other players; sums clamp at the threshold.
TtTensor majority_weighted_tensor(const GameSpec& g, int k, bool with_k) {
    const int d = g.players - 1;
    const std::vector<int> others = other_players(g.players, k);
    const long long M = g.threshold;
    using State = std::pair<long long, int>;
    DerivativeSpec<State> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    const auto& wts = g.weights_maj;
    spec.side = [&wts, &others, M](int j, int i, const State& x) -> std::optional<State> {
        const long long wj = wts[std::size_t(others[std::size_t(j) - 1]) - 1];
        return State{std::min(x.first + i * wj, M), x.second + i};
    };
    const long long wk = g.weights_maj[std::size_t(k) - 1];
    const Weights w = g.weights;
    const int players = g.players;
    spec.mid = [&wts, &others, M, wk, w, players, with_k, d](int i, const State& left, const State&)
            -> std::optional<double> {
        const long long wd = wts[std::size_t(others[std::size_t(d) - 1]) - 1];
        const long long sum = left.first + i * wd + (with_k ? wk : 0);
        if (sum < M) return std::nullopt;
        return semivalue_weight(w, players, left.second + i);
    };
    spec.left_seed = State{0, 0};
    spec.right_seed = State{0, 0};
    return build_tt(spec);
}

// The one-pass marginal tensor: states that already passed the threshold or
// can no longer be swung by player k die on the spot.
double majority_marginal_payoff(const GameSpec& g, int k) {
    const int d = g.players - 1;
    const std::vector<int> others = other_players(g.players, k);
    const long long M = g.threshold;
    using State = std::pair<long long, int>;
    DerivativeSpec<State> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    const auto& wts = g.weights_maj;
    spec.side = [&wts, &others, M](int j, int i, const State& x) -> std::optional<State> {
        const long long wj = wts[std::size_t(others[std::size_t(j) - 1]) - 1];
        const long long sum = x.first + i * wj;
        if (sum > M) return std::nullopt; // the marginal is already settled at zero
        return State{sum, x.second + i};
    };
    const long long wk = g.weights_maj[std::size_t(k) - 1];
    const Weights w = g.weights;
    const int players = g.players;
    spec.mid = [&wts, &others, M, wk, w, players, d](int i, const State& left, const State&)
            -> std::optional<double> {
        const long long wd = wts[std::size_t(others[std::size_t(d) - 1]) - 1];
        const long long sum = left.first + i * wd;
        if (sum < M && sum + wk >= M) return semivalue_weight(w, players, left.second + i);
        return std::nullopt;
    };
    spec.left_seed = State{0, 0};
    spec.right_seed = State{0, 0};
    return ones_contract(build_tt(spec));
}

// --- bankruptcy ------------------------------------------------------------------

// p(|S|) nu(S [+ k]); the state carries what the estate still covers after
// the absent others' claims, clamped at zero.
TtTensor bankruptcy_weighted_tensor(const GameSpec& g, int k, bool with_k) {
    const int d = g.players - 1;
    const std::vector<int> others = other_players(g.players, k);
    using State = std::pair<double, int>;
    DerivativeSpec<State> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    const auto& claims = g.claims;
    spec.side = [&claims, &others](int j, int i, const State& x) -> std::optional<State> {
        if (i == 1) return State{x.first, x.second + 1};
        const double cj = claims[std::size_t(others[std::size_t(j) - 1]) - 1];
        return State{std::max(0.0, x.first - cj), x.second};
    };
    const double ck = g.claims[std::size_t(k) - 1];
    const Weights w = g.weights;
    const int players = g.players;
    spec.mid = [&claims, &others, ck, w, players, with_k, d](int i, const State& left, const State&)
            -> std::optional<double> {
        const double cd = claims[std::size_t(others[std::size_t(d) - 1]) - 1];
        const double rem = i == 1 ? left.first : std::max(0.0, left.first - cd);
        const double nu = with_k ? rem : std::max(0.0, rem - ck);
        if (nu == 0.0) return std::nullopt;
        return nu * semivalue_weight(w, players, left.second + i);
    };
    spec.left_seed = State{g.estate, 0};
    spec.right_seed = State{0.0, 0};
    return build_tt(spec);
}

double bankruptcy_marginal_payoff(const GameSpec& g, int k) {
    const int d = g.players - 1;
    const std::vector<int> others = other_players(g.players, k);
    using State = std::pair<double, int>;
    DerivativeSpec<State> spec;
    spec.d = d;
    spec.middle = d;
    spec.mode_sizes.assign(std::size_t(d), 2);
    const auto& claims = g.claims;
    spec.side = [&claims, &others](int j, int i, const State& x) -> std::optional<State> {
        if (i == 1) return State{x.first, x.second + 1};
        const double cj = claims[std::size_t(others[std::size_t(j) - 1]) - 1];
        const double rem = x.first - cj;
        if (rem <= 0.0) return std::nullopt; // both values vanished; marginal is zero
        return State{rem, x.second};
    };
    const double ck = g.claims[std::size_t(k) - 1];
    const Weights w = g.weights;
    const int players = g.players;
    spec.mid = [&claims, &others, ck, w, players, d](int i, const State& left, const State&)
            -> std::optional<double> {
        const double cd = claims[std::size_t(others[std::size_t(d) - 1]) - 1];
        const double rem = i == 1 ? left.first : left.first - cd;
        if (rem <= 0.0) return std::nullopt;
        const double marginal = rem - std::max(0.0, rem - ck);
        if (marginal == 0.0) return std::nullopt;
        return marginal * semivalue_weight(w, players, left.second + i);
    };
    spec.left_seed = State{g.estate, 0};
    spec.right_seed = State{0.0, 0};
    return ones_contract(build_tt(spec));
}

} // namespace

std::pair<TtTensor, TtTensor> build_game_tensors(const GameSpec& g, int k) {
    g.validate();
    if (k < 1 || k > g.players) throw std::invalid_argument("build_game_tensors: no such player");
    switch (g.kind) {
    case GameKind::Shoes:
        return {shoes_tensor(g, k, 1), shoes_tensor(g, k, 0)};
    case GameKind::Airport:
    case GameKind::OneSeller: {
        const CostGame cg = build_cost_game(g, k);
        const TtTensor weight_fixed = fix_mode(cg.weight, cg.pos_k, 0);
        return {hadamard(weight_fixed, fix_mode(cg.nu, cg.pos_k, 1)),
                hadamard(weight_fixed, fix_mode(cg.nu, cg.pos_k, 0))};
    }
    case GameKind::Majority:
        if (g.players < 2)
            throw std::invalid_argument("build_game_tensors: a one-player game has no chain");
        return {majority_weighted_tensor(g, k, true), majority_weighted_tensor(g, k, false)};
    case GameKind::Bankruptcy:
        if (g.players < 2)
            throw std::invalid_argument("build_game_tensors: a one-player game has no chain");
        return {bankruptcy_weighted_tensor(g, k, true), bankruptcy_weighted_tensor(g, k, false)};
    }
    throw std::logic_error("build_game_tensors: unknown game kind");
}

double payoff(const GameSpec& g, int k) {
    g.validate();
    if (k < 1 || k > g.players) throw std::invalid_argument("payoff: no such player");
    switch (g.kind) {
    case GameKind::Shoes: {
        auto [with_k, without_k] = build_game_tensors(g, k);
        return ones_contract(with_k) - ones_contract(without_k);
    }
    case GameKind::Airport:
    case GameKind::OneSeller: {
        const CostGame cg = build_cost_game(g, k);
        return ones_contract(
                hadamard(fix_mode(cg.weight, cg.pos_k, 0), fix_mode_difference(cg.nu, cg.pos_k)));
    }
    case GameKind::Majority:
        if (g.players == 1)
            return g.weights_maj[0] >= g.threshold ? semivalue_weight(g.weights, 1, 0) : 0.0;
        return majority_marginal_payoff(g, k);
    case GameKind::Bankruptcy:
        if (g.players == 1)
            return (g.estate - std::max(0.0, g.estate - g.claims[0])) *
                   semivalue_weight(g.weights, 1, 0);
        return bankruptcy_marginal_payoff(g, k);
    }
    throw std::logic_error("payoff: unknown game kind");
}

PayoffVector payoff_all(const GameSpec& g) {
    g.validate();
    PayoffVector out;
    out.values.assign(std::size_t(g.players), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int k = 1; k <= g.players; ++k) out.values[std::size_t(k) - 1] = payoff(g, k);
    return out;
}

double one_seller_iterative(const std::vector<double>& prices_desc, int k, int players, Weights w,
                            std::uint64_t* steps) {
    if (players < 2 || int(prices_desc.size()) != players - 1)
        throw std::invalid_argument("one_seller_iterative: need one price per buyer");
    for (std::size_t i = 0; i + 1 < prices_desc.size(); ++i)
        if (prices_desc[i] < prices_desc[i + 1])
            throw std::invalid_argument("one_seller_iterative: prices must be sorted descending");
    if (k <= 1 || k >= players)
        throw std::invalid_argument(
                "one_seller_iterative: supported only for buyers strictly inside the price "
                "order (1 < k < player count)");

    const double ak = prices_desc[std::size_t(k) - 2];
    // Strictly cheaper-positioned buyers, cheapest first; coalitions holding
    // anyone priced at or above a_k contribute nothing.
    std::vector<double> asc(prices_desc.begin() + (k - 1), prices_desc.end());
    std::reverse(asc.begin(), asc.end());
    const int m = int(asc.size());

    // count[s]: s-subsets of the processed buyers; best[s]: their top prices
    // summed. Each new price q is the maximum of every subset it joins.
    std::vector<double> count(std::size_t(m) + 1, 0.0), best(std::size_t(m) + 1, 0.0);
    count[0] = 1.0;
    std::uint64_t inner = 0;
    for (int t = 0; t < m; ++t) {
        const double q = asc[std::size_t(t)];
        for (int s = t + 1; s >= 1; --s) {
            best[std::size_t(s)] += q * count[std::size_t(s) - 1];
            count[std::size_t(s)] += count[std::size_t(s) - 1];
            ++inner;
        }
    }
    double pi = 0.0;
    for (int s = 0; s <= m; ++s)
        pi += semivalue_weight(w, players, 1 + s) *
              (count[std::size_t(s)] * ak - best[std::size_t(s)]);
    if (steps) *steps = inner;
    return pi;
}

double one_seller_iterative(const GameSpec& g, int k, std::uint64_t* steps) {
    g.validate();
    if (g.kind != GameKind::OneSeller)
        throw std::invalid_argument("one_seller_iterative: not a one-seller game");
    if (k < 2 || k > g.players)
        throw std::invalid_argument("one_seller_iterative: supported for buyers only");
    std::vector<int> idx(g.prices.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&g](int a, int b) {
        return g.prices[std::size_t(a)] > g.prices[std::size_t(b)];
    });
    std::vector<double> sorted;
    int pos = 0;
    for (int j = 0; j < int(idx.size()); ++j) {
        sorted.push_back(g.prices[std::size_t(idx[std::size_t(j)])]);
        if (idx[std::size_t(j)] == k - 2) pos = j + 2; // buyer rank in the sorted numbering
    }
    return one_seller_iterative(sorted, pos, g.players, g.weights, steps);
}

GameSpec random_game(GameKind kind, int players, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // Explicit reductions keep the draw identical across standard libraries.
    auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
    auto one_to_ten = [&rng]() { return (long long)(rng() % 10) + 1; };

    GameSpec g;
    g.kind = kind;
    g.players = players;
    switch (kind) {
    case GameKind::Shoes:
        break;
    case GameKind::Airport:
        for (int i = 0; i < players; ++i) g.costs.push_back(unit());
        break;
    case GameKind::Majority: {
        long long total = 0;
        for (int i = 0; i < players; ++i) {
            g.weights_maj.push_back(one_to_ten());
            total += g.weights_maj.back();
        }
        g.threshold = total / 2 + 1;
        break;
    }
    case GameKind::Bankruptcy: {
        double total = 0.0;
        for (int i = 0; i < players; ++i) {
            g.claims.push_back(double(one_to_ten()));
            total += g.claims.back();
        }
        g.estate = total / 2.0;
        break;
    }
    case GameKind::OneSeller:
        for (int i = 0; i < players - 1; ++i) g.prices.push_back(unit());
        std::sort(g.prices.begin(), g.prices.end(), std::greater<>());
        break;
    }
    g.validate();
    return g;
}

} // namespace ctt
