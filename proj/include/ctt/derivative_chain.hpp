#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctt/tt_tensor.hpp"

namespace ctt {

// Image size cap per position; the CTT_MAX_STATES environment variable
// overrides the default so rank explosions fail fast instead of thrashing.
std::uint64_t state_cap();

class rank_explosion_error : public std::runtime_error {
public:
    rank_explosion_error(int position, std::uint64_t cap)
            : std::runtime_error("image at position " + std::to_string(position) +
                                 " exceeds the state cap of " + std::to_string(cap) +
                                 " (set CTT_MAX_STATES to raise it)"),
              position(position) {}
    int position;
};

// A chain of partial transition functions plus one value-producing middle
// function. Index k is 1-based; the middle sits at position `middle` (l).
// Side functions map (position, slice, state) to a state or nothing; the
// middle maps (slice, left state, right state) to a value or nothing, and
// an empty outcome pins the tensor entry to zero. States need operator==,
// operator< (the canonical ordering key), and std::hash via StateHash.
template <class S>
struct DerivativeSpec {
    int d = 1;
    int middle = 1;
    std::vector<int> mode_sizes;
    std::function<std::optional<S>(int k, int i, const S&)> side;
    std::function<std::optional<double>(int i, const S& left, const S& right)> mid;
    S left_seed{};
    S right_seed{};
    std::uint64_t max_states = 0; // 0: use state_cap()

    [[nodiscard]] std::uint64_t cap() const { return max_states ? max_states : state_cap(); }

    void validate() const {
        if (d < 1) throw std::invalid_argument("DerivativeSpec: d must be positive");
        if (middle < 1 || middle > d) throw std::invalid_argument("DerivativeSpec: middle out of range");
        if (int(mode_sizes.size()) != d)
            throw std::invalid_argument("DerivativeSpec: mode_sizes length != d");
        for (int n : mode_sizes)
            if (n < 1) throw std::invalid_argument("DerivativeSpec: empty mode");
        if (!mid) throw std::invalid_argument("DerivativeSpec: missing middle function");
        if (d > 1 && !side) throw std::invalid_argument("DerivativeSpec: missing side functions");
    }
};

// Reachable states per bond plus an optional grouping overlay. images[j]
// is R[j] (sorted by the canonical key); when grouped, groups[j] partitions
// images[j] and reps[j][g] stands in for group g during construction.
template <class S>
struct StateTable {
    enum class Lookup { Exact, Interval };

    std::vector<std::vector<S>> images; // R[0..d]
    bool grouped = false;
    Lookup lookup = Lookup::Exact;
    std::vector<std::vector<std::vector<S>>> groups; // per bond 0..d
    std::vector<std::vector<S>> reps;                // per bond 0..d

    [[nodiscard]] int rank(int j) const {
        return grouped ? int(reps[std::size_t(j)].size()) : int(images[std::size_t(j)].size());
    }

    // Effective states at bond j the cores are built over.
    [[nodiscard]] const std::vector<S>& states(int j) const {
        return grouped ? reps[std::size_t(j)] : images[std::size_t(j)];
    }

    // Index of the group/state a transition output lands in, or -1.
    [[nodiscard]] int locate(int j, const S& s) const {
        if (!grouped) {
            const auto& img = images[std::size_t(j)];
            auto it = std::lower_bound(img.begin(), img.end(), s);
            if (it != img.end() && *it == s) return int(it - img.begin());
            return -1;
        }
        if (lookup == Lookup::Exact) {
            const auto& gs = groups[std::size_t(j)];
            for (std::size_t g = 0; g < gs.size(); ++g)
                if (std::binary_search(gs[g].begin(), gs[g].end(), s)) return int(g);
            return -1;
        }
        if constexpr (std::is_same_v<S, double>) {
            return locate_interval(j, s);
        } else {
            throw std::logic_error("StateTable: interval lookup needs real-valued states");
        }
    }

    // Nearest epsilon-window for a real value (defined for S = double).
    [[nodiscard]] int locate_interval(int j, double s) const;
};

namespace detail {

template <class S>
void sorted_unique(std::vector<S>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace detail

// Part one of the construction: collect the reachable images R[0..d].
// The left sweep covers bonds 1..l-1 from the left seed; the right sweep
// walks bonds d-1 down to l, each R[j] being the image of f^(j+1) over
// R[j+1]. Both seeds occupy bonds 0 and d.
template <class S>
StateTable<S> enumerate_images(const DerivativeSpec<S>& spec) {
    spec.validate();
    const std::uint64_t cap = spec.cap();
    StateTable<S> table;
    table.images.assign(std::size_t(spec.d) + 1, {});
    table.images[0] = {spec.left_seed};
    table.images[std::size_t(spec.d)] = {spec.right_seed};
    for (int j = 1; j < spec.middle; ++j) {
        std::vector<S> next;
        for (const S& x : table.images[std::size_t(j) - 1])
            for (int i = 0; i < spec.mode_sizes[std::size_t(j) - 1]; ++i)
                if (auto y = spec.side(j, i, x)) next.push_back(*y);
        detail::sorted_unique(next);
        if (next.size() > cap) throw rank_explosion_error(j, cap);
        table.images[std::size_t(j)] = std::move(next);
    }
    for (int j = spec.d - 1; j >= spec.middle; --j) {
        std::vector<S> next;
        for (const S& x : table.images[std::size_t(j) + 1])
            for (int i = 0; i < spec.mode_sizes[std::size_t(j)]; ++i)
                if (auto y = spec.side(j + 1, i, x)) next.push_back(*y);
        detail::sorted_unique(next);
        if (next.size() > cap) throw rank_explosion_error(j, cap);
        table.images[std::size_t(j)] = std::move(next);
    }
    return table;
}

// Part two: emit the cores over the table's effective states. Cores left
// of the middle are RowSelect (row x of slice i points at f(i, x)), cores
// right of it are ColSelect, and the middle is dense with f^(l)(i, x, y)
// or zero where the function is undefined.
template <class S>
TtTensor build_tt(const DerivativeSpec<S>& spec, const StateTable<S>& table) {
    spec.validate();
    if (int(table.images.size()) != spec.d + 1)
        throw std::invalid_argument("build_tt: table does not match spec");
    std::vector<Core> cores;
    cores.reserve(std::size_t(spec.d));
    for (int k = 1; k <= spec.d; ++k) {
        Core c;
        c.n = spec.mode_sizes[std::size_t(k) - 1];
        c.r_left = table.rank(k - 1);
        c.r_right = table.rank(k);
        if (k == spec.middle) {
            DenseCore dcore;
            dcore.values.assign(std::size_t(c.r_left) * c.n * c.r_right, 0.0);
            const auto& left = table.states(k - 1);
            const auto& right = table.states(k);
            for (int x = 0; x < c.r_left; ++x)
                for (int i = 0; i < c.n; ++i)
                    for (int y = 0; y < c.r_right; ++y)
                        if (auto v = spec.mid(i, left[std::size_t(x)], right[std::size_t(y)]))
                            dcore.values[(std::size_t(x) * c.n + i) * c.r_right + y] = *v;
            c.data = std::move(dcore);
        } else if (k < spec.middle) {
            SparseCore s;
            s.kind = SparseCore::Kind::RowSelect;
            s.sel.assign(std::size_t(c.n), std::vector<int>(std::size_t(c.r_left), -1));
            const auto& from = table.states(k - 1);
            for (int i = 0; i < c.n; ++i)
                for (int x = 0; x < c.r_left; ++x)
                    if (auto y = spec.side(k, i, from[std::size_t(x)]))
                        s.sel[std::size_t(i)][std::size_t(x)] = table.locate(k, *y);
            c.data = std::move(s);
        } else {
            SparseCore s;
            s.kind = SparseCore::Kind::ColSelect;
            s.sel.assign(std::size_t(c.n), std::vector<int>(std::size_t(c.r_right), -1));
            const auto& from = table.states(k);
            for (int i = 0; i < c.n; ++i)
                for (int x = 0; x < c.r_right; ++x)
                    if (auto y = spec.side(k, i, from[std::size_t(x)]))
                        s.sel[std::size_t(i)][std::size_t(x)] = table.locate(k - 1, *y);
            c.data = std::move(s);
        }
        cores.push_back(std::move(c));
    }
    return TtTensor(std::move(cores), spec.middle);
}

// Convenience: enumerate then build.
template <class S>
TtTensor build_tt(const DerivativeSpec<S>& spec) {
    return build_tt(spec, enumerate_images(spec));
}

// Greedy epsilon-windows over the sorted real-valued images: each group
// spans values within eps of its smallest member; max_rank (if given)
// then merges adjacent groups as evenly as possible. Representatives are
// the min/max midpoint, or the arithmetic mean when mean_rep is set.
StateTable<double> cluster_states(const StateTable<double>& table, double eps,
                                  std::optional<int> max_rank = std::nullopt,
                                  bool mean_rep = false);

// Merge states the downstream functions cannot tell apart (requires the
// middle at the last position). Backward partition refinement: two states
// of R[k] join when every slice sends them to the same group of R[k+1]
// (or both to "undefined"); at the last bond the middle values themselves
// are compared. The rebuilt tensor is entrywise identical.
template <class S>
StateTable<S> merge_indistinguishable(const DerivativeSpec<S>& spec, const StateTable<S>& table) {
    spec.validate();
    if (spec.middle != spec.d)
        throw std::invalid_argument("merge_indistinguishable: supported only when the middle is last");
    if (table.grouped)
        throw std::invalid_argument("merge_indistinguishable: table already grouped");
    StateTable<S> out = table;
    out.grouped = true;
    out.lookup = StateTable<S>::Lookup::Exact;
    out.groups.assign(table.images.size(), {});
    out.reps.assign(table.images.size(), {});
    const int d = spec.d;
    // Bonds 0 and d hold the seeds; they stay singleton groups.
    out.groups[0] = {table.images[0]};
    out.reps[0] = {table.images[0][0]};
    out.groups[std::size_t(d)] = {table.images[std::size_t(d)]};
    out.reps[std::size_t(d)] = {table.images[std::size_t(d)][0]};
    // group_of maps a state's index in images[k+1] to its group id.
    std::vector<int> group_of_next; // valid for bond k+1 while processing bond k
    for (int k = d - 1; k >= 1; --k) {
        const auto& img = table.images[std::size_t(k)];
        // Signature of a state: per slice, the group (or value) it reaches.
        std::map<std::vector<double>, std::vector<int>> parts;
        std::vector<std::vector<double>> sigs(img.size());
        for (std::size_t x = 0; x < img.size(); ++x) {
            std::vector<double>& sig = sigs[x];
            if (k == d - 1) {
                // Middle values themselves; an undefined outcome acts as the
                // zero entry it produces, so it may merge with an explicit 0.
                const S& rs = table.images[std::size_t(d)][0];
                for (int i = 0; i < spec.mode_sizes[std::size_t(d) - 1]; ++i) {
                    auto v = spec.mid(i, img[x], rs);
                    sig.push_back(v ? *v : 0.0);
                }
            } else {
                const auto& next_img = table.images[std::size_t(k) + 1];
                for (int i = 0; i < spec.mode_sizes[std::size_t(k)]; ++i) {
                    auto y = spec.side(k + 1, i, img[x]);
                    if (!y) {
                        sig.push_back(-1.0);
                        continue;
                    }
                    auto it = std::lower_bound(next_img.begin(), next_img.end(), *y);
                    if (it == next_img.end() || !(*it == *y))
                        throw std::logic_error("merge_indistinguishable: transition leaves the image");
                    sig.push_back(double(group_of_next[std::size_t(it - next_img.begin())]));
                }
            }
            parts[sig].push_back(int(x));
        }
        // Deterministic group ids: by canonical order of each group's least state.
        std::vector<std::vector<int>> group_list;
        for (auto& [sig, members] : parts) group_list.push_back(members);
        std::sort(group_list.begin(), group_list.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::vector<int> group_of(img.size(), -1);
        auto& gs = out.groups[std::size_t(k)];
        auto& rs = out.reps[std::size_t(k)];
        for (std::size_t g = 0; g < group_list.size(); ++g) {
            std::vector<S> states;
            for (int x : group_list[g]) {
                states.push_back(img[std::size_t(x)]);
                group_of[std::size_t(x)] = int(g);
            }
            gs.push_back(states);       // members are in canonical order already
            rs.push_back(states.front());
        }
        group_of_next = std::move(group_of);
    }
    return out;
}

} // namespace ctt
