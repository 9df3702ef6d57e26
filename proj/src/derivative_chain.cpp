#include "ctt/derivative_chain.hpp"

#include <cmath>
#include <cstdlib>

namespace ctt {

std::uint64_t state_cap() {
    // Read the environment on every call (it is consulted once per build)
    // so the override also works when set after program start.
    if (const char* env = std::getenv("CTT_MAX_STATES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return std::uint64_t(v);
    }
    return std::uint64_t(1) << 22;
}

template <>
int StateTable<double>::locate_interval(int j, double s) const {
    const auto& gs = groups[std::size_t(j)];
    if (gs.empty()) return -1;
    // Groups are sorted windows; pick the one containing s, else the nearest.
    int lo = 0, hi = int(gs.size()) - 1;
    while (lo < hi) {
        const int midpoint = (lo + hi + 1) / 2;
        if (gs[std::size_t(midpoint)].front() <= s)
            lo = midpoint;
        else
            hi = midpoint - 1;
    }
    // lo is the last group starting at or below s (or group 0).
    const auto dist = [&](int g) {
        const double a = gs[std::size_t(g)].front();
        const double b = gs[std::size_t(g)].back();
        if (s < a) return a - s;
        if (s > b) return s - b;
        return 0.0;
    };
    int best = lo;
    if (lo + 1 < int(gs.size()) && dist(lo + 1) < dist(best)) best = lo + 1;
    return best;
}

StateTable<double> cluster_states(const StateTable<double>& table, double eps,
                                  std::optional<int> max_rank, bool mean_rep) {
    if (eps < 0) throw std::invalid_argument("cluster_states: eps must be nonnegative");
    if (max_rank && *max_rank < 1) throw std::invalid_argument("cluster_states: max_rank must be positive");
    StateTable<double> out = table;
    out.grouped = true;
    out.lookup = StateTable<double>::Lookup::Interval;
    out.groups.assign(table.images.size(), {});
    out.reps.assign(table.images.size(), {});
    for (std::size_t j = 0; j < table.images.size(); ++j) {
        const auto& img = table.images[j]; // already sorted ascending
        std::vector<std::vector<double>> windows;
        for (double v : img) {
            if (windows.empty() || v > windows.back().front() + eps)
                windows.push_back({v});
            else
                windows.back().push_back(v);
        }
        // Seeds at the edge bonds stay as they are (single state anyway).
        if (max_rank && int(windows.size()) > *max_rank) {
            // Merge adjacent windows into max_rank runs of near-equal length.
            const int g = int(windows.size());
            const int m = *max_rank;
            std::vector<std::vector<double>> merged;
            int taken = 0;
            for (int run = 0; run < m; ++run) {
                const int len = (g - taken + (m - run) - 1) / (m - run); // ceil of remaining / runs left
                std::vector<double> w;
                for (int i = 0; i < len; ++i) {
                    auto& src = windows[std::size_t(taken + i)];
                    w.insert(w.end(), src.begin(), src.end());
                }
                taken += len;
                merged.push_back(std::move(w));
            }
            windows = std::move(merged);
        }
        std::vector<double> reps;
        for (const auto& w : windows) {
            if (mean_rep) {
                double sum = 0;
                for (double v : w) sum += v;
                reps.push_back(sum / double(w.size()));
            } else {
                reps.push_back((w.front() + w.back()) / 2.0);
            }
        }
        out.groups[j] = std::move(windows);
        out.reps[j] = std::move(reps);
    }
    return out;
}

} // namespace ctt
