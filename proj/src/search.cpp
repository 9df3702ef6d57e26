#include "ctt/search.hpp"

#include <stdexcept>
#include <string>

namespace ctt {

namespace {

// Internal-slice weights of core k: one-hot (or the factor row) for a fixed
// external index, all-ones (or factor column sums) when the mode is summed.
std::vector<double> internal_weights(const TtTensor& t, int k, int ext_or_sum) {
    const Core& c = t.core(k);
    std::vector<double> w(std::size_t(c.n), 0.0);
    const int n_ext = t.mode_size(k);
    for (int i = 0; i < n_ext; ++i) {
        if (ext_or_sum >= 0 && i != ext_or_sum) continue;
        if (t.has_factor(k)) {
            for (int j = 0; j < c.n; ++j) w[std::size_t(j)] += t.factor(k).at(i, j);
        } else {
            w[std::size_t(i)] += 1.0;
        }
    }
    return w;
}

// out[x] = sum_i w[i] * sum_y G_k(x, i, y) * v[y]
std::vector<double> apply_right(const Core& c, const std::vector<double>& w,
                                const std::vector<double>& v) {
    std::vector<double> out(std::size_t(c.r_left), 0.0);
    if (c.is_sparse()) {
        const SparseCore& s = c.sparse();
        const bool rows = s.kind == SparseCore::Kind::RowSelect;
        for (int i = 0; i < c.n; ++i) {
            const double wi = w[std::size_t(i)];
            if (wi == 0.0) continue;
            if (rows) {
                for (int x = 0; x < c.r_left; ++x) {
                    const int y = s.sel[std::size_t(i)][std::size_t(x)];
                    if (y >= 0) out[std::size_t(x)] += wi * v[std::size_t(y)];
                }
            } else {
                for (int y = 0; y < c.r_right; ++y) {
                    const int x = s.sel[std::size_t(i)][std::size_t(y)];
                    if (x >= 0) out[std::size_t(x)] += wi * v[std::size_t(y)];
                }
            }
        }
    } else {
        const DenseCore& d = c.dense();
        for (int x = 0; x < c.r_left; ++x) {
            double acc = 0.0;
            for (int i = 0; i < c.n; ++i) {
                const double wi = w[std::size_t(i)];
                if (wi == 0.0) continue;
                const std::size_t base = (std::size_t(x) * c.n + std::size_t(i)) * c.r_right;
                for (int y = 0; y < c.r_right; ++y) acc += wi * d.values[base + std::size_t(y)] * v[std::size_t(y)];
            }
            out[std::size_t(x)] = acc;
        }
    }
    return out;
}

// out[y] = sum_i w[i] * sum_x v[x] * G_k(x, i, y)
std::vector<double> apply_left(const Core& c, const std::vector<double>& w,
                               const std::vector<double>& v) {
    std::vector<double> out(std::size_t(c.r_right), 0.0);
    if (c.is_sparse()) {
        const SparseCore& s = c.sparse();
        const bool rows = s.kind == SparseCore::Kind::RowSelect;
        for (int i = 0; i < c.n; ++i) {
            const double wi = w[std::size_t(i)];
            if (wi == 0.0) continue;
            if (rows) {
                for (int x = 0; x < c.r_left; ++x) {
                    const int y = s.sel[std::size_t(i)][std::size_t(x)];
                    if (y >= 0) out[std::size_t(y)] += wi * v[std::size_t(x)];
                }
            } else {
                for (int y = 0; y < c.r_right; ++y) {
                    const int x = s.sel[std::size_t(i)][std::size_t(y)];
                    if (x >= 0) out[std::size_t(y)] += wi * v[std::size_t(x)];
                }
            }
        }
    } else {
        const DenseCore& d = c.dense();
        for (int x = 0; x < c.r_left; ++x) {
            const double vx = v[std::size_t(x)];
            if (vx == 0.0) continue;
            for (int i = 0; i < c.n; ++i) {
                const double wi = w[std::size_t(i)];
                if (wi == 0.0) continue;
                const std::size_t base = (std::size_t(x) * c.n + std::size_t(i)) * c.r_right;
                for (int y = 0; y < c.r_right; ++y) out[std::size_t(y)] += wi * vx * d.values[base + std::size_t(y)];
            }
        }
    }
    return out;
}

std::optional<SearchResult> greedy_sweep(const TtTensor& t, bool allow_all_zero) {
    const int d = t.dims();
    if (d < 1) throw std::invalid_argument("search: empty tensor");

    // suffix[k] = product of slice-summed cores k..d applied to 1.
    std::vector<std::vector<double>> suffix(std::size_t(d) + 2);
    suffix[std::size_t(d) + 1] = {1.0};
    for (int k = d; k >= 1; --k)
        suffix[std::size_t(k)] =
            apply_right(t.core(k), internal_weights(t, k, -1), suffix[std::size_t(k) + 1]);

    std::vector<int> idx(std::size_t(d), 0);
    std::vector<double> prefix{1.0};
    for (int k = 1; k <= d; ++k) {
        const int n_ext = t.mode_size(k);
        int best_i = 0;
        double best_v = 0.0;
        std::vector<double> best_prefix;
        for (int i = 0; i < n_ext; ++i) {
            std::vector<double> cand = apply_left(t.core(k), internal_weights(t, k, i), prefix);
            double v = 0.0;
            for (int x = 0; x < int(cand.size()); ++x) v += cand[std::size_t(x)] * suffix[std::size_t(k) + 1][std::size_t(x)];
            if (i == 0 || v > best_v) {
                best_i = i;
                best_v = v;
                best_prefix = std::move(cand);
            }
        }
        if (best_v <= 0.0) {
            // A nonnegative tensor with a positive total keeps every chosen
            // branch positive, so this can only mean the whole tensor is zero
            // (first step) or the nonnegativity precondition does not hold.
            if (k == 1 && allow_all_zero) return std::nullopt;
            if (k == 1) return SearchResult{std::move(idx), 0.0};
            throw std::invalid_argument(
                "search: partial sums vanished mid-sweep; tensor has negative entries");
        }
        idx[std::size_t(k) - 1] = best_i;
        prefix = std::move(best_prefix);
    }

    SearchResult r;
    r.indices = std::move(idx);
    r.value = eval_entry(t, r.indices);
    if (r.value <= 0.0)
        throw std::invalid_argument(
            "search: selected entry is not positive (value " + std::to_string(r.value) +
            "); tensor violates the nonnegativity precondition");
    return r;
}

} // namespace

std::optional<SearchResult> find_nonzero(const TtTensor& t) { return greedy_sweep(t, true); }

SearchResult quasi_argmax(const TtTensor& t) {
    auto r = greedy_sweep(t, false);
    return *r; // greedy_sweep with allow_all_zero=false always returns or throws
}

} // namespace ctt
