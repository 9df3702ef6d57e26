#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ctt/op_count.hpp"

namespace ctt {

// A sparse core slice set where every slice is a 0/1 selection matrix.
// kind == RowSelect: slice i has at most one unit entry per row;
//   sel[i][row] is the column of that entry, or -1 for an all-zero row.
// kind == ColSelect: the mirrored property per column; sel[i][col] is the
//   row of the unit entry, or -1 for an all-zero column.
struct SparseCore {
    enum class Kind { RowSelect, ColSelect };
    Kind kind = Kind::RowSelect;
    // sel[slice][outer index] -> inner index or -1.
    std::vector<std::vector<int>> sel;
};

// Dense core stored row-major as values[(x * n + i) * r_right + y].
struct DenseCore {
    std::vector<double> values;
};

struct Core {
    int r_left = 1;
    int n = 1;
    int r_right = 1;
    std::variant<SparseCore, DenseCore> data;

    [[nodiscard]] bool is_sparse() const { return std::holds_alternative<SparseCore>(data); }
    [[nodiscard]] const SparseCore& sparse() const { return std::get<SparseCore>(data); }
    [[nodiscard]] const DenseCore& dense() const { return std::get<DenseCore>(data); }
    [[nodiscard]] DenseCore& dense() { return std::get<DenseCore>(data); }

    // Entry G(x, i, y) regardless of storage.
    [[nodiscard]] double at(int x, int i, int y) const;
    // Densified copy of this core's values.
    [[nodiscard]] std::vector<double> to_dense() const;
};

// Optional TT-Tucker factor: the tensor's external slice i of mode k is
// rows(i) x core-slices combination sum_j A(i, j) * G(:, j, :).
// Stored row-major, n_external rows by n_internal columns.
struct Factor {
    int n_external = 0;
    int n_internal = 0;
    std::vector<double> values;

    [[nodiscard]] double at(int i, int j) const { return values[std::size_t(i) * n_internal + j]; }
};

// Rank-one weight vectors, one per external mode.
using WeightVectors = std::vector<std::vector<double>>;

class TtTensor {
public:
    TtTensor() = default;
    TtTensor(std::vector<Core> cores, int middle);

    [[nodiscard]] int dims() const { return int(cores_.size()); }
    // Position (1-based) of the dense middle core the construction designated.
    [[nodiscard]] int middle() const { return middle_; }
    [[nodiscard]] const std::vector<Core>& cores() const { return cores_; }
    [[nodiscard]] const Core& core(int k) const { return cores_.at(std::size_t(k) - 1); } // 1-based
    [[nodiscard]] Core& core_mut(int k) { return cores_.at(std::size_t(k) - 1); }

    // External mode size of mode k (factor rows when a factor is attached).
    [[nodiscard]] int mode_size(int k) const;
    [[nodiscard]] std::vector<int> mode_sizes() const;
    // Bond ranks r_0..r_d (r_0 = r_d = 1).
    [[nodiscard]] std::vector<int> ranks() const;
    [[nodiscard]] std::uint64_t total_entries_capped(std::uint64_t cap) const;

    [[nodiscard]] bool has_factor(int k) const { return factors_.at(std::size_t(k) - 1).has_value(); }
    [[nodiscard]] const Factor& factor(int k) const { return *factors_.at(std::size_t(k) - 1); }
    void set_factor(int k, Factor f);

    // True when every core left of the last is RowSelect sparse and the
    // middle sits at the last position: the layout the weighted rounding
    // sweep accepts without re-orthogonalization.
    [[nodiscard]] bool left_chain_form() const;

private:
    std::vector<Core> cores_;
    std::vector<std::optional<Factor>> factors_;
    int middle_ = 1;
};

// --- Contractions -----------------------------------------------------------

// Value at one index tuple (0-based indices, external modes).
double eval_entry(const TtTensor& t, const std::vector<int>& idx);

// Full contraction against the rank-one tensor with vectors w, sweeping
// both ends toward the middle core. Returns the scalar and the count of
// arithmetic actually performed.
std::pair<double, OpCount> convolve_rank_one(const TtTensor& t, const WeightVectors& w);

// Sums all modes not present in `fixed` over their full slice range and
// pins the listed modes (1-based mode -> 0-based slice). Left-to-right
// sparse sweep. Num is double for float results or an exact integer type
// (the counting mode); exact mode requires integer-valued dense cores.
template <class Num>
Num contract_modes(const TtTensor& t, const std::map<int, int>& fixed = {});

// Entrywise product; ranks multiply elementwise.
TtTensor hadamard(const TtTensor& a, const TtTensor& b);

// Upper bound on additions (and multiplications) for convolve_rank_one
// with the middle at l: sum_{i<l} n_i r_{i-1} + sum_{i>l} n_i r_i
//                        + n_l (r_{l-1} r_l + min(r_{l-1}, r_l)).
std::uint64_t conv_op_bound(const TtTensor& t, int l);

// Contract every attached factor into its core, producing a factor-free
// tensor with the external mode sizes; entries unchanged.
TtTensor apply_factors(const TtTensor& t);

// Dense reconstruction (row-major over external indices); guarded by cap.
std::vector<double> to_full(const TtTensor& t, std::uint64_t cap = (1u << 22));

// --- implementation of the contraction template -----------------------------

namespace detail {

[[noreturn]] void throw_nonintegral(int position, double value);

template <class Num>
Num to_num(double v, int position) {
    if constexpr (std::is_same_v<Num, double>) {
        return v;
    } else {
        Num n = Num(static_cast<long long>(v >= 0 ? v + 0.5 : v - 0.5));
        if (double(static_cast<long long>(n)) != v) throw_nonintegral(position, v);
        return n;
    }
}

} // namespace detail

template <class Num>
Num contract_modes(const TtTensor& t, const std::map<int, int>& fixed) {
    for (const auto& [k, i] : fixed) {
        (void)i;
        if (k < 1 || k > t.dims())
            throw std::out_of_range("contract_modes: no mode " + std::to_string(k));
    }
    std::vector<Num> v{Num(1)};
    for (int k = 1; k <= t.dims(); ++k) {
        const Core& c = t.core(k);
        const int n_ext = t.mode_size(k);
        std::vector<double> w_int(std::size_t(c.n), 0.0);
        auto it = fixed.find(k);
        if (it != fixed.end()) {
            if (it->second < 0 || it->second >= n_ext)
                throw std::out_of_range("contract_modes: fixed slice out of range for mode " +
                                        std::to_string(k));
        }
        for (int i = 0; i < n_ext; ++i) {
            if (it != fixed.end() && it->second != i) continue;
            if (t.has_factor(k)) {
                for (int j = 0; j < c.n; ++j) w_int[std::size_t(j)] += t.factor(k).at(i, j);
            } else {
                w_int[std::size_t(i)] += 1.0;
            }
        }
        std::vector<Num> next(std::size_t(c.r_right), Num(0));
        if (c.is_sparse()) {
            const SparseCore& s = c.sparse();
            const bool rows = s.kind == SparseCore::Kind::RowSelect;
            for (int i = 0; i < c.n; ++i) {
                const double wi = w_int[std::size_t(i)];
                if (wi == 0.0) continue;
                const Num wn = detail::to_num<Num>(wi, k);
                if (rows) { // scatter: v'[sel[x]] += w * v[x]
                    for (int x = 0; x < c.r_left; ++x) {
                        const int y = s.sel[std::size_t(i)][std::size_t(x)];
                        if (y >= 0) next[std::size_t(y)] += wn * v[std::size_t(x)];
                    }
                } else { // gather: v'[y] += w * v[sel[y]]
                    for (int y = 0; y < c.r_right; ++y) {
                        const int x = s.sel[std::size_t(i)][std::size_t(y)];
                        if (x >= 0) next[std::size_t(y)] += wn * v[std::size_t(x)];
                    }
                }
            }
        } else {
            const DenseCore& dcore = c.dense();
            for (int i = 0; i < c.n; ++i) {
                const double wi = w_int[std::size_t(i)];
                if (wi == 0.0) continue;
                const Num wn = detail::to_num<Num>(wi, k);
                for (int x = 0; x < c.r_left; ++x) {
                    if (v[std::size_t(x)] == Num(0)) continue;
                    const std::size_t base = (std::size_t(x) * c.n + std::size_t(i)) * c.r_right;
                    for (int y = 0; y < c.r_right; ++y) {
                        const double g = dcore.values[base + std::size_t(y)];
                        if (g == 0.0) continue;
                        next[std::size_t(y)] += wn * detail::to_num<Num>(g, k) * v[std::size_t(x)];
                    }
                }
            }
        }
        v = std::move(next);
    }
    return v.at(0);
}

// ColSelect cores appear only right of the middle; a left-to-right sweep over
// them gathers instead of scatters. Specialized in the .cpp for double via the
// generic kernels; the template above covers the integer counting mode used by
// the catalog (whose counting tensors keep the middle at the last position).

} // namespace ctt
