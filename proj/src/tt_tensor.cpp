#include "ctt/tt_tensor.hpp"

#include <algorithm>
#include <cmath>

namespace ctt {

double Core::at(int x, int i, int y) const {
    if (is_sparse()) {
        const SparseCore& s = sparse();
        if (s.kind == SparseCore::Kind::RowSelect)
            return s.sel[std::size_t(i)][std::size_t(x)] == y ? 1.0 : 0.0;
        return s.sel[std::size_t(i)][std::size_t(y)] == x ? 1.0 : 0.0;
    }
    return dense().values[(std::size_t(x) * n + i) * r_right + y];
}

std::vector<double> Core::to_dense() const {
    std::vector<double> out(std::size_t(r_left) * n * r_right, 0.0);
    if (is_sparse()) {
        const SparseCore& s = sparse();
        for (int i = 0; i < n; ++i) {
            const auto& row = s.sel[std::size_t(i)];
            for (std::size_t o = 0; o < row.size(); ++o) {
                if (row[o] < 0) continue;
                const int x = s.kind == SparseCore::Kind::RowSelect ? int(o) : row[o];
                const int y = s.kind == SparseCore::Kind::RowSelect ? row[o] : int(o);
                out[(std::size_t(x) * n + i) * r_right + y] = 1.0;
            }
        }
    } else {
        out = dense().values;
    }
    return out;
}

TtTensor::TtTensor(std::vector<Core> cores, int middle)
        : cores_(std::move(cores)), middle_(middle) {
    if (cores_.empty()) throw std::invalid_argument("TtTensor: no cores");
    if (middle_ < 1 || middle_ > dims()) throw std::invalid_argument("TtTensor: middle out of range");
    if (cores_.front().r_left != 1 || cores_.back().r_right != 1)
        throw std::invalid_argument("TtTensor: edge ranks must be 1");
    for (int k = 0; k + 1 < dims(); ++k)
        if (cores_[std::size_t(k)].r_right != cores_[std::size_t(k) + 1].r_left)
            throw std::invalid_argument("TtTensor: rank mismatch between cores " +
                                        std::to_string(k + 1) + " and " + std::to_string(k + 2));
    factors_.assign(cores_.size(), std::nullopt);
}

int TtTensor::mode_size(int k) const {
    return has_factor(k) ? factor(k).n_external : core(k).n;
}

std::vector<int> TtTensor::mode_sizes() const {
    std::vector<int> out;
    for (int k = 1; k <= dims(); ++k) out.push_back(mode_size(k));
    return out;
}

std::vector<int> TtTensor::ranks() const {
    std::vector<int> out{1};
    for (const Core& c : cores_) out.push_back(c.r_right);
    return out;
}

std::uint64_t TtTensor::total_entries_capped(std::uint64_t cap) const {
    std::uint64_t total = 1;
    for (int k = 1; k <= dims(); ++k) {
        total *= std::uint64_t(mode_size(k));
        if (total > cap) return cap + 1;
    }
    return total;
}

void TtTensor::set_factor(int k, Factor f) {
    const Core& c = core(k);
    if (f.n_internal != c.n)
        throw std::invalid_argument("set_factor: factor columns must match core slices");
    if (int(f.values.size()) != f.n_external * f.n_internal)
        throw std::invalid_argument("set_factor: factor data size mismatch");
    factors_[std::size_t(k) - 1] = std::move(f);
}

bool TtTensor::left_chain_form() const {
    if (middle_ != dims()) return false;
    for (int k = 1; k < dims(); ++k) {
        const Core& c = core(k);
        if (!c.is_sparse() || c.sparse().kind != SparseCore::Kind::RowSelect) return false;
    }
    return !core(dims()).is_sparse();
}

namespace detail {

void throw_nonintegral(int position, double value) {
    throw std::invalid_argument("exact contraction: non-integer value " + std::to_string(value) +
                                " in core " + std::to_string(position));
}

namespace {

inline void count_mul(OpCount& ops, double a, double b) {
    if (a != 1.0 && a != 0.0 && b != 1.0 && b != 0.0) ++ops.multiplications;
}

inline void count_add(OpCount& ops, double acc, double term) {
    if (acc != 0.0 && term != 0.0) ++ops.additions;
}

// Effective internal slice weights of mode k given external weights.
std::vector<double> internal_weights(const TtTensor& t, int k, const std::vector<double>& w_ext) {
    const Core& c = t.core(k);
    if (!t.has_factor(k)) return w_ext;
    const Factor& f = t.factor(k);
    std::vector<double> w(std::size_t(c.n), 0.0);
    for (int i = 0; i < f.n_external; ++i)
        for (int j = 0; j < f.n_internal; ++j) w[std::size_t(j)] += w_ext[std::size_t(i)] * f.at(i, j);
    return w;
}

// v' = sum_i w[i] (v x G(:,i,:)): row vector through core, left to right.
std::vector<double> step_left(const Core& c, const std::vector<double>& v,
                              const std::vector<double>& w, OpCount& ops) {
    std::vector<double> next(std::size_t(c.r_right), 0.0);
    if (c.is_sparse()) {
        const SparseCore& s = c.sparse();
        const bool rows = s.kind == SparseCore::Kind::RowSelect;
        for (int i = 0; i < c.n; ++i) {
            const double wi = w[std::size_t(i)];
            if (wi == 0.0) continue;
            const int span = rows ? c.r_left : c.r_right;
            for (int o = 0; o < span; ++o) {
                const int m = s.sel[std::size_t(i)][std::size_t(o)];
                if (m < 0) continue;
                const int x = rows ? o : m;
                const int y = rows ? m : o;
                const double vx = v[std::size_t(x)];
                if (vx == 0.0) continue;
                count_mul(ops, wi, vx);
                const double term = wi * vx;
                count_add(ops, next[std::size_t(y)], term);
                next[std::size_t(y)] += term;
            }
        }
    } else {
        const DenseCore& dcore = c.dense();
        for (int i = 0; i < c.n; ++i) {
            const double wi = w[std::size_t(i)];
            if (wi == 0.0) continue;
            for (int x = 0; x < c.r_left; ++x) {
                const double vx = v[std::size_t(x)];
                if (vx == 0.0) continue;
                count_mul(ops, wi, vx);
                const double t0 = wi * vx;
                const std::size_t base = (std::size_t(x) * c.n + std::size_t(i)) * c.r_right;
                for (int y = 0; y < c.r_right; ++y) {
                    const double g = dcore.values[base + std::size_t(y)];
                    if (g == 0.0) continue;
                    count_mul(ops, t0, g);
                    const double term = t0 * g;
                    count_add(ops, next[std::size_t(y)], term);
                    next[std::size_t(y)] += term;
                }
            }
        }
    }
    return next;
}

// v' = sum_i w[i] (G(:,i,:) x v): column vector through core, right to left.
std::vector<double> step_right(const Core& c, const std::vector<double>& v,
                               const std::vector<double>& w, OpCount& ops) {
    std::vector<double> next(std::size_t(c.r_left), 0.0);
    if (c.is_sparse()) {
        const SparseCore& s = c.sparse();
        const bool rows = s.kind == SparseCore::Kind::RowSelect;
        for (int i = 0; i < c.n; ++i) {
            const double wi = w[std::size_t(i)];
            if (wi == 0.0) continue;
            const int span = rows ? c.r_left : c.r_right;
            for (int o = 0; o < span; ++o) {
                const int m = s.sel[std::size_t(i)][std::size_t(o)];
                if (m < 0) continue;
                const int x = rows ? o : m;
                const int y = rows ? m : o;
                const double vy = v[std::size_t(y)];
                if (vy == 0.0) continue;
                count_mul(ops, wi, vy);
                const double term = wi * vy;
                count_add(ops, next[std::size_t(x)], term);
                next[std::size_t(x)] += term;
            }
        }
    } else {
        const DenseCore& dcore = c.dense();
        for (int i = 0; i < c.n; ++i) {
            const double wi = w[std::size_t(i)];
            if (wi == 0.0) continue;
            for (int x = 0; x < c.r_left; ++x) {
                const std::size_t base = (std::size_t(x) * c.n + std::size_t(i)) * c.r_right;
                double acc = 0.0;
                for (int y = 0; y < c.r_right; ++y) {
                    const double g = dcore.values[base + std::size_t(y)];
                    const double vy = v[std::size_t(y)];
                    if (g == 0.0 || vy == 0.0) continue;
                    count_mul(ops, g, vy);
                    const double term = g * vy;
                    count_add(ops, acc, term);
                    acc += term;
                }
                if (acc == 0.0) continue;
                count_mul(ops, wi, acc);
                const double term = wi * acc;
                count_add(ops, next[std::size_t(x)], term);
                next[std::size_t(x)] += term;
            }
        }
    }
    return next;
}

// sum_i w[i] * vL^T G(:,i,:) vR, contracting the cheaper rank side last.
double middle_combine(const Core& c, const std::vector<double>& vL, const std::vector<double>& vR,
                      const std::vector<double>& w, OpCount& ops) {
    double acc = 0.0;
    const bool left_through = c.r_right <= c.r_left; // t = vL^T G_i, then dot(t, vR)
    for (int i = 0; i < c.n; ++i) {
        const double wi = w[std::size_t(i)];
        if (wi == 0.0) continue;
        double q = 0.0;
        if (left_through) {
            std::vector<double> tvec(std::size_t(c.r_right), 0.0);
            for (int x = 0; x < c.r_left; ++x) {
                const double vx = vL[std::size_t(x)];
                if (vx == 0.0) continue;
                for (int y = 0; y < c.r_right; ++y) {
                    const double g = c.at(x, i, y);
                    if (g == 0.0) continue;
                    count_mul(ops, vx, g);
                    const double term = vx * g;
                    count_add(ops, tvec[std::size_t(y)], term);
                    tvec[std::size_t(y)] += term;
                }
            }
            for (int y = 0; y < c.r_right; ++y) {
                const double vy = vR[std::size_t(y)];
                if (tvec[std::size_t(y)] == 0.0 || vy == 0.0) continue;
                count_mul(ops, tvec[std::size_t(y)], vy);
                const double term = tvec[std::size_t(y)] * vy;
                count_add(ops, q, term);
                q += term;
            }
        } else {
            std::vector<double> tvec(std::size_t(c.r_left), 0.0);
            for (int y = 0; y < c.r_right; ++y) {
                const double vy = vR[std::size_t(y)];
                if (vy == 0.0) continue;
                for (int x = 0; x < c.r_left; ++x) {
                    const double g = c.at(x, i, y);
                    if (g == 0.0) continue;
                    count_mul(ops, g, vy);
                    const double term = g * vy;
                    count_add(ops, tvec[std::size_t(x)], term);
                    tvec[std::size_t(x)] += term;
                }
            }
            for (int x = 0; x < c.r_left; ++x) {
                const double vx = vL[std::size_t(x)];
                if (tvec[std::size_t(x)] == 0.0 || vx == 0.0) continue;
                count_mul(ops, tvec[std::size_t(x)], vx);
                const double term = tvec[std::size_t(x)] * vx;
                count_add(ops, q, term);
                q += term;
            }
        }
        if (q == 0.0) continue;
        count_mul(ops, wi, q);
        const double term = wi * q;
        count_add(ops, acc, term);
        acc += term;
    }
    return acc;
}

} // namespace

} // namespace detail

double eval_entry(const TtTensor& t, const std::vector<int>& idx) {
    if (int(idx.size()) != t.dims())
        throw std::invalid_argument("eval_entry: index tuple length must equal dimension");
    std::map<int, int> fixed;
    for (int k = 1; k <= t.dims(); ++k) fixed[k] = idx[std::size_t(k) - 1];
    return contract_modes<double>(t, fixed);
}

std::pair<double, OpCount> convolve_rank_one(const TtTensor& t, const WeightVectors& w) {
    if (int(w.size()) != t.dims())
        throw std::invalid_argument("convolve_rank_one: need one weight vector per mode");
    for (int k = 1; k <= t.dims(); ++k)
        if (int(w[std::size_t(k) - 1].size()) != t.mode_size(k))
            throw std::invalid_argument("convolve_rank_one: weight length mismatch at mode " +
                                        std::to_string(k));
    OpCount ops;
    const int l = t.middle();
    std::vector<double> vL{1.0};
    for (int k = 1; k < l; ++k)
        vL = detail::step_left(t.core(k), vL,
                               detail::internal_weights(t, k, w[std::size_t(k) - 1]), ops);
    std::vector<double> vR{1.0};
    for (int k = t.dims(); k > l; --k)
        vR = detail::step_right(t.core(k), vR,
                                detail::internal_weights(t, k, w[std::size_t(k) - 1]), ops);
    const double value = detail::middle_combine(
        t.core(l), vL, vR, detail::internal_weights(t, l, w[std::size_t(l) - 1]), ops);
    return {value, ops};
}

TtTensor hadamard(const TtTensor& a, const TtTensor& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("hadamard: dimension mismatch");
    for (int k = 1; k <= a.dims(); ++k)
        if (a.mode_size(k) != b.mode_size(k))
            throw std::invalid_argument("hadamard: mode size mismatch at mode " + std::to_string(k));
    bool any_factor = false;
    for (int k = 1; k <= a.dims(); ++k) any_factor |= a.has_factor(k) || b.has_factor(k);
    if (any_factor) return hadamard(apply_factors(a), apply_factors(b));

    std::vector<Core> cores;
    for (int k = 1; k <= a.dims(); ++k) {
        const Core& ca = a.core(k);
        const Core& cb = b.core(k);
        Core c;
        c.n = ca.n;
        c.r_left = ca.r_left * cb.r_left;
        c.r_right = ca.r_right * cb.r_right;
        const bool both_row = ca.is_sparse() && cb.is_sparse() &&
                              ca.sparse().kind == SparseCore::Kind::RowSelect &&
                              cb.sparse().kind == SparseCore::Kind::RowSelect;
        const bool both_col = ca.is_sparse() && cb.is_sparse() &&
                              ca.sparse().kind == SparseCore::Kind::ColSelect &&
                              cb.sparse().kind == SparseCore::Kind::ColSelect;
        if (both_row || both_col) {
            SparseCore s;
            s.kind = both_row ? SparseCore::Kind::RowSelect : SparseCore::Kind::ColSelect;
            const int span_a = both_row ? ca.r_left : ca.r_right;
            const int span_b = both_row ? cb.r_left : cb.r_right;
            const int to_b = both_row ? cb.r_right : cb.r_left;
            s.sel.assign(std::size_t(c.n), std::vector<int>(std::size_t(span_a) * span_b, -1));
            for (int i = 0; i < c.n; ++i)
                for (int oa = 0; oa < span_a; ++oa) {
                    const int ma = ca.sparse().sel[std::size_t(i)][std::size_t(oa)];
                    if (ma < 0) continue;
                    for (int ob = 0; ob < span_b; ++ob) {
                        const int mb = cb.sparse().sel[std::size_t(i)][std::size_t(ob)];
                        if (mb < 0) continue;
                        s.sel[std::size_t(i)][std::size_t(oa) * span_b + ob] = ma * to_b + mb;
                    }
                }
            c.data = std::move(s);
        } else {
            DenseCore dcore;
            dcore.values.assign(std::size_t(c.r_left) * c.n * c.r_right, 0.0);
            for (int i = 0; i < c.n; ++i)
                for (int xa = 0; xa < ca.r_left; ++xa)
                    for (int ya = 0; ya < ca.r_right; ++ya) {
                        const double va = ca.at(xa, i, ya);
                        if (va == 0.0) continue;
                        for (int xb = 0; xb < cb.r_left; ++xb)
                            for (int yb = 0; yb < cb.r_right; ++yb) {
                                const double vb = cb.at(xb, i, yb);
                                if (vb == 0.0) continue;
                                const std::size_t x = std::size_t(xa) * cb.r_left + xb;
                                const std::size_t y = std::size_t(ya) * cb.r_right + yb;
                                dcore.values[(x * c.n + i) * c.r_right + y] = va * vb;
                            }
                    }
            c.data = std::move(dcore);
        }
        cores.push_back(std::move(c));
    }
    return TtTensor(std::move(cores), std::max(a.middle(), b.middle()));
}

std::uint64_t conv_op_bound(const TtTensor& t, int l) {
    if (l < 1 || l > t.dims()) throw std::invalid_argument("conv_op_bound: middle out of range");
    const std::vector<int> r = t.ranks();
    std::uint64_t bound = 0;
    for (int i = 1; i <= t.dims(); ++i) {
        const std::uint64_t n = std::uint64_t(t.core(i).n);
        if (i < l)
            bound += n * std::uint64_t(r[std::size_t(i) - 1]);
        else if (i > l)
            bound += n * std::uint64_t(r[std::size_t(i)]);
        else
            bound += n * (std::uint64_t(r[std::size_t(i) - 1]) * std::uint64_t(r[std::size_t(i)]) +
                          std::uint64_t(std::min(r[std::size_t(i) - 1], r[std::size_t(i)])));
    }
    return bound;
}

TtTensor apply_factors(const TtTensor& t) {
    std::vector<Core> cores;
    for (int k = 1; k <= t.dims(); ++k) {
        const Core& c = t.core(k);
        if (!t.has_factor(k)) {
            cores.push_back(c);
            continue;
        }
        const Factor& f = t.factor(k);
        Core out;
        out.r_left = c.r_left;
        out.r_right = c.r_right;
        out.n = f.n_external;
        DenseCore dcore;
        dcore.values.assign(std::size_t(out.r_left) * out.n * out.r_right, 0.0);
        for (int i = 0; i < f.n_external; ++i)
            for (int j = 0; j < f.n_internal; ++j) {
                const double a = f.at(i, j);
                if (a == 0.0) continue;
                for (int x = 0; x < c.r_left; ++x)
                    for (int y = 0; y < c.r_right; ++y) {
                        const double g = c.at(x, j, y);
                        if (g == 0.0) continue;
                        dcore.values[(std::size_t(x) * out.n + i) * out.r_right + y] += a * g;
                    }
            }
        out.data = std::move(dcore);
        cores.push_back(std::move(out));
    }
    return TtTensor(std::move(cores), t.middle());
}

std::vector<double> to_full(const TtTensor& t, std::uint64_t cap) {
    const std::uint64_t total = t.total_entries_capped(cap);
    if (total > cap)
        throw std::invalid_argument("to_full: tensor exceeds the dense reconstruction cap");
    // Row r of `mat` holds the partial product over the first k modes for
    // the r-th prefix index tuple (row-major ordering).
    std::vector<std::vector<double>> mat{{1.0}};
    for (int k = 1; k <= t.dims(); ++k) {
        const Core& c = t.core(k);
        const int n_ext = t.mode_size(k);
        std::vector<std::vector<double>> next;
        next.reserve(mat.size() * std::size_t(n_ext));
        // Slice matrices in external space.
        std::vector<std::vector<double>> slices(static_cast<std::size_t>(n_ext));
        for (int i = 0; i < n_ext; ++i) {
            std::vector<double>& m = slices[std::size_t(i)];
            m.assign(std::size_t(c.r_left) * c.r_right, 0.0);
            for (int j = 0; j < c.n; ++j) {
                const double a = t.has_factor(k) ? t.factor(k).at(i, j) : (i == j ? 1.0 : 0.0);
                if (a == 0.0) continue;
                for (int x = 0; x < c.r_left; ++x)
                    for (int y = 0; y < c.r_right; ++y)
                        m[std::size_t(x) * c.r_right + y] += a * c.at(x, j, y);
            }
        }
        for (const auto& row : mat)
            for (int i = 0; i < n_ext; ++i) {
                std::vector<double> out(std::size_t(c.r_right), 0.0);
                for (int x = 0; x < c.r_left; ++x) {
                    if (row[std::size_t(x)] == 0.0) continue;
                    for (int y = 0; y < c.r_right; ++y)
                        out[std::size_t(y)] +=
                            row[std::size_t(x)] * slices[std::size_t(i)][std::size_t(x) * c.r_right + y];
                }
                next.push_back(std::move(out));
            }
        mat = std::move(next);
    }
    std::vector<double> full;
    full.reserve(mat.size());
    for (const auto& row : mat) full.push_back(row.at(0));
    return full;
}

} // namespace ctt
