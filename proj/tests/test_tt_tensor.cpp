#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctt/tt_tensor.hpp"

using namespace ctt;

namespace {

Core dense_core(int r_left, int n, int r_right, std::vector<double> vals) {
    Core c;
    c.r_left = r_left;
    c.n = n;
    c.r_right = r_right;
    c.data = DenseCore{std::move(vals)};
    return c;
}

Core row_select(int r_left, int n, int r_right, std::vector<std::vector<int>> sel) {
    Core c;
    c.r_left = r_left;
    c.n = n;
    c.r_right = r_right;
    c.data = SparseCore{SparseCore::Kind::RowSelect, std::move(sel)};
    return c;
}

Core col_select(int r_left, int n, int r_right, std::vector<std::vector<int>> sel) {
    Core c;
    c.r_left = r_left;
    c.n = n;
    c.r_right = r_right;
    c.data = SparseCore{SparseCore::Kind::ColSelect, std::move(sel)};
    return c;
}

// 2x2x2 tensor of i1 + 2*i2 + 4*i3 as an explicit running-sum chain with
// the dense middle at the last mode.
TtTensor counter_tensor() {
    std::vector<Core> cores;
    // Bond state after mode k encodes the partial sum; mode 1: 0 or 1.
    cores.push_back(row_select(1, 2, 2, {{0}, {1}}));
    // Mode 2 adds 0 or 2: states {0,1} -> {0,1,2,3}.
    cores.push_back(row_select(2, 2, 4, {{0, 1}, {2, 3}}));
    // Dense middle: value = left_state + 4*i.
    std::vector<double> vals;
    for (int x = 0; x < 4; ++x)
        for (int i = 0; i < 2; ++i) vals.push_back(double(x + 4 * i));
    cores.push_back(dense_core(4, 2, 1, vals));
    return TtTensor(std::move(cores), 3);
}

} // namespace

TEST_CASE("core entry access matches the storage convention") {
    const Core d = dense_core(2, 2, 2, {0, 1, 2, 3, 4, 5, 6, 7});
    // values[(x*n+i)*r_right + y]
    CHECK(d.at(0, 0, 0) == 0.0);
    CHECK(d.at(0, 1, 1) == 3.0);
    CHECK(d.at(1, 0, 1) == 5.0);
    CHECK(d.at(1, 1, 0) == 6.0);

    const Core r = row_select(2, 2, 3, {{0, 2}, {-1, 1}});
    CHECK(r.at(0, 0, 0) == 1.0);
    CHECK(r.at(0, 0, 1) == 0.0);
    CHECK(r.at(1, 0, 2) == 1.0);
    CHECK(r.at(0, 1, 0) == 0.0); // -1: all-zero row
    CHECK(r.at(1, 1, 1) == 1.0);

    const Core c = col_select(3, 2, 2, {{0, 2}, {-1, 1}});
    CHECK(c.at(0, 0, 0) == 1.0);
    CHECK(c.at(2, 0, 1) == 1.0);
    CHECK(c.at(1, 0, 0) == 0.0);
    CHECK(c.at(1, 1, 1) == 1.0);
    CHECK(c.at(0, 1, 0) == 0.0);

    // to_dense agrees entrywise with at().
    const auto rd = r.to_dense();
    for (int x = 0; x < r.r_left; ++x)
        for (int i = 0; i < r.n; ++i)
            for (int y = 0; y < r.r_right; ++y)
                CHECK(rd[std::size_t(x * r.n + i) * r.r_right + y] == r.at(x, i, y));
}

TEST_CASE("eval_entry and to_full agree on a hand-built chain") {
    const TtTensor t = counter_tensor();
    CHECK(t.dims() == 3);
    CHECK(t.ranks() == std::vector<int>{1, 2, 4, 1});
    CHECK(t.left_chain_form());
    const auto full = to_full(t);
    REQUIRE(full.size() == 8);
    for (int i3 = 0; i3 < 2; ++i3)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int i1 = 0; i1 < 2; ++i1) {
                const double want = i1 + 2 * i2 + 4 * i3;
                CHECK(eval_entry(t, {i1, i2, i3}) == want);
                // to_full is row-major in mode order.
                CHECK(full[std::size_t(i1) * 4 + std::size_t(i2) * 2 + i3] == want);
            }
    CHECK_THROWS_AS((void)eval_entry(t, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)eval_entry(t, {0, 0, 2}), std::out_of_range);
}

TEST_CASE("contract_modes sums and pins modes") {
    const TtTensor t = counter_tensor();
    // Sum over all entries: sum_{x=0..7} x = 28.
    CHECK(contract_modes<double>(t) == doctest::Approx(28.0));
    CHECK(contract_modes<long long>(t) == 28);
    // Pin mode 3 = 1: entries 4..7 sum to 22.
    CHECK(contract_modes<double>(t, {{3, 1}}) == doctest::Approx(22.0));
    // Pin all modes: the single entry.
    CHECK(contract_modes<double>(t, {{1, 1}, {2, 0}, {3, 1}}) == doctest::Approx(5.0));
    CHECK_THROWS_AS((void)contract_modes<double>(t, {{4, 0}}), std::out_of_range);
    CHECK_THROWS_AS((void)contract_modes<double>(t, {{3, 2}}), std::out_of_range);
}

TEST_CASE("exact contraction rejects non-integer cores") {
    std::vector<Core> cores;
    cores.push_back(dense_core(1, 2, 1, {0.5, 1.0}));
    const TtTensor t(std::move(cores), 1);
    CHECK(contract_modes<double>(t) == doctest::Approx(1.5));
    CHECK_THROWS_AS((void)contract_modes<long long>(t), std::invalid_argument);
}

TEST_CASE("convolve_rank_one equals the weighted sum and counts real work") {
    const TtTensor t = counter_tensor();
    const WeightVectors w{{0.5, 2.0}, {1.0, 3.0}, {1.0, 1.0}};
    double want = 0.0;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int i3 = 0; i3 < 2; ++i3)
                want += w[0][std::size_t(i1)] * w[1][std::size_t(i2)] * w[2][std::size_t(i3)] *
                        (i1 + 2 * i2 + 4 * i3);
    const auto [got, ops] = convolve_rank_one(t, w);
    CHECK(got == doctest::Approx(want));
    CHECK(ops.total() > 0);
    CHECK(ops.total() == ops.additions + ops.multiplications);

    // All weights 1 and all selection cores: zero multiplications on the
    // sparse part of the sweep (units scatter, never multiply).
    std::vector<Core> unit;
    unit.push_back(row_select(1, 2, 2, {{0}, {1}}));
    unit.push_back(dense_core(2, 2, 1, {1, 1, 1, 1}));
    const TtTensor u(std::move(unit), 2);
    const auto [val, uops] = convolve_rank_one(u, {{1.0, 1.0}, {1.0, 1.0}});
    CHECK(val == doctest::Approx(4.0));
    CHECK(uops.multiplications == 0); // every product has a 0/1 operand
    CHECK_THROWS_AS((void)convolve_rank_one(u, WeightVectors{{1.0, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("hadamard multiplies entrywise") {
    const TtTensor a = counter_tensor();
    const TtTensor b = counter_tensor();
    const TtTensor p = hadamard(a, b);
    const auto fa = to_full(a);
    const auto fp = to_full(p);
    REQUIRE(fp.size() == fa.size());
    for (std::size_t i = 0; i < fa.size(); ++i) CHECK(fp[i] == doctest::Approx(fa[i] * fa[i]));
    // Bond ranks multiply at worst; sparse x sparse stays sparse.
    CHECK(p.core(1).is_sparse());
    CHECK(p.core(2).is_sparse());
    CHECK_FALSE(p.core(3).is_sparse());

    std::vector<Core> other;
    other.push_back(dense_core(1, 3, 1, {1, 2, 3}));
    const TtTensor c(std::move(other), 1);
    CHECK_THROWS_AS((void)hadamard(a, c), std::invalid_argument);
}

TEST_CASE("factors reshape the external mode") {
    // One dense core over an internal basis of size 2, factor maps 3
    // external slices onto it.
    std::vector<Core> cores;
    cores.push_back(dense_core(1, 2, 1, {5.0, 7.0}));
    TtTensor t(std::move(cores), 1);
    Factor f;
    f.n_external = 3;
    f.n_internal = 2;
    f.values = {1, 0, 0, 1, 2, -1};
    t.set_factor(1, f);
    CHECK(t.mode_size(1) == 3);
    CHECK(eval_entry(t, {0}) == doctest::Approx(5.0));
    CHECK(eval_entry(t, {1}) == doctest::Approx(7.0));
    CHECK(eval_entry(t, {2}) == doctest::Approx(2 * 5.0 - 7.0));
    CHECK(contract_modes<double>(t) == doctest::Approx(5 + 7 + 3));

    const TtTensor dense = apply_factors(t);
    CHECK_FALSE(dense.has_factor(1));
    CHECK(dense.mode_size(1) == 3);
    const auto full = to_full(dense);
    CHECK(full == std::vector<double>{5.0, 7.0, 3.0});
}

TEST_CASE("hadamard densifies factored modes first") {
    std::vector<Core> ca;
    ca.push_back(dense_core(1, 2, 1, {1.0, 2.0}));
    TtTensor a(std::move(ca), 1);
    Factor f;
    f.n_external = 2;
    f.n_internal = 2;
    f.values = {1, 1, 0, 1};
    a.set_factor(1, f);
    std::vector<Core> cb;
    cb.push_back(dense_core(1, 2, 1, {10.0, 100.0}));
    const TtTensor b(std::move(cb), 1);
    const TtTensor p = hadamard(a, b);
    const auto full = to_full(p);
    // a externally = (3, 2), b = (10, 100).
    CHECK(full == std::vector<double>{30.0, 200.0});
}

TEST_CASE("conv_op_bound dominates measured contraction cost") {
    const TtTensor t = counter_tensor();
    const WeightVectors w{{1, 2}, {3, 4}, {5, 6}};
    const auto [value, ops] = convolve_rank_one(t, w);
    (void)value;
    CHECK(ops.total() <= conv_op_bound(t, t.middle()));
}

TEST_CASE("left_chain_form detects the construction layout") {
    const TtTensor t = counter_tensor();
    CHECK(t.left_chain_form());
    // Dense cores before the last mode break the form.
    std::vector<Core> cores;
    cores.push_back(dense_core(1, 2, 2, {1, 0, 0, 1}));
    cores.push_back(dense_core(2, 2, 1, {1, 2, 3, 4}));
    const TtTensor u(std::move(cores), 2);
    CHECK_FALSE(u.left_chain_form());
}

TEST_CASE("total_entries_capped saturates") {
    const TtTensor t = counter_tensor();
    CHECK(t.total_entries_capped(100) == 8);
    // Overflow is reported as cap + 1, never the (possibly huge) true size.
    CHECK(t.total_entries_capped(4) == 5);
    CHECK(t.total_entries_capped(5) == 6);
    CHECK(t.total_entries_capped(8) == 8);
}
