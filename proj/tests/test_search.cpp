#include <doctest.h>

#include <cstdlib>
#include <optional>
#include <vector>

#include "ctt/combinatorics.hpp"
#include "ctt/derivative_chain.hpp"
#include "ctt/search.hpp"
#include "ctt/tt_tensor.hpp"

using namespace ctt;

namespace {

bool queens_placement_valid(const std::vector<int>& rows) {
    const int n = int(rows.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (rows[std::size_t(a)] == rows[std::size_t(b)]) return false;
            if (std::abs(rows[std::size_t(a)] - rows[std::size_t(b)]) == b - a) return false;
        }
    return true;
}

} // namespace

TEST_CASE("find_nonzero extracts a valid queens placement") {
    for (int n : {1, 4, 5, 6, 7}) {
        const QueensResult q = queens_tensor(n);
        const auto hit = find_nonzero(q.tensor);
        REQUIRE(hit.has_value());
        CHECK(hit->value == doctest::Approx(1.0));
        CHECK(queens_placement_valid(hit->indices));
        CHECK(eval_entry(q.tensor, hit->indices) == doctest::Approx(1.0));
    }
}

TEST_CASE("find_nonzero reports nothing on an identically zero tensor") {
    // 2x2 and 3x3 boards admit no placement: the tensor is all zeros.
    for (int n : {2, 3}) {
        const QueensResult q = queens_tensor(n);
        CHECK(q.count == 0);
        CHECK_FALSE(find_nonzero(q.tensor).has_value());
    }
}

TEST_CASE("quasi_argmax is exact on separable tensors") {
    // Rank-one chain: product of per-mode weights; the sweep maximizes each
    // mode independently, so it lands on the true argmax.
    DerivativeSpec<int> spec;
    spec.d = 4;
    spec.middle = 4;
    spec.mode_sizes = {3, 3, 3, 3};
    spec.left_seed = 0;
    spec.right_seed = 0;
    spec.side = [](int, int, int) -> std::optional<int> { return 0; };
    const std::vector<std::vector<double>> w{
            {0.2, 0.9, 0.5}, {0.8, 0.1, 0.3}, {0.4, 0.4, 0.7}, {0.6, 0.2, 0.5}};
    spec.mid = [&w](int i, int, int) { return std::optional<double>(w[3][std::size_t(i)]); };
    TtTensor t = build_tt(spec);
    // Scale mode k's slices by w_k via a diagonal factor.
    for (int k = 1; k <= 3; ++k) {
        Factor f;
        f.n_external = 3;
        f.n_internal = 3;
        f.values.assign(9, 0.0);
        for (int i = 0; i < 3; ++i) f.values[std::size_t(i) * 3 + i] = w[std::size_t(k) - 1][std::size_t(i)];
        t.set_factor(k, f);
    }
    const SearchResult best = quasi_argmax(t);
    CHECK(best.indices == std::vector<int>{1, 0, 2, 0});
    CHECK(best.value == doctest::Approx(0.9 * 0.8 * 0.7 * 0.6));
}

TEST_CASE("greedy ties resolve to the lowest index") {
    DerivativeSpec<int> spec;
    spec.d = 3;
    spec.middle = 3;
    spec.mode_sizes = {2, 2, 2};
    spec.left_seed = 0;
    spec.right_seed = 0;
    spec.side = [](int, int, int) -> std::optional<int> { return 0; };
    spec.mid = [](int, int, int) { return std::optional<double>(1.0); }; // all-ones tensor
    const TtTensor t = build_tt(spec);
    const SearchResult best = quasi_argmax(t);
    CHECK(best.indices == std::vector<int>{0, 0, 0});
    CHECK(best.value == doctest::Approx(1.0));
}

TEST_CASE("an all-negative tensor yields no positive entry") {
    DerivativeSpec<int> spec;
    spec.d = 3;
    spec.middle = 3;
    spec.mode_sizes = {2, 2, 2};
    spec.left_seed = 0;
    spec.right_seed = 0;
    spec.side = [](int, int i, int x) -> std::optional<int> { return x + i; };
    spec.mid = [](int, int, int) { return std::optional<double>(-1.0); };
    const TtTensor t = build_tt(spec);
    CHECK_FALSE(find_nonzero(t).has_value());
}

TEST_CASE("mixed signs still land on a positive entry when one branch leads") {
    // One strongly positive region next to negative entries: each greedy
    // step follows the branch with the larger partial sum, which stays
    // positive, so the selected entry is positive.
    DerivativeSpec<int> spec;
    spec.d = 3;
    spec.middle = 3;
    spec.mode_sizes = {2, 2, 2};
    spec.left_seed = 0;
    spec.right_seed = 0;
    spec.side = [](int, int i, int x) -> std::optional<int> { return x + i; };
    spec.mid = [](int i, int left, int) {
        return std::optional<double>(left + i == 3 ? -5.0 : 0.25);
    };
    const TtTensor t = build_tt(spec);
    const SearchResult r = quasi_argmax(t);
    CHECK(r.value > 0.0);
    CHECK(eval_entry(t, r.indices) == doctest::Approx(r.value));
}

TEST_CASE("quasi_argmax returns the zero tuple on an all-zero tensor") {
    const QueensResult q = queens_tensor(2);
    const SearchResult r = quasi_argmax(q.tensor);
    CHECK(r.value == 0.0);
    CHECK(r.indices == std::vector<int>(2, 0));
}

TEST_CASE("search handles the single-mode chain") {
    DerivativeSpec<int> spec;
    spec.d = 1;
    spec.middle = 1;
    spec.mode_sizes = {4};
    spec.left_seed = 0;
    spec.right_seed = 0;
    spec.side = [](int, int, int) -> std::optional<int> { return 0; };
    spec.mid = [](int i, int, int) { return std::optional<double>(double(i == 2 ? 7 : i)); };
    const TtTensor t = build_tt(spec);
    const SearchResult best = quasi_argmax(t);
    CHECK(best.indices == std::vector<int>{2});
    CHECK(best.value == doctest::Approx(7.0));
    const auto hit = find_nonzero(t);
    REQUIRE(hit.has_value());
    CHECK(hit->value > 0.0);
}
