// Long-running rank-reduction regression: the 9- and 10-column queens
// tensors take minutes of dense SVD work, so they live outside the main
// unit binary. Expected profiles were produced by this implementation and
// cross-checked against the exact counts; both tolerance settings reach
// the numerically minimal ranks because the exact-zero sweep already
// drops every singular value below the noise floor.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ctt/combinatorics.hpp"
#include "ctt/tt_round.hpp"
#include "ctt/tt_tensor.hpp"

using namespace ctt;

namespace {

void check_rounding(int n, double eps, const std::vector<int>& want_ranks, double want_count) {
    const QueensResult q = queens_tensor(n);
    const TtTensor r = tt_round(q.tensor, eps);
    CHECK(r.ranks() == want_ranks);
    const double count = contract_modes<double>(r);
    CHECK(std::abs(count - want_count) <= 1e-9 * want_count);
}

} // namespace

TEST_CASE("nine columns: both tolerances reach the minimal profile") {
    const std::vector<int> want{1, 9, 54, 172, 246, 246, 172, 54, 9, 1};
    check_rounding(9, 0.0, want, 352.0);
    check_rounding(9, 1e-6, want, 352.0);
}

TEST_CASE("ten columns: both tolerances reach the minimal profile") {
    const std::vector<int> want{1, 10, 72, 284, 526, 606, 526, 284, 72, 10, 1};
    check_rounding(10, 0.0, want, 724.0);
    check_rounding(10, 1e-6, want, 724.0);
}
