#pragma once

#include "ctt/tt_tensor.hpp"

namespace ctt {

// TT-rounding. For tensors still in construction layout (unit sparse cores,
// middle last) the orthogonalization sweep is skipped: the partial products
// of such cores have diagonal Gram matrices whose entries are the integer
// path counts, so each unfolding is only row-rescaled by sqrt of those
// counts before its SVD. Everything else gets a full QR orthogonalization
// first. eps = 0 keeps every singular value above 1e-13 of the unfolding's
// largest (exact zeros only, up to roundoff); eps > 0 drops the smallest
// tail with sum of squares within (eps * |T|_F / sqrt(d-1))^2 per bond.
// Factors, if any, are folded in first; the result is a dense-core tensor.
TtTensor tt_round(const TtTensor& t, double eps);

// Integer path counts Lambda at every bond of a construction-layout tensor:
// Lambda[k][y] counts index paths from the left edge reaching state y.
std::vector<std::vector<double>> path_counts(const TtTensor& t);

} // namespace ctt
