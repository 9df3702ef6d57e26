#pragma once

#include <optional>
#include <vector>

#include "ctt/tt_tensor.hpp"

namespace ctt {

struct SearchResult {
    std::vector<int> indices;
    double value = 0.0;
};

// Greedy index selection on a nonnegative tensor: precompute suffix products
// of the slice-summed cores, then fix indices left to right, each time taking
// the slice with the largest remaining partial sum (lowest index on ties).
// Returns nothing when the tensor is identically zero; throws when the found
// entry fails the positivity check, which signals negative entries upstream.
std::optional<SearchResult> find_nonzero(const TtTensor& t);

// Same greedy sweep, returned unconditionally: a nonzero entry whenever one
// exists, with no claim of global maximality.
SearchResult quasi_argmax(const TtTensor& t);

} // namespace ctt
