#pragma once

#include <cstdint>

namespace ctt {

// Tally of the arithmetic actually performed by a contraction sweep.
// Additions of zero and multiplications by zero or one are not counted,
// so the tally reflects the work a sparse sweep cannot avoid.
struct OpCount {
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;

    [[nodiscard]] std::uint64_t total() const { return additions + multiplications; }

    OpCount& operator+=(const OpCount& o) {
        additions += o.additions;
        multiplications += o.multiplications;
        return *this;
    }
};

} // namespace ctt
