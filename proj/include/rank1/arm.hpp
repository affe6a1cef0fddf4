#pragma once

#include <cstddef>

namespace rank1 {

// A (row, column) pair. Indices are 0-based everywhere in this repository.
struct Arm {
    int row = 0;
    int col = 0;

    friend bool operator==(const Arm&, const Arm&) = default;
};

}  // namespace rank1
