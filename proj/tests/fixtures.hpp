#pragma once

#include "compmat/core.hpp"

namespace fixtures {

/// 3x4, row-permutation-like but not column-permutation-like: rows 1 and 2
/// both point at column 1, so no map can have produced it.
inline compmat::DenseRealMatrix repeated_column_matrix() {
    return {{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}};
}

/// 3x4, row- and column-permutation-like, but the zero third row keeps it
/// from being a composition matrix.
inline compmat::DenseRealMatrix zero_row_matrix() {
    return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}};
}

}  // namespace fixtures
