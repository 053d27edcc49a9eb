#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "compmat/classify.hpp"
#include "compmat/core.hpp"
#include "compmat/rng.hpp"

namespace compmat {

/// Hard ceiling on enumerable cells: 2^20 binary matrices per shape.
inline constexpr std::size_t kMaxEnumerationCells = 20;

/// Ceiling on grid enumerations per shape (|grid|^cells).
inline constexpr std::uint64_t kMaxEnumerationPerShape = std::uint64_t(1) << 24;

/// Configuration for the exhaustive equivalence sweeps.
///
/// A sweep covers every shape (m, n) with m <= max_m, n <= max_n and
/// m*n <= max_cells, enumerating all |real_grid|^(m*n) matrices per shape.
/// The grid must contain 0 and 1 so permutation-like matrices appear.
struct SweepConfig {
    std::size_t max_m = 3;
    std::size_t max_n = 4;
    std::vector<double> real_grid = {-1.0, 0.0, 0.5, 1.0, 2.0};
    std::uint64_t seed = 0;
    std::size_t max_cells = 12;

    /// Throws std::invalid_argument on a config the sweeps cannot honor.
    void validate() const;
};

/// Exhaustive class tally over all 2^(m*n) binary matrices of one shape.
/// Closed-form cross-checks: row-permutation-like (n+1)^m, column (m+1)^n,
/// composition n!/(n-m)! for m <= n.
struct ClassCounts {
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t n_row_permutation_like = 0;
    std::uint64_t n_column_permutation_like = 0;
    std::uint64_t n_both = 0;
    std::uint64_t n_composition = 0;
};

/// First matrix on which the three characterizations disagree.
struct SweepCounterexample {
    std::size_t m = 0;
    std::size_t n = 0;
    std::uint64_t pattern = 0;
    DenseRealMatrix matrix{1, 1};
    bool definition_holds = false;
    bool multiplicative_on_basis = false;
    bool diag_commutation_on_basis = false;
};

struct SweepReport {
    std::uint64_t shapes_checked = 0;
    std::uint64_t matrices_checked = 0;
    std::optional<SweepCounterexample> counterexample;

    bool ok() const { return !counterexample.has_value(); }
};

/// 2^(m*n). Throws std::invalid_argument when m*n exceeds the ceiling.
std::uint64_t binary_matrix_count(std::size_t m, std::size_t n);

/// The pattern-th binary matrix in ascending bit-pattern order: cell (i, j)
/// holds bit i*n + j of pattern, least significant bit first.
BinaryMatrix binary_matrix_from_pattern(std::size_t m, std::size_t n, std::uint64_t pattern);

/// Calls fn(pattern, matrix) for every binary m x n matrix, ascending.
template <typename Fn>
void for_each_binary(std::size_t m, std::size_t n, Fn&& fn) {
    const std::uint64_t count = binary_matrix_count(m, n);
    for (std::uint64_t pattern = 0; pattern < count; ++pattern) {
        fn(pattern, binary_matrix_from_pattern(m, n, pattern));
    }
}

/// Tallies classify_full over the full enumeration of one shape.
ClassCounts count_classes(std::size_t m, std::size_t n);

/// Closed-form counts used as independent cross-checks of count_classes.
std::uint64_t row_permutation_like_count(std::size_t m, std::size_t n);
std::uint64_t column_permutation_like_count(std::size_t m, std::size_t n);
std::uint64_t composition_matrix_count(std::size_t m, std::size_t n);

/// Machine check of the row-permutation-like characterization: for every
/// grid matrix, the entrywise definition, the multiplicative identity
/// evaluated literally on all basis pairs (plus seeded random pairs on
/// agreeing matrices), and the diag-commutation identity on all basis
/// vectors must agree. Returns the first disagreement, if any.
SweepReport row_characterization_sweep(const SweepConfig& cfg);

/// Transposed counterpart: column-permutation-like definition against the
/// transpose multiplicative identity and diag(f)A = A diag(A^T f).
SweepReport column_characterization_sweep(const SweepConfig& cfg);

/// Uniform random injection {0..m-1} -> {0..n-1} by partial Fisher-Yates
/// over the codomain; identical output for identical (m, n, seed).
Injection random_injection(std::size_t m, std::size_t n, std::uint64_t seed);

/// Vector with i.i.d. entries uniform in [-1, 1).
RealVector random_uniform_vector(std::size_t len, SplitMix64& gen);

}  // namespace compmat
