#pragma once

#include <cstdint>
#include <vector>

#include "compmat/core.hpp"
#include "compmat/witness.hpp"

namespace compmat {

/// Absolute tolerance for reading a real entry as exactly 0 or exactly 1.
/// Must satisfy 0 <= eps < 0.5 so the two readings can never collide.
class Tolerance {
  public:
    explicit Tolerance(double eps = 1e-9);

    double eps() const { return eps_; }

    static Tolerance exact() { return Tolerance(0.0); }

  private:
    double eps_;
};

/// Dense 0/1 matrix.
class BinaryMatrix {
  public:
    BinaryMatrix(std::size_t rows, std::size_t cols);

    /// Throws std::invalid_argument if any entry is not 0 or 1.
    BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { bits_[i * cols_ + j] = v ? 1 : 0; }

    DenseRealMatrix to_dense() const;
    BinaryMatrix transposed() const;

    bool operator==(const BinaryMatrix&) const = default;

  private:
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> bits_;
};

/// Full verdict over the entrywise definitions, with failure witnesses.
/// Guaranteed invariants:
///   - is_composition_matrix implies the three component flags,
///   - row/column permutation-likeness implies is_binary,
///   - witnesses nonempty exactly when some flag is false.
struct ClassificationReport {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool is_binary = false;
    bool is_row_permutation_like = false;
    bool is_column_permutation_like = false;
    bool row_sums_all_one = false;
    bool is_composition_matrix = false;
    std::vector<Witness> witnesses;
};

/// Rounds each entry to the nearest of {0, 1} when within eps of it; fails
/// with a non-binary-entry witness otherwise.
Expected<BinaryMatrix> binarize(const DenseRealMatrix& a, Tolerance tol);

/// True iff every entry is within eps of 0 or of 1.
Verdict is_binary(const DenseRealMatrix& a, Tolerance tol);

/// Each row contains at most one 1. Witness: (i, j, k) with two 1s in row i.
Verdict is_row_permutation_like(const BinaryMatrix& b);

/// Each column contains at most one 1 (equivalently, the transpose is
/// row-permutation-like). Witness: (j, i1, i2) with two 1s in column j.
Verdict is_column_permutation_like(const BinaryMatrix& b);

/// Reads off the composition matrix when every row has exactly one 1, every
/// column at most one, and there are no more rows than columns. Failure
/// witnesses: zero-row, multiple-ones-in-row, repeated-column, bad-shape,
/// reported at the first offending row in scan order.
Expected<CompositionMatrix> try_into_composition(const BinaryMatrix& b);

/// Max-norm of A(f.g) - (Af).(Ag). Zero for every pair exactly when A is
/// row-permutation-like; exact zero (no rounding) when A is a 0/1
/// selection matrix.
double multiplicative_residual(const DenseRealMatrix& a, const RealVector& f,
                               const RealVector& g);

/// Entrywise certificate equivalent to "A(f.g) = (Af).(Ag) for all f, g":
/// |a_ij^2 - a_ij| <= eps for all entries and |a_ij * a_ik| <= eps for all
/// rows i and column pairs j != k. Runs in O(m*n) per matrix; the pair
/// condition is decided from each row's two largest magnitudes.
Verdict multiplicative_certificate(const DenseRealMatrix& a, Tolerance tol);

/// Max-norm of A*diag(f) - diag(Af)*A.
double diag_commutation_residual(const DenseRealMatrix& a, const RealVector& f);

/// Max-norm of diag(f)*A - A*diag(A^T f).
double transpose_diag_residual(const DenseRealMatrix& a, const RealVector& f);

/// Runs every entrywise check and assembles the report. In the default
/// first-witness mode each failing check contributes the first violation in
/// row-major scan order; all_witnesses reports one witness per offending
/// entry, row or column.
ClassificationReport classify_full(const DenseRealMatrix& a, Tolerance tol,
                                   bool all_witnesses = false);

}  // namespace compmat
