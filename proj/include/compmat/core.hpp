#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

/// compmat: discrete composition matrices.
///
/// A composition matrix is the matrix of a pullback operator: given an
/// injective index map pi mapping {1..m} into {1..n}, the operator P takes a
/// function f on the target index set to the function (Pf)_i = f_{pi(i)} on
/// the source set. P has exactly one 1 per row and at most one 1 per column.
///
/// All indices in this library are 0-based. File formats and reports convert
/// to 1-based indices at the boundary (see compmat/io.hpp).
namespace compmat {

/// Real vector. Entries are expected to be finite; file readers enforce
/// this, in-memory construction does not.
using RealVector = std::vector<double>;

/// An injective map pi: {0..m-1} -> {0..n-1}.
///
/// Invariants (enforced at construction): m >= 1, n >= 1, m <= n, every
/// target below n, targets pairwise distinct.
class Injection {
  public:
    /// Throws std::invalid_argument if the targets do not form an injection
    /// into {0..n-1}.
    Injection(std::size_t codomain_size, std::vector<std::size_t> targets);

    /// The identity map on {0..n-1}.
    static Injection identity(std::size_t n);

    std::size_t domain_size() const { return targets_.size(); }
    std::size_t codomain_size() const { return codomain_size_; }

    /// pi(i).
    std::size_t target(std::size_t i) const { return targets_[i]; }
    std::span<const std::size_t> targets() const { return targets_; }

    bool operator==(const Injection&) const = default;

  private:
    std::size_t codomain_size_;
    std::vector<std::size_t> targets_;
};

/// Sparse representation of an m x n composition matrix: one stored column
/// index per row. Never materializes the dense grid; use to_dense() when a
/// dense view is required.
///
/// Invariants match Injection (the two types are exact images of each other
/// under injection_to_matrix / matrix_to_injection).
class CompositionMatrix {
  public:
    /// Throws std::invalid_argument unless row_to_col is injective into
    /// {0..cols-1} with 1 <= rows <= cols.
    CompositionMatrix(std::size_t cols, std::vector<std::size_t> row_to_col);

    static CompositionMatrix identity(std::size_t n);

    std::size_t rows() const { return row_to_col_.size(); }
    std::size_t cols() const { return cols_; }

    /// Column holding the single 1 of row i.
    std::size_t column_of_row(std::size_t i) const { return row_to_col_[i]; }
    std::span<const std::size_t> row_to_col() const { return row_to_col_; }

    bool operator==(const CompositionMatrix&) const = default;

  private:
    std::size_t cols_;
    std::vector<std::size_t> row_to_col_;
};

/// Dense m x n real matrix, row-major.
class DenseRealMatrix {
  public:
    /// Zero matrix. Dimensions must be positive.
    DenseRealMatrix(std::size_t rows, std::size_t cols);

    /// Throws std::invalid_argument on ragged rows, empty dimensions, or
    /// non-finite entries.
    DenseRealMatrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    DenseRealMatrix transposed() const;

    /// True when every entry is finite.
    bool all_finite() const;

    bool operator==(const DenseRealMatrix&) const = default;

  private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// The matrix of the pullback operator of pi: a 1 at (i, pi(i)) per row i.
CompositionMatrix injection_to_matrix(const Injection& pi);

/// Exact inverse of injection_to_matrix.
Injection matrix_to_injection(const CompositionMatrix& p);

/// (Pf)_i = f_{pi(i)}. Pure selection, no arithmetic; touches exactly
/// p.rows() entries of f. Throws std::invalid_argument on length mismatch.
RealVector apply_pullback(const CompositionMatrix& p, const RealVector& f);

/// P^T g: scatters g_i to position pi(i), zero elsewhere. Pure selection.
RealVector apply_pushforward(const CompositionMatrix& p, const RealVector& g);

/// Element-wise product f.g. Throws std::invalid_argument on length mismatch.
RealVector hadamard(const RealVector& f, const RealVector& g);

/// Matrix product of the dense expansions, computed directly on the sparse
/// form: result maps row i to inner.column_of_row(outer.column_of_row(i)).
/// Requires outer.cols() == inner.rows().
CompositionMatrix compose(const CompositionMatrix& outer, const CompositionMatrix& inner);

/// Dense 0/1 expansion.
DenseRealMatrix to_dense(const CompositionMatrix& p);

/// Max-norm of a vector (0 for the empty vector).
double linf_norm(const RealVector& v);

}  // namespace compmat
