#include "compmat/classify.hpp"

#include <cmath>
#include <stdexcept>

namespace compmat {

namespace {

constexpr const char* kNonBinaryEntry = "non-binary-entry";
constexpr const char* kIdempotency = "idempotency-violation";
constexpr const char* kCrossProduct = "cross-product-violation";
constexpr const char* kMultipleOnesInRow = "multiple-ones-in-row";
constexpr const char* kRepeatedColumn = "repeated-column";
constexpr const char* kZeroRow = "zero-row";
constexpr const char* kRowSumNotOne = "row-sum-not-one";
constexpr const char* kBadShape = "bad-shape";

Witness witness(const char* clause, std::vector<std::size_t> indices) {
    return Witness{clause, std::move(indices), std::nullopt};
}

Witness witness(const char* clause, std::vector<std::size_t> indices, double value) {
    return Witness{clause, std::move(indices), value};
}

// Classifies one entry against {0, 1}: 0, 1, or -1 for neither.
int read_binary(double v, double eps) {
    if (std::fabs(v) <= eps) return 0;
    if (std::fabs(v - 1.0) <= eps) return 1;
    return -1;
}

}  // namespace

Tolerance::Tolerance(double eps) : eps_(eps) {
    if (!(eps >= 0.0) || eps >= 0.5) {
        throw std::invalid_argument("Tolerance: eps must satisfy 0 <= eps < 0.5");
    }
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("BinaryMatrix: dimensions must be positive");
    }
}

BinaryMatrix::BinaryMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("BinaryMatrix: dimensions must be positive");
    }
    bits_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("BinaryMatrix: ragged row list");
        }
        for (int v : r) {
            if (v != 0 && v != 1) {
                throw std::invalid_argument("BinaryMatrix: entries must be 0 or 1");
            }
            bits_.push_back(static_cast<std::uint8_t>(v));
        }
    }
}

DenseRealMatrix BinaryMatrix::to_dense() const {
    DenseRealMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (get(i, j)) d(i, j) = 1.0;
        }
    }
    return d;
}

BinaryMatrix BinaryMatrix::transposed() const {
    BinaryMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t.set(j, i, get(i, j));
        }
    }
    return t;
}

Expected<BinaryMatrix> binarize(const DenseRealMatrix& a, Tolerance tol) {
    BinaryMatrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const int r = read_binary(a(i, j), tol.eps());
            if (r < 0) {
                return witness(kNonBinaryEntry, {i + 1, j + 1}, a(i, j));
            }
            b.set(i, j, r == 1);
        }
    }
    return b;
}

Verdict is_binary(const DenseRealMatrix& a, Tolerance tol) {
    auto b = binarize(a, tol);
    if (b.ok()) return Verdict::pass();
    return Verdict::fail(b.failure());
}

Verdict is_row_permutation_like(const BinaryMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::size_t first = b.cols();
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (!b.get(i, j)) continue;
            if (first == b.cols()) {
                first = j;
            } else {
                return Verdict::fail(witness(kMultipleOnesInRow, {i + 1, first + 1, j + 1}));
            }
        }
    }
    return Verdict::pass();
}

Verdict is_column_permutation_like(const BinaryMatrix& b) {
    // Row-major scan; the witness is the first cell that lands in an already
    // occupied column.
    std::vector<std::size_t> first_row(b.cols(), b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (!b.get(i, j)) continue;
            if (first_row[j] == b.rows()) {
                first_row[j] = i;
            } else {
                return Verdict::fail(witness(kRepeatedColumn, {j + 1, first_row[j] + 1, i + 1}));
            }
        }
    }
    return Verdict::pass();
}

Expected<CompositionMatrix> try_into_composition(const BinaryMatrix& b) {
    if (b.rows() > b.cols()) {
        return witness(kBadShape, {b.rows(), b.cols()});
    }
    std::vector<std::size_t> row_to_col(b.rows());
    std::vector<std::size_t> first_row(b.cols(), b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::size_t found = b.cols();
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (!b.get(i, j)) continue;
            if (found == b.cols()) {
                found = j;
            } else {
                return witness(kMultipleOnesInRow, {i + 1, found + 1, j + 1});
            }
        }
        if (found == b.cols()) {
            return witness(kZeroRow, {i + 1});
        }
        if (first_row[found] != b.rows()) {
            return witness(kRepeatedColumn, {found + 1, first_row[found] + 1, i + 1});
        }
        first_row[found] = i;
        row_to_col[i] = found;
    }
    return CompositionMatrix(b.cols(), std::move(row_to_col));
}

namespace {

RealVector matvec(const DenseRealMatrix& a, const RealVector& v) {
    RealVector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

RealVector matvec_transposed(const DenseRealMatrix& a, const RealVector& v) {
    RealVector out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[j] += a(i, j) * v[i];
        }
    }
    return out;
}

}  // namespace

double multiplicative_residual(const DenseRealMatrix& a, const RealVector& f,
                               const RealVector& g) {
    if (f.size() != a.cols() || g.size() != a.cols()) {
        throw std::invalid_argument("multiplicative_residual: vector length mismatch");
    }
    const RealVector lhs = matvec(a, hadamard(f, g));
    const RealVector af = matvec(a, f);
    const RealVector ag = matvec(a, g);
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double d = std::fabs(lhs[i] - af[i] * ag[i]);
        if (d > r) r = d;
    }
    return r;
}

Verdict multiplicative_certificate(const DenseRealMatrix& a, Tolerance tol) {
    const double eps = tol.eps();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double v = a(i, j);
            if (std::fabs(v * v - v) > eps) {
                return Verdict::fail(witness(kIdempotency, {i + 1, j + 1}, v));
            }
        }
        // Pair condition per row: the largest pairwise magnitude product is
        // the product of the two largest magnitudes.
        double m1 = -1.0, m2 = -1.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double v = std::fabs(a(i, j));
            if (v > m1) {
                m2 = m1;
                m1 = v;
            } else if (v > m2) {
                m2 = v;
            }
        }
        if (a.cols() >= 2 && m1 * m2 > eps) {
            // Locate the first violating pair in lexicographic (j, k) order.
            std::vector<double> suffix_max(a.cols(), 0.0);
            suffix_max[a.cols() - 1] = std::fabs(a(i, a.cols() - 1));
            for (std::size_t j = a.cols() - 1; j-- > 0;) {
                suffix_max[j] = std::max(std::fabs(a(i, j)), suffix_max[j + 1]);
            }
            for (std::size_t j = 0; j + 1 < a.cols(); ++j) {
                if (std::fabs(a(i, j)) * suffix_max[j + 1] <= eps) continue;
                for (std::size_t k = j + 1; k < a.cols(); ++k) {
                    if (std::fabs(a(i, j) * a(i, k)) > eps) {
                        return Verdict::fail(witness(kCrossProduct, {i + 1, j + 1, k + 1},
                                                     a(i, j) * a(i, k)));
                    }
                }
            }
        }
    }
    return Verdict::pass();
}

double diag_commutation_residual(const DenseRealMatrix& a, const RealVector& f) {
    if (f.size() != a.cols()) {
        throw std::invalid_argument("diag_commutation_residual: vector length mismatch");
    }
    const RealVector af = matvec(a, f);
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double d = std::fabs(a(i, j) * f[j] - af[i] * a(i, j));
            if (d > r) r = d;
        }
    }
    return r;
}

double transpose_diag_residual(const DenseRealMatrix& a, const RealVector& f) {
    if (f.size() != a.rows()) {
        throw std::invalid_argument("transpose_diag_residual: vector length mismatch");
    }
    const RealVector atf = matvec_transposed(a, f);
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double d = std::fabs(f[i] * a(i, j) - a(i, j) * atf[j]);
            if (d > r) r = d;
        }
    }
    return r;
}

ClassificationReport classify_full(const DenseRealMatrix& a, Tolerance tol, bool all_witnesses) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const double eps = tol.eps();

    ClassificationReport report;
    report.rows = m;
    report.cols = n;

    // Entry check; on success the rounded 0/1 grid drives the shape checks.
    BinaryMatrix bin(m, n);
    report.is_binary = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int r = read_binary(a(i, j), eps);
            if (r < 0) {
                if (report.is_binary || all_witnesses) {
                    report.witnesses.push_back(witness(kNonBinaryEntry, {i + 1, j + 1}, a(i, j)));
                }
                report.is_binary = false;
            } else {
                bin.set(i, j, r == 1);
            }
        }
    }

    report.is_row_permutation_like = report.is_binary;
    report.is_column_permutation_like = report.is_binary;
    if (report.is_binary) {
        bool row_ok = true;
        for (std::size_t i = 0; i < m && (row_ok || all_witnesses); ++i) {
            std::size_t first = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (!bin.get(i, j)) continue;
                if (first == n) {
                    first = j;
                } else {
                    report.witnesses.push_back(
                        witness(kMultipleOnesInRow, {i + 1, first + 1, j + 1}));
                    row_ok = false;
                    break;  // one witness per row
                }
            }
        }
        report.is_row_permutation_like = row_ok;

        // Row-major cell scan, like the standalone check, so both report the
        // same first witness.
        bool col_ok = true;
        std::vector<std::size_t> first_row(n, m);
        std::vector<char> column_reported(n, 0);
        for (std::size_t i = 0; i < m && (col_ok || all_witnesses); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!bin.get(i, j)) continue;
                if (first_row[j] == m) {
                    first_row[j] = i;
                } else if (!column_reported[j]) {
                    report.witnesses.push_back(
                        witness(kRepeatedColumn, {j + 1, first_row[j] + 1, i + 1}));
                    column_reported[j] = 1;
                    col_ok = false;
                    if (!all_witnesses) break;
                }
            }
        }
        report.is_column_permutation_like = col_ok;
    }

    // Row sums run on the raw entries; n summands each eps-perturbed justify
    // the n*eps slack.
    report.row_sums_all_one = true;
    const double sum_slack = static_cast<double>(n) * eps;
    for (std::size_t i = 0; i < m && (report.row_sums_all_one || all_witnesses); ++i) {
        double sum = 0.0;
        bool any_one = false;
        for (std::size_t j = 0; j < n; ++j) {
            sum += a(i, j);
            if (report.is_binary && bin.get(i, j)) any_one = true;
        }
        if (std::fabs(sum - 1.0) > sum_slack) {
            if (report.is_binary && !any_one) {
                report.witnesses.push_back(witness(kZeroRow, {i + 1}));
            } else {
                report.witnesses.push_back(witness(kRowSumNotOne, {i + 1}, sum));
            }
            report.row_sums_all_one = false;
        }
    }

    const bool shape_ok = m <= n;
    if (!shape_ok) {
        report.witnesses.push_back(witness(kBadShape, {m, n}));
    }
    report.is_composition_matrix = report.is_binary && report.is_row_permutation_like &&
                                   report.is_column_permutation_like && report.row_sums_all_one &&
                                   shape_ok;
    return report;
}

}  // namespace compmat
