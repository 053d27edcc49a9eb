#include "compmat/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace compmat {

namespace {

void check_injective_targets(std::size_t cols, const std::vector<std::size_t>& targets,
                             const char* what) {
    if (targets.empty()) {
        throw std::invalid_argument(std::string(what) + ": domain size must be at least 1");
    }
    if (cols == 0) {
        throw std::invalid_argument(std::string(what) + ": codomain size must be at least 1");
    }
    if (targets.size() > cols) {
        throw std::invalid_argument(std::string(what) + ": domain size " +
                                    std::to_string(targets.size()) + " exceeds codomain size " +
                                    std::to_string(cols));
    }
    std::vector<char> seen(cols, 0);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::size_t t = targets[i];
        if (t >= cols) {
            throw std::invalid_argument(std::string(what) + ": target " + std::to_string(t) +
                                        " at position " + std::to_string(i) + " is out of range");
        }
        if (seen[t]) {
            throw std::invalid_argument(std::string(what) + ": duplicate target " +
                                        std::to_string(t));
        }
        seen[t] = 1;
    }
}

}  // namespace

Injection::Injection(std::size_t codomain_size, std::vector<std::size_t> targets)
    : codomain_size_(codomain_size), targets_(std::move(targets)) {
    check_injective_targets(codomain_size_, targets_, "Injection");
}

Injection Injection::identity(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i;
    return Injection(n, std::move(t));
}

CompositionMatrix::CompositionMatrix(std::size_t cols, std::vector<std::size_t> row_to_col)
    : cols_(cols), row_to_col_(std::move(row_to_col)) {
    check_injective_targets(cols_, row_to_col_, "CompositionMatrix");
}

CompositionMatrix CompositionMatrix::identity(std::size_t n) {
    return injection_to_matrix(Injection::identity(n));
}

DenseRealMatrix::DenseRealMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("DenseRealMatrix: dimensions must be positive");
    }
}

DenseRealMatrix::DenseRealMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("DenseRealMatrix: dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("DenseRealMatrix: ragged row list");
        }
        for (double v : r) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("DenseRealMatrix: non-finite entry");
            }
            data_.push_back(v);
        }
    }
}

DenseRealMatrix DenseRealMatrix::transposed() const {
    DenseRealMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

bool DenseRealMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

CompositionMatrix injection_to_matrix(const Injection& pi) {
    return CompositionMatrix(pi.codomain_size(),
                             std::vector<std::size_t>(pi.targets().begin(), pi.targets().end()));
}

Injection matrix_to_injection(const CompositionMatrix& p) {
    return Injection(p.cols(),
                     std::vector<std::size_t>(p.row_to_col().begin(), p.row_to_col().end()));
}

RealVector apply_pullback(const CompositionMatrix& p, const RealVector& f) {
    if (f.size() != p.cols()) {
        throw std::invalid_argument("apply_pullback: vector length " + std::to_string(f.size()) +
                                    " does not match column count " + std::to_string(p.cols()));
    }
    RealVector out(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        out[i] = f[p.column_of_row(i)];
    }
    return out;
}

RealVector apply_pushforward(const CompositionMatrix& p, const RealVector& g) {
    if (g.size() != p.rows()) {
        throw std::invalid_argument("apply_pushforward: vector length " + std::to_string(g.size()) +
                                    " does not match row count " + std::to_string(p.rows()));
    }
    RealVector out(p.cols(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        out[p.column_of_row(i)] = g[i];
    }
    return out;
}

RealVector hadamard(const RealVector& f, const RealVector& g) {
    if (f.size() != g.size()) {
        throw std::invalid_argument("hadamard: length mismatch");
    }
    RealVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] * g[i];
    }
    return out;
}

CompositionMatrix compose(const CompositionMatrix& outer, const CompositionMatrix& inner) {
    if (outer.cols() != inner.rows()) {
        throw std::invalid_argument("compose: outer has " + std::to_string(outer.cols()) +
                                    " columns but inner has " + std::to_string(inner.rows()) +
                                    " rows");
    }
    std::vector<std::size_t> row_to_col(outer.rows());
    for (std::size_t i = 0; i < outer.rows(); ++i) {
        row_to_col[i] = inner.column_of_row(outer.column_of_row(i));
    }
    return CompositionMatrix(inner.cols(), std::move(row_to_col));
}

DenseRealMatrix to_dense(const CompositionMatrix& p) {
    DenseRealMatrix d(p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        d(i, p.column_of_row(i)) = 1.0;
    }
    return d;
}

double linf_norm(const RealVector& v) {
    double m = 0.0;
    for (double x : v) {
        const double a = std::fabs(x);
        if (a > m) m = a;
    }
    return m;
}

}  // namespace compmat
