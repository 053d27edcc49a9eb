#include "compmat/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace compmat {

namespace {

bool grid_contains(const std::vector<double>& grid, double v) {
    for (double g : grid) {
        if (g == v) return true;
    }
    return false;
}

// |grid|^cells, or nullopt on overflow of the per-shape ceiling.
std::optional<std::uint64_t> pow_checked(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > kMaxEnumerationPerShape / base) return std::nullopt;
        r *= base;
    }
    return r;
}

RealVector basis_vector(std::size_t len, std::size_t k) {
    RealVector e(len, 0.0);
    e[k] = 1.0;
    return e;
}

DenseRealMatrix matrix_from_pattern(std::size_t m, std::size_t n,
                                    const std::vector<double>& grid, std::uint64_t pattern) {
    DenseRealMatrix a(m, n);
    const std::uint64_t g = grid.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = grid[pattern % g];
            pattern /= g;
        }
    }
    return a;
}

// Literal evaluation of "P(f.g) = (Pf).(Pg) for all f, g" on every basis
// pair, then on `spots` random pairs. All residuals must vanish exactly.
bool multiplicative_identity_on_basis(const DenseRealMatrix& a, SplitMix64& gen, int spots) {
    const std::size_t n = a.cols();
    for (std::size_t j = 0; j < n; ++j) {
        const RealVector ej = basis_vector(n, j);
        for (std::size_t k = 0; k < n; ++k) {
            if (multiplicative_residual(a, ej, basis_vector(n, k)) != 0.0) return false;
        }
    }
    for (int s = 0; s < spots; ++s) {
        const RealVector f = random_uniform_vector(n, gen);
        const RealVector g = random_uniform_vector(n, gen);
        if (multiplicative_residual(a, f, g) != 0.0) return false;
    }
    return true;
}

bool diag_commutation_on_basis(const DenseRealMatrix& a) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (diag_commutation_residual(a, basis_vector(a.cols(), j)) != 0.0) return false;
    }
    return true;
}

bool transpose_diag_on_basis(const DenseRealMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (transpose_diag_residual(a, basis_vector(a.rows(), i)) != 0.0) return false;
    }
    return true;
}

enum class SweepKind { Row, Column };

SweepReport run_sweep(const SweepConfig& cfg, SweepKind kind) {
    cfg.validate();
    constexpr int kSpotChecks = 2;
    SweepReport report;
    SplitMix64 gen(cfg.seed);
    for (std::size_t m = 1; m <= cfg.max_m; ++m) {
        for (std::size_t n = 1; n <= cfg.max_n; ++n) {
            if (m * n > cfg.max_cells) continue;
            const auto count = pow_checked(cfg.real_grid.size(), m * n);
            if (!count) {
                throw std::invalid_argument("sweep: enumeration of shape " + std::to_string(m) +
                                            "x" + std::to_string(n) + " exceeds the per-shape " +
                                            "ceiling; reduce max_cells or the grid");
            }
            ++report.shapes_checked;
            for (std::uint64_t pattern = 0; pattern < *count; ++pattern) {
                const DenseRealMatrix a = matrix_from_pattern(m, n, cfg.real_grid, pattern);
                ++report.matrices_checked;

                bool definition_holds = false;
                bool mult = false;
                bool diag = false;
                const auto bin = binarize(a, Tolerance::exact());
                if (kind == SweepKind::Row) {
                    definition_holds = bin.ok() && is_row_permutation_like(bin.value()).ok;
                    mult = multiplicative_identity_on_basis(a, gen, kSpotChecks);
                    diag = diag_commutation_on_basis(a);
                } else {
                    definition_holds = bin.ok() && is_column_permutation_like(bin.value()).ok;
                    const DenseRealMatrix at = a.transposed();
                    mult = multiplicative_identity_on_basis(at, gen, kSpotChecks);
                    diag = transpose_diag_on_basis(a);
                }

                if (definition_holds != mult || definition_holds != diag) {
                    report.counterexample =
                        SweepCounterexample{m, n, pattern, a, definition_holds, mult, diag};
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace

void SweepConfig::validate() const {
    if (max_m == 0 || max_n == 0) {
        throw std::invalid_argument("SweepConfig: max_m and max_n must be positive");
    }
    if (max_cells > kMaxEnumerationCells) {
        throw std::invalid_argument("SweepConfig: max_cells must not exceed " +
                                    std::to_string(kMaxEnumerationCells));
    }
    if (real_grid.empty()) {
        throw std::invalid_argument("SweepConfig: real_grid must be nonempty");
    }
    for (double v : real_grid) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("SweepConfig: real_grid entries must be finite");
        }
    }
    if (!grid_contains(real_grid, 0.0) || !grid_contains(real_grid, 1.0)) {
        throw std::invalid_argument("SweepConfig: real_grid must contain 0 and 1");
    }
}

std::uint64_t binary_matrix_count(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) {
        throw std::invalid_argument("binary_matrix_count: dimensions must be positive");
    }
    if (m * n > kMaxEnumerationCells) {
        throw std::invalid_argument("binary_matrix_count: " + std::to_string(m) + "x" +
                                    std::to_string(n) + " exceeds the enumeration ceiling of " +
                                    std::to_string(kMaxEnumerationCells) + " cells");
    }
    return std::uint64_t(1) << (m * n);
}

BinaryMatrix binary_matrix_from_pattern(std::size_t m, std::size_t n, std::uint64_t pattern) {
    BinaryMatrix b(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b.set(i, j, (pattern >> (i * n + j)) & 1u);
        }
    }
    return b;
}

ClassCounts count_classes(std::size_t m, std::size_t n) {
    ClassCounts counts;
    counts.m = m;
    counts.n = n;
    for_each_binary(m, n, [&](std::uint64_t, const BinaryMatrix& b) {
        const ClassificationReport r = classify_full(b.to_dense(), Tolerance::exact());
        if (r.is_row_permutation_like) ++counts.n_row_permutation_like;
        if (r.is_column_permutation_like) ++counts.n_column_permutation_like;
        if (r.is_row_permutation_like && r.is_column_permutation_like) ++counts.n_both;
        if (r.is_composition_matrix) ++counts.n_composition;
    });
    return counts;
}

std::uint64_t row_permutation_like_count(std::size_t m, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < m; ++i) r *= (n + 1);
    return r;
}

std::uint64_t column_permutation_like_count(std::size_t m, std::size_t n) {
    return row_permutation_like_count(n, m);
}

std::uint64_t composition_matrix_count(std::size_t m, std::size_t n) {
    if (m > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < m; ++i) r *= (n - i);
    return r;
}

SweepReport row_characterization_sweep(const SweepConfig& cfg) {
    return run_sweep(cfg, SweepKind::Row);
}

SweepReport column_characterization_sweep(const SweepConfig& cfg) {
    return run_sweep(cfg, SweepKind::Column);
}

Injection random_injection(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m == 0 || m > n) {
        throw std::invalid_argument("random_injection: need 1 <= m <= n");
    }
    SplitMix64 gen(seed);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen.next_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    return Injection(n, std::move(pool));
}

RealVector random_uniform_vector(std::size_t len, SplitMix64& gen) {
    RealVector v(len);
    for (auto& x : v) x = gen.next_symmetric();
    return v;
}

}  // namespace compmat
