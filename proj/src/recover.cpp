#include "compmat/recover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "compmat/rng.hpp"

namespace compmat {

namespace {

constexpr const char* kBadShape = "bad-shape";
constexpr const char* kColumnConflict = "column-conflict";

// Rectangular min-cost assignment (rows <= cols) by shortest augmenting
// paths with potentials. Deterministic: columns are scanned ascending and
// only strict improvements move the minimum, so the smallest index wins
// every internal tie. On exit the potentials are dual-feasible
// (u[i] + v[j] <= cost[i][j], equality on matched edges).
struct AssignmentSolution {
    std::vector<std::size_t> row_to_col;
    std::vector<double> u;
    std::vector<double> v;
};

AssignmentSolution solve_min_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t m = cost.size();
    const std::size_t n = cost.empty() ? 0 : cost[0].size();
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t no_row = m;
    const std::size_t virtual_col = n;

    std::vector<double> u(m + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> col_to_row(n + 1, no_row);
    std::vector<std::size_t> way(n + 1, virtual_col);

    for (std::size_t i = 0; i < m; ++i) {
        col_to_row[virtual_col] = i;
        std::size_t j0 = virtual_col;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = col_to_row[j0];
            double delta = inf;
            std::size_t j1 = virtual_col;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[col_to_row[j]] += delta;
                    v[j] -= delta;
                } else if (minv[j] < inf) {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_to_row[j0] != no_row);
        do {
            const std::size_t j1 = way[j0];
            col_to_row[j0] = col_to_row[j1];
            j0 = j1;
        } while (j0 != virtual_col);
    }

    AssignmentSolution sol;
    sol.row_to_col.assign(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (col_to_row[j] != no_row) sol.row_to_col[col_to_row[j]] = j;
    }
    u.resize(m);
    v.resize(n);
    sol.u = std::move(u);
    sol.v = std::move(v);
    return sol;
}

// Best assignment of `rows` into `cols` maximizing the selected entries of
// c; returns the chosen column per row (parallel to `rows`).
std::vector<std::size_t> solve_max_subproblem(const DenseRealMatrix& c,
                                              const std::vector<std::size_t>& rows,
                                              const std::vector<std::size_t>& cols) {
    std::vector<std::vector<double>> cost(rows.size(), std::vector<double>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) {
            cost[a][b] = -c(rows[a], cols[b]);
        }
    }
    const AssignmentSolution sol = solve_min_assignment(cost);
    std::vector<std::size_t> chosen(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
        chosen[a] = cols[sol.row_to_col[a]];
    }
    return chosen;
}

double selection_score(const DenseRealMatrix& c, const std::vector<std::size_t>& sel) {
    double s = 0.0;
    for (std::size_t i = 0; i < sel.size(); ++i) {
        s += c(i, sel[i]);
    }
    return s;
}

double tail_score(const DenseRealMatrix& c, const std::vector<std::size_t>& sel,
                  std::size_t from) {
    double s = 0.0;
    for (std::size_t i = from; i < sel.size(); ++i) {
        s += c(i, sel[i]);
    }
    return s;
}

}  // namespace

const char* to_string(RecoveryMode mode) {
    return mode == RecoveryMode::rowwise ? "rowwise" : "injective";
}

Expected<RecoveryResult> project_rowwise(const DenseRealMatrix& c, int probes,
                                         std::uint64_t seed) {
    const std::size_t m = c.rows();
    const std::size_t n = c.cols();
    if (m > n) {
        return Witness{kBadShape, {m, n}, std::nullopt};
    }

    std::vector<std::size_t> sel(m);
    std::size_t ties = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < n; ++j) {
            if (c(i, j) > c(i, best)) best = j;
        }
        std::size_t hits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (c(i, j) == c(i, best)) ++hits;
        }
        if (hits > 1) ++ties;
        sel[i] = best;
    }

    std::vector<std::size_t> first_row(n, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (first_row[sel[i]] != m) {
            // All rows drawn to the conflicted column, 1-based.
            const std::size_t j = sel[i];
            Witness w{kColumnConflict, {j + 1}, std::nullopt};
            for (std::size_t r = 0; r < m; ++r) {
                if (sel[r] == j) w.indices.push_back(r + 1);
            }
            return w;
        }
        first_row[sel[i]] = i;
    }

    RecoveryResult result{CompositionMatrix(n, sel), RecoveryMode::rowwise,
                          selection_score(c, sel), multiplicativity_score(c, probes, seed), ties};
    return result;
}

Expected<RecoveryResult> project_injective(const DenseRealMatrix& c, int probes,
                                           std::uint64_t seed) {
    const std::size_t m = c.rows();
    const std::size_t n = c.cols();
    if (m > n) {
        return Witness{kBadShape, {m, n}, std::nullopt};
    }

    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cost[i][j] = -c(i, j);
        }
    }
    const AssignmentSolution base = solve_min_assignment(cost);

    // Lexicographic tightening. Row by row, consider every available column
    // whose edge is tight under the optimal potentials (only tight edges can
    // appear in an optimal assignment); re-solve the remainder for each and
    // keep the smallest column that still reaches the incumbent value. Rows
    // with a single candidate cost nothing, so untied instances skip
    // straight through.
    std::vector<std::size_t> sel = base.row_to_col;
    std::vector<char> available(n, 1);
    std::size_t ties = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::size_t> tail_rows;
        for (std::size_t r = i + 1; r < m; ++r) tail_rows.push_back(r);

        std::size_t best_j = sel[i];
        double best_val = c(i, sel[i]) + tail_score(c, sel, i + 1);
        std::size_t hits = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (!available[j] || j == sel[i]) continue;
            if (cost[i][j] - base.u[i] - base.v[j] != 0.0) continue;  // not tight
            std::vector<std::size_t> tail_cols;
            for (std::size_t jc = 0; jc < n; ++jc) {
                if (available[jc] && jc != j) tail_cols.push_back(jc);
            }
            std::vector<std::size_t> tail_sel;
            double val = c(i, j);
            if (!tail_rows.empty()) {
                tail_sel = solve_max_subproblem(c, tail_rows, tail_cols);
                double tail = 0.0;
                for (std::size_t r = 0; r < tail_rows.size(); ++r) tail += c(tail_rows[r], tail_sel[r]);
                val += tail;
            }
            if (val > best_val) {
                best_val = val;
                best_j = j;
                hits = 1;
                for (std::size_t r = 0; r < tail_rows.size(); ++r) sel[tail_rows[r]] = tail_sel[r];
                sel[i] = j;
            } else if (val == best_val) {
                ++hits;
                if (j < best_j) {
                    best_j = j;
                    for (std::size_t r = 0; r < tail_rows.size(); ++r) sel[tail_rows[r]] = tail_sel[r];
                    sel[i] = j;
                }
            }
        }
        if (hits > 1) ++ties;
        available[sel[i]] = 0;
    }

    RecoveryResult result{CompositionMatrix(n, sel), RecoveryMode::injective,
                          selection_score(c, sel), multiplicativity_score(c, probes, seed), ties};
    return result;
}

double multiplicativity_score(const DenseRealMatrix& c, int probes, std::uint64_t seed) {
    if (probes < 1) {
        throw std::invalid_argument("multiplicativity_score: probes must be at least 1");
    }
    SplitMix64 master(seed);
    double total = 0.0;
    for (int k = 0; k < probes; ++k) {
        SplitMix64 gen(master.next());
        RealVector f(c.cols()), g(c.cols());
        for (auto& x : f) x = gen.next_symmetric();
        for (auto& x : g) x = gen.next_symmetric();
        const double denom = std::max(1.0, linf_norm(f)) * std::max(1.0, linf_norm(g));
        total += multiplicative_residual(c, f, g) / denom;
    }
    return total / probes;
}

}  // namespace compmat
