#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "compmat/oracle.hpp"
#include "compmat/recover.hpp"
#include "compmat/rng.hpp"
#include "test_support.hpp"

using namespace compmat;
using testsupport::brute_force_max_assignment;

namespace {

DenseRealMatrix random_matrix(std::size_t m, std::size_t n, SplitMix64& gen) {
    DenseRealMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c(i, j) = gen.next_symmetric();
        }
    }
    return c;
}

std::vector<std::size_t> selection_of(const RecoveryResult& r) {
    return {r.matrix.row_to_col().begin(), r.matrix.row_to_col().end()};
}

}  // namespace

TEST_SUITE("project_rowwise") {
    TEST_CASE("composition matrices are fixed points") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            SplitMix64 gen(seed);
            const std::size_t n = 1 + gen.next_below(10);
            const std::size_t m = 1 + gen.next_below(n);
            const CompositionMatrix p = injection_to_matrix(random_injection(m, n, seed));
            const auto r = project_rowwise(to_dense(p), 4, seed);
            REQUIRE(r.ok());
            CHECK(r.value().matrix == p);
            CHECK(r.value().score == static_cast<double>(m));
            CHECK(r.value().ties_broken == 0);
            CHECK(r.value().residual == 0.0);
        }
    }

    TEST_CASE("sub-gap noise does not move the argmax") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            SplitMix64 gen(seed);
            const std::size_t n = 2 + gen.next_below(8);
            const std::size_t m = 1 + gen.next_below(n);
            const CompositionMatrix p = injection_to_matrix(random_injection(m, n, seed));
            DenseRealMatrix noisy = to_dense(p);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    noisy(i, j) += 0.39 * gen.next_symmetric();
                }
            }
            const auto r = project_rowwise(noisy, 1, seed);
            REQUIRE(r.ok());
            CHECK(r.value().matrix == p);
        }
    }

    TEST_CASE("column conflicts are reported, not repaired") {
        const auto r = project_rowwise({{1, 0}, {1, 0}});
        REQUIRE(!r.ok());
        CHECK(r.failure().clause == "column-conflict");
        CHECK(r.failure().indices == std::vector<std::size_t>{1, 1, 2});
    }

    TEST_CASE("bad shape") {
        const auto r = project_rowwise({{1}, {0}, {0}});
        REQUIRE(!r.ok());
        CHECK(r.failure().clause == "bad-shape");
    }

    TEST_CASE("ties pick the smallest column and are counted") {
        const auto r = project_rowwise({{1, 1}, {0, 1}});
        REQUIRE(r.ok());
        CHECK(selection_of(r.value()) == std::vector<std::size_t>{0, 1});
        CHECK(r.value().ties_broken == 1);
        CHECK(r.value().score == 2.0);
    }

    TEST_CASE("argmax is invariant under row scaling and shifting") {
        SplitMix64 gen(5);
        int compared = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + gen.next_below(5);
            const std::size_t m = 1 + gen.next_below(n);
            const DenseRealMatrix c = random_matrix(m, n, gen);
            DenseRealMatrix scaled = c;
            const std::size_t row = gen.next_below(m);
            const double scale = 0.5 + gen.next_unit();  // positive
            const double shift = gen.next_symmetric();
            for (std::size_t j = 0; j < n; ++j) {
                scaled(row, j) = scale * c(row, j) + shift;
            }
            const auto a = project_rowwise(c, 1, trial);
            const auto b = project_rowwise(scaled, 1, trial);
            if (a.ok() && b.ok()) {
                CHECK(a.value().matrix == b.value().matrix);
                ++compared;
            }
        }
        CHECK(compared > 20);
    }
}

TEST_SUITE("project_injective") {
    TEST_CASE("composition matrices are fixed points with zero residual") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            SplitMix64 gen(seed);
            const std::size_t n = 1 + gen.next_below(10);
            const std::size_t m = 1 + gen.next_below(n);
            const CompositionMatrix p = injection_to_matrix(random_injection(m, n, seed));
            const auto r = project_injective(to_dense(p), 4, seed);
            REQUIRE(r.ok());
            CHECK(r.value().matrix == p);
            CHECK(r.value().score == static_cast<double>(m));
            CHECK(r.value().residual == 0.0);
        }
    }

    TEST_CASE("frozen small examples") {
        const auto conflict = project_injective({{1, 0}, {1, 0}});
        REQUIRE(conflict.ok());
        CHECK(selection_of(conflict.value()) == std::vector<std::size_t>{0, 1});
        CHECK(conflict.value().score == 1.0);
        CHECK(conflict.value().ties_broken == 1);

        // Brute force over both permutations: 0.9 + 0.1 = 1.0 loses to
        // 0.8 + 0.7 = 1.5.
        const auto cross = project_injective({{0.9, 0.8}, {0.7, 0.1}});
        REQUIRE(cross.ok());
        CHECK(selection_of(cross.value()) == std::vector<std::size_t>{1, 0});
        CHECK(cross.value().score == 1.5);
    }

    TEST_CASE("bad shape") {
        CHECK(!project_injective({{1}, {0}, {0}}).ok());
    }

    TEST_CASE("matches brute force on random real matrices") {
        SplitMix64 gen(99);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 1 + gen.next_below(6);
            const std::size_t m = 1 + gen.next_below(n);
            const DenseRealMatrix c = random_matrix(m, n, gen);
            const auto r = project_injective(c, 1, trial);
            REQUIRE(r.ok());
            const auto best = brute_force_max_assignment(c);
            CHECK(r.value().score == best.score);
            CHECK(selection_of(r.value()) == best.sel);
        }
    }

    TEST_CASE("matches brute force ties on small integer matrices") {
        SplitMix64 gen(123);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 1 + gen.next_below(5);
            const std::size_t m = 1 + gen.next_below(n);
            DenseRealMatrix c(m, n);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    c(i, j) = static_cast<double>(gen.next_below(3));  // entries 0, 1, 2
                }
            }
            const auto r = project_injective(c, 1, trial);
            REQUIRE(r.ok());
            const auto best = brute_force_max_assignment(c);
            CHECK(r.value().score == best.score);
            CHECK(selection_of(r.value()) == best.sel);
        }
    }

    TEST_CASE("exhaustive agreement on every small binary matrix") {
        for (std::size_t m = 1; m <= 3; ++m) {
            for (std::size_t n = m; m * n <= 9; ++n) {
                for_each_binary(m, n, [&](std::uint64_t, const BinaryMatrix& b) {
                    const DenseRealMatrix c = b.to_dense();
                    const auto r = project_injective(c, 1, 0);
                    REQUIRE(r.ok());
                    const auto best = brute_force_max_assignment(c);
                    CHECK(r.value().score == best.score);
                    CHECK(selection_of(r.value()) == best.sel);
                });
            }
        }
    }

    TEST_CASE("agrees with project_rowwise whenever the rowwise pick is injective") {
        SplitMix64 gen(7);
        int compared = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + gen.next_below(7);
            const std::size_t m = 1 + gen.next_below(n);
            const DenseRealMatrix c = random_matrix(m, n, gen);
            const auto rowwise = project_rowwise(c, 1, trial);
            if (!rowwise.ok()) continue;
            const auto injective = project_injective(c, 1, trial);
            REQUIRE(injective.ok());
            CHECK(injective.value().matrix == rowwise.value().matrix);
            CHECK(injective.value().score == rowwise.value().score);
            ++compared;
        }
        CHECK(compared > 20);
    }

    TEST_CASE("score equals the sum of selected entries") {
        SplitMix64 gen(31);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 1 + gen.next_below(6);
            const std::size_t m = 1 + gen.next_below(n);
            const DenseRealMatrix c = random_matrix(m, n, gen);
            const auto r = project_injective(c, 1, trial);
            REQUIRE(r.ok());
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += c(i, r.value().matrix.column_of_row(i));
            CHECK(r.value().score == s);
        }
    }
}

TEST_SUITE("multiplicativity_score") {
    TEST_CASE("zero exactly on composition matrices") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            SplitMix64 gen(seed);
            const std::size_t n = 1 + gen.next_below(15);
            const std::size_t m = 1 + gen.next_below(n);
            const DenseRealMatrix d = to_dense(injection_to_matrix(random_injection(m, n, seed)));
            CHECK(multiplicativity_score(d, 8, seed) == 0.0);
        }
    }

    TEST_CASE("positive on matrices failing the certificate") {
        CHECK(multiplicativity_score({{2}}, 16, 0) > 0.0);
        CHECK(multiplicativity_score({{1, 1}}, 16, 0) > 0.0);
        CHECK(multiplicativity_score({{0.5, 0}}, 16, 0) > 0.0);
        // Residual |2fg - 4fg| = 2|fg| never exceeds 2 for entries in [-1, 1).
        CHECK(multiplicativity_score({{2}}, 16, 0) <= 2.0);
    }

    TEST_CASE("deterministic in the seed") {
        const DenseRealMatrix c{{0.3, 0.7}, {0.2, 0.9}};
        CHECK(multiplicativity_score(c, 32, 5) == multiplicativity_score(c, 32, 5));
        CHECK(multiplicativity_score(c, 32, 5) != multiplicativity_score(c, 32, 6));
    }

    TEST_CASE("probe count guard") {
        CHECK_THROWS_AS(multiplicativity_score({{1}}, 0, 0), std::invalid_argument);
    }
}
