#pragma once

#include <cstdint>

#include "compmat/classify.hpp"
#include "compmat/core.hpp"
#include "compmat/witness.hpp"

namespace compmat {

enum class RecoveryMode { rowwise, injective };

const char* to_string(RecoveryMode mode);

/// Projection of a noisy real matrix onto a composition matrix.
///
/// score is the sum of the selected input entries (row order); residual is
/// multiplicativity_score of the *input*, measuring how far it was from
/// satisfying the multiplicative identity; ties_broken counts rows where
/// several columns were equally good and the smallest index won.
struct RecoveryResult {
    CompositionMatrix matrix;
    RecoveryMode mode;
    double score = 0.0;
    double residual = 0.0;
    std::size_t ties_broken = 0;
};

/// Picks each row's argmax column (smallest index on ties). Fails with a
/// column-conflict witness when two rows prefer the same column -- by
/// design there is no silent repair, since a conflict means the underlying
/// estimated map was not injective. Fails with bad-shape when m > n.
Expected<RecoveryResult> project_rowwise(const DenseRealMatrix& c, int probes = 64,
                                         std::uint64_t seed = 0);

/// Maximizes the score over all injections (optimal assignment, augmenting
/// paths with potentials). Among score-optimal assignments returns the
/// lexicographically smallest row_to_col; exact whenever the input entries
/// admit exact float arithmetic (0/1 or integer data), deterministic always.
/// Fails with bad-shape when m > n.
Expected<RecoveryResult> project_injective(const DenseRealMatrix& c, int probes = 64,
                                           std::uint64_t seed = 0);

/// Mean over `probes` seeded random pairs (f, g), entries i.i.d. uniform in
/// [-1, 1), of multiplicative_residual(c, f, g) normalized by
/// max(1, |f|_inf) * max(1, |g|_inf). Zero exactly on composition matrices.
/// Probe k draws from its own generator seeded by the k-th output of
/// SplitMix64(seed), so results do not depend on evaluation interleaving.
double multiplicativity_score(const DenseRealMatrix& c, int probes, std::uint64_t seed);

}  // namespace compmat
