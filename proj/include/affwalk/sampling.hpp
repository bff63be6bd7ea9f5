#pragma once

#include <vector>

#include "affwalk/group.hpp"
#include "affwalk/measure.hpp"
#include "affwalk/rng.hpp"

namespace affwalk {

struct SampledGenerators {
    std::vector<u32> mats;    // distinct generating matrices of SL_d(F_p)
    std::vector<u64> lifted;  // one affine lift per matrix, same order
    ElementSet symmetric_set; // lifts together with their inverses
    GroupMeasure measure;     // uniform on symmetric_set
    u64 attempts = 0;         // rejection rounds consumed
};

// Draws `count` distinct random SL matrices until they generate SL_d(F_p),
// lifts each with an independent uniform translation, and keeps only lifted
// sets whose symmetrization generates the full affine group with a
// nondegenerate point action (alpha < 1). Throws hypothesis_error after
// max_attempts rejection rounds.
SampledGenerators sample_lifted_generators(const GroupContextPtr& ctx, u32 count, Rng& rng,
                                           u64 max_attempts = 10000);

// Uniform measure on a random symmetric generating set: sampled as above,
// convenience entry point for diagnostics over many measures.
GroupMeasure sample_generating_measure(const GroupContextPtr& ctx, u32 count, Rng& rng,
                                       u64 max_attempts = 10000);

// Random symmetric probability measure supported on `atoms` random elements
// together with their inverses, with random masses.
GroupMeasure random_symmetric_measure(const GroupContextPtr& ctx, u32 atoms, Rng& rng);

// Random symmetric subset: `atoms` random elements closed under inverses,
// optionally resampled until it generates the full group.
ElementSet random_symmetric_set(const GroupContextPtr& ctx, u32 atoms, Rng& rng,
                                bool require_generating = false, u64 max_attempts = 10000);

// Random density on F_p^d with no point above the given fraction of its L2
// norm (resampled until the constraint holds).
VectorMeasure random_spread_density(u32 p, u32 d, Rng& rng, double max_atom_fraction,
                                    u64 max_attempts = 10000);

} // namespace affwalk
