#include "affwalk/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace affwalk {

namespace {

std::vector<u32> draw_distinct_mats(const GroupContextPtr& ctx, u32 count, Rng& rng) {
    if (count == 0) throw std::invalid_argument("generator count must be positive");
    if (count > ctx->sl_order()) throw std::invalid_argument("generator count exceeds group order");
    std::vector<u32> mats;
    while (mats.size() < count) {
        u32 m = static_cast<u32>(rng.below(ctx->sl_order()));
        if (std::find(mats.begin(), mats.end(), m) == mats.end()) mats.push_back(m);
    }
    return mats;
}

} // namespace

SampledGenerators sample_lifted_generators(const GroupContextPtr& ctx, u32 count, Rng& rng,
                                           u64 max_attempts) {
    if (!ctx) throw std::invalid_argument("null group context");
    for (u64 attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<u32> mats = draw_distinct_mats(ctx, count, rng);
        if (!sl_generates(*ctx, mats)) continue;

        std::vector<u64> lifted;
        lifted.reserve(mats.size());
        for (u32 m : mats) {
            u64 v = rng.below(ctx->space_size());
            lifted.push_back(v * ctx->sl_order() + m);
        }
        ElementSet sym = symmetrize(*ctx, ElementSet::from_indices(lifted));
        if (!generates_whole_group(*ctx, sym, false)) continue;

        GroupMeasure mu = GroupMeasure::uniform_on(*ctx, sym);
        if (alpha(*ctx, mu) >= 1.0 - 1e-12) continue;

        SampledGenerators out;
        out.mats = std::move(mats);
        out.lifted = std::move(lifted);
        out.symmetric_set = std::move(sym);
        out.measure = std::move(mu);
        out.attempts = attempt;
        return out;
    }
    throw hypothesis_error("generator sampling exhausted its rejection budget");
}

GroupMeasure sample_generating_measure(const GroupContextPtr& ctx, u32 count, Rng& rng,
                                       u64 max_attempts) {
    return sample_lifted_generators(ctx, count, rng, max_attempts).measure;
}

GroupMeasure random_symmetric_measure(const GroupContextPtr& ctx, u32 atoms, Rng& rng) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (atoms == 0 || atoms > ctx->group_order())
        throw std::invalid_argument("atom count out of range");

    GroupMeasure mu;
    mu.p = ctx->p();
    mu.d = ctx->d();
    while (mu.masses.size() < atoms) {
        u64 gi = rng.below(ctx->group_order());
        mu.masses.try_emplace(gi, 0.0);
    }
    double total = 0.0;
    for (auto& [gi, mass] : mu.masses) {
        mass = rng.uniform(0.1, 1.0);
        total += mass;
    }
    for (auto& [gi, mass] : mu.masses) mass /= total;

    GroupMeasure sym;
    sym.p = mu.p;
    sym.d = mu.d;
    for (const auto& [gi, mass] : mu.masses) {
        sym.masses[gi] += 0.5 * mass;
        sym.masses[ctx->inverse_idx(gi)] += 0.5 * mass;
    }
    return sym;
}

ElementSet random_symmetric_set(const GroupContextPtr& ctx, u32 atoms, Rng& rng,
                                bool require_generating, u64 max_attempts) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (atoms == 0 || atoms > ctx->group_order())
        throw std::invalid_argument("atom count out of range");
    for (u64 attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<u64> picks;
        while (picks.size() < atoms) {
            u64 gi = rng.below(ctx->group_order());
            if (std::find(picks.begin(), picks.end(), gi) == picks.end()) picks.push_back(gi);
        }
        ElementSet sym = symmetrize(*ctx, ElementSet::from_indices(picks));
        if (!require_generating || generates_whole_group(*ctx, sym, false)) return sym;
    }
    throw hypothesis_error("symmetric set sampling exhausted its rejection budget");
}

VectorMeasure random_spread_density(u32 p, u32 d, Rng& rng, double max_atom_fraction,
                                    u64 max_attempts) {
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) n *= p;
    for (u64 attempt = 1; attempt <= max_attempts; ++attempt) {
        VectorMeasure eta;
        eta.p = p;
        eta.d = d;
        eta.density.resize(n);
        double total = 0.0;
        for (auto& v : eta.density) {
            v = rng.uniform(0.0, 1.0);
            total += v;
        }
        for (auto& v : eta.density) v /= total;
        double l2 = lq_norm(eta, 2.0);
        double worst = *std::max_element(eta.density.begin(), eta.density.end());
        if (worst <= max_atom_fraction * l2) return eta;
    }
    throw hypothesis_error("density sampling exhausted its rejection budget");
}

} // namespace affwalk
