#include "acceptance.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <utility>
#include <vector>

#include "affwalk/bg_diag.hpp"
#include "affwalk/rng.hpp"
#include "affwalk/sampling.hpp"
#include "affwalk/spectral.hpp"

namespace acceptance {

namespace {

using namespace affwalk;

} // namespace

// Trace of the walk operator's Gram matrix through three independent routes,
// and the eigenvalue multiplicity structure of the 3000-dimensional regular
// representation at p=5.
Result criterion7() {
    constexpr double kTol = 1e-8;

    Result r;
    Rng rng(derive_seed(0xd1a9u, 7));
    auto ctx3 = GroupContext::create(3, 2);
    auto ctx5 = GroupContext::create(5, 2);
    int bad = 0;

    for (int i = 0; i < 50; ++i) {
        const auto& ctx = (i % 5 < 3) ? ctx3 : ctx5;
        GroupMeasure mu = random_symmetric_measure(ctx, 1 + static_cast<u32>(rng.below(3)), rng);
        try {
            TraceIdentityReport t = trace_identity_check(ctx, mu);
            if (t.max_discrepancy > kTol) ++bad;
            if (!t.via_frobenius) ++bad; // both groups admit the dense route
            double direct = 0.0;
            for (const auto& [gi, m] : mu.masses) direct += m * m;
            direct *= double(ctx->group_order());
            if (std::fabs(t.via_l2 - direct) > kTol * std::max(1.0, std::fabs(direct))) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }

    // Every eigenvalue cluster away from 1 must have multiplicity at least
    // (p-1)/2 = 2, with each dense eigensolve finishing within 60 s.
    double worst_solve = 0.0;
    for (int i = 0; i < 5; ++i) {
        GroupMeasure mu = sample_lifted_generators(ctx5, 2, rng).measure;
        auto t0 = std::chrono::steady_clock::now();
        MultiplicityReport rep = multiplicity_check(ctx5, mu, 1e-6);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst_solve = std::max(worst_solve, secs);
        if (rep.dim != 3000 || rep.irrep_bound != 2 || !rep.generates) ++bad;
        if (!rep.passed || !rep.top_simple_ok || !rep.multiplicities_ok) ++bad;
        for (const auto& c : rep.clusters)
            if (!c.contains_one && c.multiplicity < 2) ++bad;
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "50 trace identities, 5 multiplicity reports, slowest eigensolve %.1f s",
                  worst_solve);
    r.note(buf);
    if (worst_solve > 60.0) r.fail("dense eigensolve exceeded 60 s");
    if (bad > 0) {
        char b2[64];
        std::snprintf(b2, sizeof(b2), "%d violations", bad);
        r.fail(b2);
    }
    return r;
}

// L2 distance of the convolution powers from the uniform measure against the
// spectral bound e^{-l (1 - ||L0||)}, with the walk recomputed by
// definitional composition.
Result criterion8() {
    Result r;
    Rng rng(derive_seed(0x3141u, 8));
    auto ctx = GroupContext::create(3, 2);
    const double uniform_mass = 1.0 / double(ctx->group_order());
    int bad = 0, certified_rows = 0;

    for (int i = 0; i < 5; ++i) {
        GroupMeasure mu = sample_lifted_generators(ctx, 2, rng).measure;
        MixingProfile prof = mixing_profile(ctx, mu, 150);
        if (!prof.all_ok) ++bad;

        std::vector<std::pair<oracle::Elem, double>> atoms = oracle::measure_pairs(*ctx, mu);
        std::map<u64, std::pair<oracle::Elem, double>> cur;
        oracle::Elem id = oracle::from_lib(ctx->element_at(ctx->identity_index()));
        cur[oracle::key_of(id, 3)] = {id, 1.0};

        for (size_t l = 0; l < prof.rows.size(); ++l) {
            const MixingRow& row = prof.rows[l];
            if (row.l != l) ++bad;
            if (std::fabs(row.bound - std::exp(-double(l) * prof.walk_gap)) > 1e-12) ++bad;

            double dist_sq = 0.0;
            for (u64 gi = 0; gi < ctx->group_order(); ++gi) {
                u64 key = oracle::key_of(oracle::from_lib(ctx->element_at(gi)), 3);
                auto it = cur.find(key);
                double mass = it == cur.end() ? 0.0 : it->second.second;
                dist_sq += (mass - uniform_mass) * (mass - uniform_mass);
            }
            if (std::fabs(std::sqrt(dist_sq) - row.distance) > 1e-9) ++bad;

            if (row.bound > 1e-8) {
                ++certified_rows;
                if (!row.certified) ++bad;
                if (row.distance > row.bound + 1e-10) ++bad;
            }

            std::map<u64, std::pair<oracle::Elem, double>> next;
            for (const auto& [key, gm] : cur)
                for (const auto& [h, hm] : atoms) {
                    oracle::Elem gh = oracle::compose(gm.first, h, 3);
                    auto& slot = next[oracle::key_of(gh, 3)];
                    slot.first = gh;
                    slot.second += gm.second * hm;
                }
            cur = std::move(next);
        }
    }

    char buf[96];
    std::snprintf(buf, sizeof(buf), "5 walks, 151 levels each, %d rows above the 1e-8 floor",
                  certified_rows);
    r.note(buf);
    if (certified_rows == 0) r.fail("bound never exceeded the decidability floor");
    if (bad > 0) {
        char b2[64];
        std::snprintf(b2, sizeof(b2), "%d violations", bad);
        r.fail(b2);
    }
    return r;
}

} // namespace acceptance
