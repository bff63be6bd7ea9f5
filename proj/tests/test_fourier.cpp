#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "affwalk/fourier.hpp"
#include "affwalk/rng.hpp"
#include "oracles.hpp"

using namespace affwalk;

namespace {

std::vector<double> random_density(u64 n, Rng& rng) {
    std::vector<double> f(n);
    double total = 0;
    for (auto& v : f) {
        v = rng.next_unit();
        total += v;
    }
    for (auto& v : f) v /= total;
    return f;
}

double dual_max_err(const DualFunction& a, const DualFunction& b) {
    REQUIRE(a.values.size() == b.values.size());
    double worst = 0;
    for (size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

} // namespace

TEST_CASE("transform of point masses and uniform") {
    for (u32 p : {3u, 5u}) {
        u32 d = 2;
        u64 n = u64(p) * p;

        std::vector<double> delta0(n, 0.0);
        delta0[0] = 1.0;
        auto hat0 = dft(p, d, delta0);
        for (const auto& z : hat0.values) CHECK(std::abs(z - cdouble{1.0, 0.0}) < 1e-12);

        std::vector<double> uni(n, 1.0 / double(n));
        auto hatu = dft(p, d, uni);
        CHECK(std::abs(hatu.values[0] - cdouble{1.0, 0.0}) < 1e-12);
        for (u64 xi = 1; xi < n; ++xi) CHECK(std::abs(hatu.values[xi]) < 1e-12);

        for (u64 x : {u64(1), n - 2}) {
            std::vector<double> dx(n, 0.0);
            dx[x] = 1.0;
            auto hat = dft(p, d, dx);
            for (u64 xi = 0; xi < n; ++xi) {
                CHECK(std::abs(std::abs(hat.values[xi]) - 1.0) < 1e-12);
                long long dot = 1LL * (x / p) * (xi / p) + 1LL * (x % p) * (xi % p);
                double ang = -2.0 * M_PI * double(dot % p) / double(p);
                CHECK(std::abs(hat.values[xi] - cdouble{std::cos(ang), std::sin(ang)}) < 1e-12);
            }
        }
    }
}

TEST_CASE("transform agrees with the double-loop oracle and the axis pass") {
    Rng rng(1001);
    for (u32 p : {3u, 5u, 7u}) {
        for (u32 d : {2u, 3u}) {
            if (u64(p) * p * p * p > 3000 && d == 3 && p > 5) continue; // keep unit suite quick
            u64 n = 1;
            for (u32 i = 0; i < d; ++i) n *= p;
            auto f = random_density(n, rng);

            auto lib = dft(p, d, f);
            auto ref = oracle::dft_bruteforce(int(p), int(d), f);
            double worst = 0;
            for (u64 xi = 0; xi < n; ++xi) worst = std::max(worst, std::abs(lib.values[xi] - ref[xi]));
            CHECK(worst < 1e-10);

            if (d == 2 || p <= 5) {
                auto ctx = GroupContext::create(p, d);
                CHECK(dual_max_err(dft_axis(*ctx, f), lib) < 1e-10);
                CHECK(dual_max_err(dft(*ctx, f), lib) == 0.0);
            }
        }
    }
}

TEST_CASE("Plancherel and the convolution-square identity") {
    Rng rng(321);
    for (u32 p : {3u, 5u, 7u}) {
        for (u32 d : {2u, 3u}) {
            u64 n = 1;
            for (u32 i = 0; i < d; ++i) n *= p;
            for (int trial = 0; trial < 4; ++trial) {
                auto eta = random_density(n, rng);
                auto hat = dft(p, d, eta);
                CHECK(lq_norm(eta, 2) == doctest::Approx(lhat_norm(hat, 2)).epsilon(1e-10));

                auto folded = vec_convolve(p, d, eta, vec_reverse(p, d, eta));
                auto lhs = dft(p, d, folded);
                for (u64 xi = 0; xi < n; ++xi) {
                    double want = std::norm(hat.values[xi]);
                    CHECK(std::abs(lhs.values[xi] - cdouble{want, 0.0}) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("dual norms") {
    u32 p = 5, d = 2;
    u64 n = 25;
    DualFunction ones = DualFunction::zero(p, d, true);
    for (auto& z : ones.values) z = 1.0;
    for (double q : {1.0, 2.0, 4.0}) CHECK(lhat_norm(ones, q) == doctest::Approx(1.0));

    std::vector<double> dx(n, 0.0);
    dx[7] = 1.0;
    auto psi = restrict_to_x(dft(p, d, dx));
    CHECK(psi.origin_included == false);
    CHECK(psi.values[0] == cdouble{0.0, 0.0});
    double l4 = lhat_norm(psi, 4);
    CHECK(std::pow(l4, 4) == doctest::Approx(double(n - 1) / double(n)).epsilon(1e-12));
}

TEST_CASE("Mazur map pointwise and in norm") {
    CHECK(mazur_point(cdouble{2.0, 0.0}) == cdouble{4.0, 0.0});
    CHECK(std::abs(mazur_point(std::polar(3.0, 1.2)) - std::polar(9.0, 1.2)) < 1e-12);
    CHECK(mazur_point(cdouble{0.0, 0.0}) == cdouble{0.0, 0.0});

    Rng rng(17);
    std::vector<cdouble> f(40);
    for (auto& z : f) z = std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2 * M_PI));
    auto m = mazur(f);
    double l4 = 0, l2 = 0;
    for (size_t i = 0; i < f.size(); ++i) {
        l4 += std::pow(std::abs(f[i]), 4.0);
        l2 += std::norm(m[i]);
        CHECK(std::abs(m[i] - mazur_point(f[i])) < 1e-14);
    }
    CHECK(std::sqrt(l2) == doctest::Approx(std::sqrt(l4)).epsilon(1e-12));

    DualFunction phi = DualFunction::zero(3, 2, false);
    for (size_t i = 1; i < phi.values.size(); ++i) phi.values[i] = std::polar(1.5, 0.3 * double(i));
    auto mp = mazur(phi);
    CHECK(mp.origin_included == false);
    CHECK(mp.values[0] == cdouble{0.0, 0.0});
}

TEST_CASE("nonconstancy deviation vanishes exactly on flat moduli") {
    u32 p = 5, d = 2;
    std::vector<double> dx(25, 0.0);
    dx[9] = 1.0;
    auto psi = restrict_to_x(dft(p, d, dx));
    CHECK(nonconstancy_deviation(psi) == doctest::Approx(0.0).epsilon(1e-12));

    auto scaled = psi;
    for (auto& z : scaled.values) z *= 0.2; // scale-invariant by normalization
    CHECK(nonconstancy_deviation(scaled) == doctest::Approx(0.0).epsilon(1e-12));

    DualFunction zero = DualFunction::zero(p, d, false);
    CHECK_THROWS(nonconstancy_deviation(zero));

    DualFunction bump = DualFunction::zero(p, d, false);
    bump.values[3] = 1.0;
    CHECK(nonconstancy_deviation(bump) > 0.1);
}

TEST_CASE("dual action convention is resolved and consistent") {
    for (u32 p : {3u, 5u}) {
        auto ctx = GroupContext::create(p, 2);
        const auto& rep = dual_action_convention(*ctx);
        CHECK(rep.err_chosen < 1e-10);
        CHECK(rep.err_rejected > 1e-3);
    }
}

TEST_CASE("dual pushforward identities") {
    auto ctx = GroupContext::create(5, 2);
    Rng rng(2718);

    auto eta0 = random_density(25, rng);
    auto psi0 = dft(*ctx, eta0);

    auto same = dual_pushforward(*ctx, GroupMeasure::dirac(*ctx, ctx->identity_index()), psi0);
    CHECK(dual_max_err(same, psi0) < 1e-12);

    // zero-translation atom permutes coefficients
    u32 mi = ctx->mat_index(SLMatrix(5, 2, {1, 1, 0, 1}));
    auto perm = dual_pushforward(*ctx, GroupMeasure::dirac(*ctx, mi), psi0);
    std::vector<double> before, after;
    for (const auto& z : psi0.values) before.push_back(std::abs(z));
    for (const auto& z : perm.values) after.push_back(std::abs(z));
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    for (size_t i = 0; i < before.size(); ++i) CHECK(before[i] == doctest::Approx(after[i]).epsilon(1e-12));
}

TEST_CASE("dual pushforward matches the spatial walk through the transform") {
    Rng rng(31415);
    for (u32 p : {3u, 5u, 7u}) {
        auto ctx = GroupContext::create(p, 2);
        u64 n = ctx->space_size();
        for (int trial = 0; trial < 6; ++trial) {
            GroupMeasure mu;
            mu.p = p;
            mu.d = 2;
            double total = 0;
            for (int k = 0; k < 4; ++k) {
                double w = rng.uniform(0.2, 1.0);
                mu.masses[rng.below(ctx->group_order())] += w;
                total += w;
            }
            for (auto& [gi, w] : mu.masses) w /= total;

            VectorMeasure eta;
            eta.p = p;
            eta.d = 2;
            eta.density = random_density(n, rng);

            auto spatial = dft(*ctx, act_convolve(*ctx, mu, eta));
            auto dual = dual_pushforward(*ctx, mu, dft(*ctx, eta));
            CHECK(dual_max_err(spatial, dual) < 1e-10);

            // one step never increases the dual L4 norm
            auto psi = restrict_to_x(dft(*ctx, eta));
            auto stepped = dual_pushforward(*ctx, mu, psi);
            CHECK(lhat_norm(stepped, 4) <= lhat_norm(psi, 4) + 1e-12);

            // pointwise domination by the permutation average of moduli
            const auto& conv = dual_action_convention(*ctx);
            for (u64 xi = 0; xi < n; ++xi) {
                double bound = 0;
                for (const auto& [gi, mass] : mu.masses) {
                    u32 m = ctx->mat_index_of(gi);
                    u32 ma = conv.chosen == DualAction::transpose ? ctx->sl_transpose(m)
                                                                  : ctx->sl_inv(m);
                    bound += mass * std::abs(psi.values[ctx->mat_apply_idx(ma, xi)]);
                }
                CHECK(std::abs(stepped.values[xi]) <= bound + 1e-12);
            }
        }
    }
}
