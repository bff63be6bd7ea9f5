#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "affwalk/sampling.hpp"
#include "affwalk/spectral.hpp"
#include "oracles.hpp"

using namespace affwalk;

namespace {

GroupContextPtr ctx3() {
    static GroupContextPtr c = GroupContext::create(3, 2);
    return c;
}

} // namespace

TEST_CASE("walk operators preserve constants in every representation") {
    auto ctx = ctx3();
    Rng rng(42);
    auto mu = random_symmetric_measure(ctx, 5, rng);

    for (Rep rep : {Rep::regular, Rep::quotient, Rep::space, Rep::dual_grid}) {
        WalkOperator op(ctx, mu, rep);
        switch (rep) {
        case Rep::regular: CHECK(op.dim() == 216); break;
        case Rep::quotient: CHECK(op.dim() == 24); break;
        case Rep::space: CHECK(op.dim() == 9); break;
        case Rep::dual_grid: CHECK(op.dim() == 8); break;
        }
        std::vector<double> ones(op.dim(), 1.0);
        auto out = op.apply(ones);
        for (double v : out) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(op.measure_symmetric());
    }
}

TEST_CASE("adjoint application transposes the operator") {
    auto ctx = ctx3();
    Rng rng(7);
    GroupMeasure mu;
    mu.p = 3;
    mu.d = 2;
    double total = 0;
    for (int k = 0; k < 4; ++k) {
        double w = rng.uniform(0.1, 1.0);
        mu.masses[rng.below(ctx->group_order())] += w;
        total += w;
    }
    for (auto& [gi, w] : mu.masses) w /= total;

    WalkOperator op(ctx, mu, Rep::regular);
    std::vector<double> f(op.dim()), g(op.dim());
    for (auto& v : f) v = rng.uniform(-1, 1);
    for (auto& v : g) v = rng.uniform(-1, 1);
    std::vector<double> af(op.dim()), atg(op.dim());
    op.apply(f.data(), af.data());
    op.apply_adjoint(g.data(), atg.data());
    double lhs = 0, rhs = 0;
    for (u64 i = 0; i < op.dim(); ++i) {
        lhs += af[i] * g[i];
        rhs += f[i] * atg[i];
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // the dense matrix agrees entry by entry with apply on basis vectors
    auto rows = dense_matrix(op);
    std::vector<double> e(op.dim(), 0.0), col(op.dim());
    for (u64 j = 0; j < op.dim(); ++j) {
        e[j] = 1.0;
        op.apply(e.data(), col.data());
        for (u64 i = 0; i < op.dim(); ++i) CHECK(rows[i][j] == col[i]);
        e[j] = 0.0;
    }
}

TEST_CASE("mean-zero norm of the extreme measures") {
    auto ctx = ctx3();
    WalkOperator proj(ctx, GroupMeasure::uniform_on_group(*ctx), Rep::regular);
    CHECK(l0_norm_value(proj) == doctest::Approx(0.0).epsilon(1e-9));

    WalkOperator id(ctx, GroupMeasure::dirac(*ctx, ctx->identity_index()), Rep::regular);
    CHECK(l0_norm_value(id) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("power iteration matches the dense decomposition oracle") {
    auto ctx = ctx3();
    Rng rng(2025);
    for (int trial = 0; trial < 12; ++trial) {
        auto mu = random_symmetric_measure(ctx, 4, rng);
        WalkOperator op(ctx, mu, Rep::regular);
        double lib = l0_norm_value(op);
        double ref = oracle::dense_l0_norm(op);
        CHECK(std::abs(lib - ref) < 1e-8);
    }
    // non-symmetric measures go through the mu-check * mu symmetrization
    for (int trial = 0; trial < 5; ++trial) {
        GroupMeasure mu;
        mu.p = 3;
        mu.d = 2;
        double total = 0;
        for (int k = 0; k < 3; ++k) {
            double w = rng.uniform(0.1, 1.0);
            mu.masses[rng.below(ctx->group_order())] += w;
            total += w;
        }
        for (auto& [gi, w] : mu.masses) w /= total;
        WalkOperator op(ctx, mu, Rep::regular);
        CHECK(std::abs(l0_norm_value(op) - oracle::dense_l0_norm(op)) < 1e-8);
    }
}

TEST_CASE("determinism of the seeded iteration") {
    auto ctx = ctx3();
    Rng rng(5150);
    auto mu = random_symmetric_measure(ctx, 5, rng);
    WalkOperator op(ctx, mu, Rep::regular);
    L0Options opt;
    opt.seed = 909;
    auto a = l0_norm(op, opt);
    auto b = l0_norm(op, opt);
    CHECK(a.norm == b.norm);
    CHECK(a.iterations == b.iterations);
    CHECK(a.residual == b.residual);
}

TEST_CASE("spectral calculus under self-convolution") {
    auto ctx = ctx3();
    Rng rng(31);
    auto mu = random_symmetric_measure(ctx, 5, rng);
    WalkOperator op1(ctx, mu, Rep::regular);
    WalkOperator op2(ctx, convolve(*ctx, mu, mu), Rep::regular);
    double n1 = l0_norm_value(op1);
    double n2 = l0_norm_value(op2);
    CHECK(std::abs(n2 - n1 * n1) < 1e-8);
}

TEST_CASE("quotient norm is dominated by the walk norm and powers exactly") {
    auto ctx = ctx3();
    Rng rng(88);
    for (int trial = 0; trial < 6; ++trial) {
        auto mu = random_symmetric_measure(ctx, 4, rng);
        WalkOperator walk(ctx, mu, Rep::regular);
        WalkOperator quot(ctx, mu, Rep::quotient);
        double wn = l0_norm_value(walk);
        double qn = l0_norm_value(quot);
        CHECK(qn <= wn + 1e-9);

        u32 l = 2;
        auto folded = convolve_power(*ctx, convolve(*ctx, reverse(*ctx, mu), mu), l);
        WalkOperator qf(ctx, folded, Rep::quotient);
        CHECK(std::abs(l0_norm_value(qf) - std::pow(qn, 2.0 * l)) < 1e-8);
    }
}

TEST_CASE("spectral report fields") {
    auto ctx = ctx3();

    auto uni = spectral_report(ctx, GroupMeasure::uniform_on_group(*ctx));
    CHECK(uni.walk_gap == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(uni.quotient_gap == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(uni.alpha == doctest::Approx(1.0 / 9).epsilon(1e-12));
    // ratio follows the defining quotient: min(quotient_gap, 1 - alpha) = 8/9
    CHECK(uni.ratio == doctest::Approx(9.0 / 8.0).epsilon(1e-8));
    CHECK(uni.generates);

    auto still = spectral_report(ctx, GroupMeasure::dirac(*ctx, ctx->identity_index()));
    CHECK(still.walk_gap == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_FALSE(still.generates);
    CHECK(still.ratio == 0.0); // denominator collapses, reported as zero

    Rng rng(11);
    auto gens = sample_lifted_generators(ctx, 3, rng);
    auto rep = spectral_report(ctx, gens.measure);
    CHECK(rep.generates);
    CHECK(rep.walk_gap > 0.0);
    CHECK(rep.ratio ==
          doctest::Approx(rep.walk_gap / std::min(rep.quotient_gap, 1.0 - rep.alpha)));
    CHECK(rep.support_size == gens.measure.support_size());
}

TEST_CASE("mixing profile matches direct convolution distances") {
    auto ctx = ctx3();
    const double n = double(ctx->group_order());

    auto uni = mixing_profile(ctx, GroupMeasure::uniform_on_group(*ctx), 2);
    CHECK(uni.rows[0].distance == doctest::Approx(std::sqrt(1.0 - 1.0 / n)).epsilon(1e-12));
    CHECK(uni.rows[1].distance == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(uni.all_ok);

    Rng rng(61);
    auto mu = random_symmetric_measure(ctx, 5, rng);
    auto prof = mixing_profile(ctx, mu, 8);
    CHECK(prof.rows.size() == 9);
    CHECK(prof.all_ok);
    for (u32 l = 0; l <= 8; ++l) {
        auto pl = convolve_power(*ctx, mu, l);
        double s = 0;
        for (u64 gi = 0; gi < ctx->group_order(); ++gi) {
            auto it = pl.masses.find(gi);
            double m = it == pl.masses.end() ? 0.0 : it->second;
            s += (m - 1.0 / n) * (m - 1.0 / n);
        }
        CHECK(prof.rows[l].distance == doctest::Approx(std::sqrt(s)).epsilon(1e-9));
        CHECK(prof.rows[l].bound == doctest::Approx(std::exp(-double(l) * prof.walk_gap)));
    }
}

TEST_CASE("multiplicity structure of the regular representation") {
    auto ctx = ctx3();

    auto uni = multiplicity_check(ctx, GroupMeasure::uniform_on_group(*ctx));
    REQUIRE(uni.clusters.size() == 2);
    CHECK(uni.clusters[0].mean == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(uni.clusters[0].multiplicity == 1);
    CHECK(uni.clusters[1].mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(uni.clusters[1].multiplicity == ctx->group_order() - 1);
    CHECK(uni.passed);

    GroupMeasure skew;
    skew.p = 3;
    skew.d = 2;
    skew.masses[3] = 1.0;
    CHECK_THROWS_AS(multiplicity_check(ctx, skew), hypothesis_error);

    Rng rng(303);
    auto gens = sample_lifted_generators(ctx, 2, rng);
    auto rep = multiplicity_check(ctx, gens.measure);
    CHECK(rep.irrep_bound == 1);
    CHECK(rep.generates);
    CHECK(rep.top_simple_ok);
    CHECK(rep.passed);
    u64 total = 0;
    for (const auto& c : rep.clusters) total += c.multiplicity;
    CHECK(total == ctx->group_order());
}
