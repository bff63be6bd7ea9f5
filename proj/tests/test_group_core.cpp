#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "affwalk/group.hpp"
#include "affwalk/rng.hpp"
#include "oracles.hpp"

using namespace affwalk;

namespace {

AffineElement make_elem(u32 p, std::vector<u32> v, std::vector<u32> m) {
    u32 d = static_cast<u32>(v.size());
    return AffineElement(FpVector(p, std::move(v)), SLMatrix(p, d, std::move(m)));
}

GroupContextPtr ctx_nocache(u32 p, u32 d) { return GroupContext::create(p, d, kDefaultSlCap, std::string()); }

} // namespace

TEST_CASE("field arithmetic round trips") {
    for (u32 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        REQUIRE(is_prime(p));
        for (u32 a = 1; a < p; ++a) CHECK(fp_mul(a, fp_inv(a, p), p) == 1);
    }
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(91)); // 7 * 13
    CHECK(fp_reduce(-1, 5) == 4);
    CHECK(fp_reduce(-10, 5) == 0);
    CHECK(fp_reduce(12, 5) == 2);
    CHECK_THROWS_AS(require_prime(6), std::invalid_argument);
}

TEST_CASE("compose matches the worked example at p=5") {
    auto g1 = make_elem(5, {1, 0}, {1, 1, 0, 1});
    auto g2 = make_elem(5, {0, 1}, {1, 0, 1, 1});
    auto prod = compose(g1, g2);
    CHECK(prod == make_elem(5, {2, 1}, {2, 1, 1, 1}));

    auto id = AffineElement::identity(5, 2);
    CHECK(compose(id, g1) == g1);
    CHECK(compose(g1, id) == g1);
}

TEST_CASE("inverse matches the worked example and inverts") {
    auto g = make_elem(5, {1, 2}, {1, 1, 0, 1});
    auto gi = inverse(g);
    CHECK(gi == make_elem(5, {1, 3}, {1, 4, 0, 1}));
    CHECK(compose(g, gi) == AffineElement::identity(5, 2));
    CHECK(compose(gi, g) == AffineElement::identity(5, 2));
    CHECK(inverse(gi) == g);
}

TEST_CASE("act matches the worked example and composes") {
    auto g = make_elem(5, {1, 0}, {1, 1, 0, 1});
    FpVector x(5, {2, 3});
    CHECK(act(g, x) == FpVector(5, {1, 3}));
    CHECK(act(AffineElement::identity(5, 2), x) == x);
}

TEST_CASE("group laws agree with the tuple oracle on random elements") {
    auto ctx = ctx_nocache(5, 2);
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        u64 ai = rng.below(ctx->group_order());
        u64 bi = rng.below(ctx->group_order());
        u64 ci = rng.below(ctx->group_order());
        auto a = ctx->element_at(ai);
        auto b = ctx->element_at(bi);
        auto c = ctx->element_at(ci);

        auto oc = oracle::compose(oracle::from_lib(a), oracle::from_lib(b), 5);
        CHECK(oracle::key_of(oracle::from_lib(compose(a, b)), 5) == oracle::key_of(oc, 5));
        CHECK(oracle::key_of(oracle::from_lib(inverse(a)), 5) ==
              oracle::key_of(oracle::inverse(oracle::from_lib(a), 5), 5));
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));

        u64 xi = rng.below(ctx->space_size());
        auto x = FpVector::from_index(5, 2, xi);
        CHECK(act(compose(a, b), x) == act(a, act(b, x)));
        auto ox = oracle::act(oracle::from_lib(a), {int(x.coords[0]), int(x.coords[1])}, 5);
        auto lx = act(a, x);
        CHECK(int(lx.coords[0]) == ox[0]);
        CHECK(int(lx.coords[1]) == ox[1]);
    }
}

TEST_CASE("index arithmetic mirrors element arithmetic") {
    auto ctx = ctx_nocache(3, 2);
    REQUIRE(ctx->group_order() == 216);
    for (u64 gi = 0; gi < ctx->group_order(); ++gi)
        CHECK(ctx->index_of(ctx->element_at(gi)) == gi);

    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        u64 a = rng.below(ctx->group_order());
        u64 b = rng.below(ctx->group_order());
        u64 x = rng.below(ctx->space_size());
        CHECK(ctx->compose_idx(a, b) ==
              ctx->index_of(compose(ctx->element_at(a), ctx->element_at(b))));
        CHECK(ctx->inverse_idx(a) == ctx->index_of(inverse(ctx->element_at(a))));
        CHECK(ctx->act_idx(a, x) ==
              act(ctx->element_at(a), FpVector::from_index(3, 2, x)).index());
        CHECK(ctx->vec_add(x, ctx->vec_neg(x)) == 0);
    }
    CHECK(ctx->identity_index() == ctx->index_of(AffineElement::identity(3, 2)));
}

TEST_CASE("SL enumeration counts match brute force") {
    CHECK(oracle::count_sl_bruteforce(2, 2) == 6);
    CHECK(oracle::count_sl_bruteforce(2, 3) == 24);
    CHECK(oracle::count_sl_bruteforce(2, 5) == 120);
    for (u32 p : {2u, 3u, 5u, 7u}) {
        auto ctx = ctx_nocache(p, 2);
        CHECK(ctx->sl_order() == u64(p) * (u64(p) * p - 1));
        CHECK(ctx->sl_order() == oracle::count_sl_bruteforce(2, int(p)));
        CHECK(sl_order_formula(2, p) == ctx->sl_order());
    }
    auto ctx3 = ctx_nocache(3, 3);
    CHECK(ctx3->sl_order() == oracle::count_sl_bruteforce(3, 3));
    CHECK(ctx3->sl_order() == 5616);
}

TEST_CASE("enumeration is sorted by entry code and closed under index ops") {
    auto ctx = ctx_nocache(5, 2);
    u64 prev = 0;
    for (u32 i = 0; i < ctx->sl_order(); ++i) {
        auto m = ctx->mat_at(i);
        CHECK(det(m) == 1);
        u64 code = m.code();
        if (i > 0) CHECK(code > prev);
        prev = code;
        CHECK(ctx->mat_index(m) == i);
        CHECK(ctx->sl_mul(i, ctx->sl_inv(i)) == ctx->identity_mat());
        CHECK(mat_mul(m, mat_inverse(m)) == SLMatrix::identity(5, 2));
        CHECK(ctx->mat_at(ctx->sl_transpose(i)) == mat_transpose(m));
    }
}

TEST_CASE("enumeration cap is a hard error") {
    CHECK_THROWS_AS(sl_order_formula(2, 101, 1000), cap_exceeded);
    CHECK_THROWS_AS(GroupContext::create(7, 2, 10, std::string()), cap_exceeded);
}

TEST_CASE("enumeration cache round trips and survives corruption") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "affwalk_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::vector<SLMatrix> expected;
    {
        auto fresh = GroupContext::create(13, 2, kDefaultSlCap, dir.string());
        for (u32 i = 0; i < fresh->sl_order(); ++i) expected.push_back(fresh->mat_at(i));
    } // dropped, so the next create must go through the disk cache
    REQUIRE(expected.size() == 13u * (13 * 13 - 1));

    fs::path file;
    for (const auto& entry : fs::directory_iterator(dir)) file = entry.path();
    REQUIRE(!file.empty());
    {
        std::ifstream in(file, std::ios::binary);
        char magic[4] = {};
        in.read(magic, 4);
        CHECK(std::string(magic, 4) == "SLEN");
    }

    {
        auto cached = GroupContext::create(13, 2, kDefaultSlCap, dir.string());
        REQUIRE(cached->sl_order() == expected.size());
        for (u32 i = 0; i < expected.size(); ++i) CHECK(cached->mat_at(i) == expected[i]);
    }

    {
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out << "SLENgarbage";
    }
    auto recovered = GroupContext::create(13, 2, kDefaultSlCap, dir.string());
    REQUIRE(recovered->sl_order() == expected.size());
    for (u32 i = 0; i < expected.size(); ++i) CHECK(recovered->mat_at(i) == expected[i]);
    fs::remove_all(dir);
}

TEST_CASE("product sets match the exhaustive oracle") {
    auto ctx = ctx_nocache(3, 2);
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<u64> picks;
        for (int i = 0; i < 4; ++i) picks.push_back(rng.below(ctx->group_order()));
        ElementSet a = ElementSet::from_indices(picks);

        std::vector<oracle::Elem> oa;
        for (u64 gi : a.members) oa.push_back(oracle::from_lib(ctx->element_at(gi)));

        for (u32 k = 1; k <= 4; ++k) {
            ElementSet pk = product_set(*ctx, a, k);
            std::set<u64> keys;
            for (u64 gi : pk.members)
                keys.insert(oracle::key_of(oracle::from_lib(ctx->element_at(gi)), 3));
            CHECK(keys == oracle::product_set_bruteforce(oa, int(k), 3));
        }
    }
}

TEST_CASE("product set basics") {
    auto ctx = ctx_nocache(3, 2);
    ElementSet just_id = ElementSet::from_indices({ctx->identity_index()});
    for (u32 k : {1u, 2u, 5u}) {
        auto pk = product_set(*ctx, just_id, k);
        CHECK(pk.members == just_id.members);
    }

    // all pure translations form a subgroup
    std::vector<u64> trans;
    for (u64 v = 0; v < ctx->space_size(); ++v) trans.push_back(v * ctx->sl_order() + ctx->identity_mat());
    ElementSet t = ElementSet::from_indices(trans);
    for (u32 k : {1u, 2u, 3u}) CHECK(product_set(*ctx, t, k).members == t.members);

    Rng rng(77);
    std::vector<u64> picks{ctx->identity_index()};
    for (int i = 0; i < 2; ++i) picks.push_back(rng.below(ctx->group_order()));
    ElementSet a = symmetrize(*ctx, ElementSet::from_indices(picks));
    REQUIRE(is_symmetric(*ctx, a));
    ElementSet prev = product_set(*ctx, a, 1);
    for (u32 k = 2; k <= 5; ++k) {
        ElementSet cur = product_set(*ctx, a, k);
        CHECK(std::includes(cur.members.begin(), cur.members.end(), prev.members.begin(),
                            prev.members.end()));
        prev = cur;
    }

    CHECK_THROWS_AS(product_set(*ctx, t, 3, 5), cap_exceeded);
}

TEST_CASE("symmetrize and inverse_set") {
    auto ctx = ctx_nocache(5, 2);
    Rng rng(13);
    std::vector<u64> picks;
    for (int i = 0; i < 5; ++i) picks.push_back(rng.below(ctx->group_order()));
    ElementSet a = ElementSet::from_indices(picks);
    ElementSet sym = symmetrize(*ctx, a);
    CHECK(is_symmetric(*ctx, sym));
    ElementSet inv = inverse_set(*ctx, a);
    CHECK(inv.size() == a.size());
    for (u64 gi : a.members) CHECK(inv.contains(ctx->inverse_idx(gi)));
    ElementSet both = symmetrize(*ctx, inv);
    CHECK(both.members == sym.members);
}

TEST_CASE("whole-group generation test distinguishes cosets") {
    auto ctx = ctx_nocache(3, 2);

    std::vector<u64> all(ctx->group_order());
    for (u64 i = 0; i < all.size(); ++i) all[i] = i;
    CHECK(generates_whole_group(*ctx, ElementSet::from_indices(all), true));
    CHECK(generates_whole_group(*ctx, ElementSet::from_indices(all), false));

    // pure translation + a generating pair of the linear group, lifted flat
    u32 e12 = ctx->mat_index(SLMatrix(3, 2, {1, 1, 0, 1}));
    u32 e21 = ctx->mat_index(SLMatrix(3, 2, {1, 0, 1, 1}));
    u64 t10 = FpVector(3, {1, 0}).index() * ctx->sl_order() + ctx->identity_mat();
    ElementSet gens = symmetrize(
        *ctx, ElementSet::from_indices({t10, u64(e12), u64(e21)}));
    CHECK(generates_whole_group(*ctx, gens, true));
    CHECK(generates_whole_group(*ctx, gens, false));

    // every member maps 0 to (1,1): a coset of the stabilizer of 0
    std::vector<u64> coset;
    u64 target = FpVector(3, {1, 1}).index();
    for (u32 m = 0; m < ctx->sl_order(); ++m) coset.push_back(target * ctx->sl_order() + m);
    ElementSet cs = ElementSet::from_indices(coset);
    CHECK_FALSE(generates_whole_group(*ctx, cs, false));
    CHECK(generates_whole_group(*ctx, cs, true)); // not coset-free, but it does generate

    // matrices alone never reach nonzero translations
    std::vector<u64> flat;
    for (u32 m = 0; m < ctx->sl_order(); ++m) flat.push_back(m);
    CHECK_FALSE(generates_whole_group(*ctx, ElementSet::from_indices(flat), true));
}

TEST_CASE("sl_generates detects proper subgroups") {
    auto ctx = ctx_nocache(5, 2);
    u32 e12 = ctx->mat_index(SLMatrix(5, 2, {1, 1, 0, 1}));
    u32 e21 = ctx->mat_index(SLMatrix(5, 2, {1, 0, 1, 1}));
    CHECK(sl_generates(*ctx, {e12, e21}));
    CHECK_FALSE(sl_generates(*ctx, {e12})); // unipotent subgroup only
    CHECK_FALSE(sl_generates(*ctx, {ctx->identity_mat()}));
}
