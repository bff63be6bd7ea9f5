#include "affwalk/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affwalk/bg_diag.hpp"

namespace affwalk {

namespace {

void require_set(const GroupContextPtr& ctx, const ElementSet& a) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (a.empty()) throw std::invalid_argument("element set must be nonempty");
    for (u64 gi : a.members) {
        if (gi >= ctx->group_order()) throw std::invalid_argument("element index out of range");
    }
}

void require_symmetric_set(const GroupContextPtr& ctx, const ElementSet& a) {
    for (u64 gi : a.members) {
        if (!a.contains(ctx->inverse_idx(gi)))
            throw hypothesis_error("element set must be symmetric");
    }
}

std::vector<u64> padded_translation_witness(const GroupContextPtr& ctx, u64 t, u64 pad) {
    u64 pad_inv = ctx->inverse_idx(pad);
    return {t, pad_inv, pad, pad_inv, pad, pad_inv, pad};
}

void verify_witness(const GroupContextPtr& ctx, const ElementSet& a,
                    const std::vector<u64>& factors, u64 expected) {
    if (factors.size() != 7)
        throw verification_error("translation witness must have exactly seven factors");
    u64 acc = ctx->identity_index();
    for (u64 f : factors) {
        if (!a.contains(f))
            throw verification_error("translation witness uses an element outside the set");
        acc = ctx->compose_idx(acc, f);
    }
    if (acc != expected)
        throw verification_error("translation witness product mismatch");
}

} // namespace

bool linear_part_coverage(const GroupContextPtr& ctx, const ElementSet& a, u64 cap) {
    require_set(ctx, a);
    ElementSet pi3 = product_set(*ctx, a, 3, cap);
    std::vector<bool> seen(ctx->sl_order(), false);
    u64 count = 0;
    for (u64 gi : pi3.members) {
        u32 mi = ctx->mat_index_of(gi);
        if (!seen[mi]) {
            seen[mi] = true;
            ++count;
        }
    }
    return count == ctx->sl_order();
}

SectionMap build_section(const GroupContextPtr& ctx, const ElementSet& a, u64 cap) {
    require_set(ctx, a);
    if (a.size() * a.size() > cap)
        throw cap_exceeded("pair product enumeration exceeds the configured cap");

    // First-witness pairs for every element of Pi_2 A, in lexicographic
    // factor order.
    std::map<u64, std::array<u64, 2>> pairs;
    for (u64 x : a.members) {
        for (u64 y : a.members) {
            pairs.try_emplace(ctx->compose_idx(x, y), std::array<u64, 2>{x, y});
        }
    }

    SectionMap section;
    for (const auto& [e, w2] : pairs) {
        for (u64 c : a.members) {
            u64 prod = ctx->compose_idx(e, c);
            u32 sigma = ctx->mat_index_of(prod);
            auto it = section.table.find(sigma);
            if (it == section.table.end()) {
                section.table.emplace(sigma, prod);
                section.witness.emplace(sigma, std::array<u64, 3>{w2[0], w2[1], c});
            } else if (prod < it->second) {
                it->second = prod;
                section.witness[sigma] = {w2[0], w2[1], c};
            }
        }
    }
    if (section.table.size() != ctx->sl_order())
        throw hypothesis_error("triple products do not cover every linear part");
    return section;
}

GrowthCertificate find_pure_translation(const GroupContextPtr& ctx, const ElementSet& a,
                                        u64 cap) {
    require_set(ctx, a);
    require_symmetric_set(ctx, a);

    u32 p = ctx->p();
    u32 d = ctx->d();
    GrowthCertificate cert;
    cert.g1 = AffineElement::identity(p, d);
    cert.sigma = SLMatrix::identity(p, d);

    for (u64 gi : a.members) {
        if (ctx->mat_index_of(gi) == ctx->identity_mat() && ctx->vec_index_of(gi) != 0) {
            cert.g0 = ctx->element_at(gi);
            cert.found_in_a = true;
            cert.witness = padded_translation_witness(ctx, gi, a.members.front());
            verify_witness(ctx, a, cert.witness, gi);
            return cert;
        }
    }

    SectionMap section = build_section(ctx, a, cap);
    for (u64 g1 : a.members) {
        u32 theta_g1 = ctx->mat_index_of(g1);
        for (u32 sigma = 0; sigma < ctx->sl_order(); ++sigma) {
            u32 top = ctx->sl_mul(theta_g1, sigma);
            u64 f_top = section.table.at(top);
            u64 f_sigma = section.table.at(sigma);
            u64 candidate =
                ctx->compose_idx(ctx->inverse_idx(f_top), ctx->compose_idx(g1, f_sigma));
            if (ctx->mat_index_of(candidate) != ctx->identity_mat())
                throw verification_error("section quotients must have identity linear part");
            if (ctx->vec_index_of(candidate) == 0) continue;

            cert.g0 = ctx->element_at(candidate);
            cert.g1 = ctx->element_at(g1);
            cert.sigma = ctx->mat_at(sigma);
            const auto& top_w = section.witness.at(top);
            const auto& bot_w = section.witness.at(sigma);
            cert.witness = {ctx->inverse_idx(top_w[2]),
                            ctx->inverse_idx(top_w[1]),
                            ctx->inverse_idx(top_w[0]),
                            g1,
                            bot_w[0],
                            bot_w[1],
                            bot_w[2]};
            verify_witness(ctx, a, cert.witness, candidate);
            return cert;
        }
    }
    throw hypothesis_error("every seven-fold section quotient is a trivial translation");
}

GrowthCertificate full_group_certificate(const GroupContextPtr& ctx, const ElementSet& a,
                                         bool materialize, u64 cap) {
    GrowthCertificate cert = find_pure_translation(ctx, a, cap);
    ElementSet pi3 = product_set(*ctx, a, 3, cap);

    std::vector<bool> mats(ctx->sl_order(), false);
    u64 mat_count = 0;
    u64 v0 = cert.g0.v.index();
    std::vector<bool> orbit(ctx->space_size(), false);
    u64 orbit_count = 0;
    for (u64 gi : pi3.members) {
        u32 mi = ctx->mat_index_of(gi);
        if (!mats[mi]) {
            mats[mi] = true;
            ++mat_count;
        }
        u64 image = ctx->mat_apply_idx(mi, v0);
        if (!orbit[image]) {
            orbit[image] = true;
            ++orbit_count;
        }
    }
    cert.coverage_ok = mat_count == ctx->sl_order();
    if (!cert.coverage_ok)
        throw hypothesis_error("triple products do not cover every linear part");
    cert.translations_complete = !orbit[0] && orbit_count == ctx->space_size() - 1;
    if (!cert.translations_complete)
        throw verification_error("conjugation orbit of the pure translation is incomplete");

    if (materialize || (ctx->p() <= 3 && ctx->d() == 2)) {
        cert.materialized = true;
        ElementSet pi13 = product_set(*ctx, a, 13, cap);
        bool translations_ok = true;
        for (u64 vi = 1; vi < ctx->space_size(); ++vi) {
            if (!pi13.contains(vi * ctx->sl_order() + ctx->identity_mat())) {
                translations_ok = false;
                break;
            }
        }
        ElementSet pi29 = product_set(*ctx, a, 29, cap);
        cert.materialized_ok = translations_ok && pi29.size() == ctx->group_order();
        if (!cert.materialized_ok)
            throw verification_error("materialized product sets contradict the certificate");
    }
    return cert;
}

TaoBound tao_triple_inequality(const GroupContextPtr& ctx, const ElementSet& a, u32 k,
                               u64 cap) {
    require_set(ctx, a);
    require_symmetric_set(ctx, a);
    if (k < 3) throw std::invalid_argument("triple-product inequality needs k >= 3");

    TaoBound out;
    out.pi_3_size = product_set(*ctx, a, 3, cap).size();
    out.pi_k_size = product_set(*ctx, a, k, cap).size();
    double base = static_cast<double>(a.size());
    out.lhs = static_cast<double>(out.pi_k_size) / base;
    out.rhs = std::pow(static_cast<double>(out.pi_3_size) / base, static_cast<double>(k) - 2.0);
    if (out.lhs > out.rhs * (1.0 + 1e-12))
        throw verification_error("triple-product growth inequality failed");
    return out;
}

CoverageCheck gowers_coverage_check(const GroupContextPtr& ctx, const std::vector<u32>& b_mats,
                                    u64 cap) {
    if (!ctx) throw std::invalid_argument("null group context");
    u64 sl = ctx->sl_order();
    if (sl > 50000) throw cap_exceeded("triple products of matrix sets infeasible at this order");

    std::vector<bool> base(sl, false);
    std::vector<u32> b;
    for (u32 mi : b_mats) {
        if (mi >= sl) throw std::invalid_argument("matrix index out of range");
        if (!base[mi]) {
            base[mi] = true;
            b.push_back(mi);
        }
    }
    std::sort(b.begin(), b.end());

    CoverageCheck out;
    out.set_size = b.size();
    double dim = static_cast<double>(min_irrep_dim(ctx->d(), ctx->p()).bound);
    out.threshold = static_cast<double>(sl) / std::cbrt(dim);
    if (static_cast<double>(b.size()) < out.threshold) {
        out.outcome = CoverageOutcome::not_applicable;
        return out;
    }
    if (b.size() * b.size() > cap)
        throw cap_exceeded("pair product enumeration exceeds the configured cap");

    std::vector<bool> two(sl, false);
    for (u32 x : b)
        for (u32 y : b) two[ctx->sl_mul(x, y)] = true;
    std::vector<bool> three(sl, false);
    u64 covered = 0;
    for (u32 xy = 0; xy < sl; ++xy) {
        if (!two[xy]) continue;
        for (u32 z : b) {
            u32 t = ctx->sl_mul(xy, z);
            if (!three[t]) {
                three[t] = true;
                ++covered;
            }
        }
    }
    out.outcome = covered == sl ? CoverageOutcome::covered : CoverageOutcome::not_covered;
    return out;
}

} // namespace affwalk
