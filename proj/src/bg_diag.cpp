#include "affwalk/bg_diag.hpp"

#include <cmath>
#include <stdexcept>

#include "affwalk/spectral.hpp"

namespace affwalk {

IrrepDimBound min_irrep_dim(u32 d, u32 p) {
    if (d < 2) throw std::invalid_argument("min_irrep_dim requires d >= 2");
    require_prime(p);
    IrrepDimBound out{d, p, 0};
    if (d == 2) {
        out.bound = std::max<u64>(1, (p - 1) / 2);
    } else {
        u64 pd = 1;
        for (u32 i = 0; i < d; ++i) {
            if (pd > (u64(1) << 62) / p) throw cap_exceeded("p^d overflows the dimension bound");
            pd *= p;
        }
        out.bound = pd - 1;
    }
    return out;
}

FlatteningTrace flattening_trace(const GroupContextPtr& ctx, const GroupMeasure& mu, u64 l1,
                                 u32 k_max, double K) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (mu.p != ctx->p() || mu.d != ctx->d())
        throw std::invalid_argument("measure parameters do not match group context");
    mu.validate();
    if (!(K > 2.0)) throw std::invalid_argument("flattening threshold K must exceed 2");
    if (l1 == 0) throw std::invalid_argument("walk length l1 must be positive");
    if (k_max > 40 || (l1 >> 20) != 0)
        throw cap_exceeded("doubling schedule exceeds the supported range");

    FlatteningTrace trace;
    trace.p = ctx->p();
    trace.d = ctx->d();
    trace.l1 = l1;
    trace.K = K;

    GroupMeasure nu = convolve_power(*ctx, mu, static_cast<u32>(l1));
    double prev = 0.0;
    for (u32 k = 0; k <= k_max; ++k) {
        if (k > 0) {
            u64 s = nu.support_size();
            if (s * s > u64(4) << 30)
                throw cap_exceeded("convolution square exceeds the configured budget");
            nu = convolve(*ctx, nu, nu);
        }
        FlatteningStep step;
        step.k = k;
        step.steps = (u64(1) << k) * l1;
        double n2 = lq_norm(nu, 2.0);
        step.a_k = n2 * n2;
        step.ratio = k == 0 ? 1.0 : step.a_k / prev;
        step.flattened = k > 0 && step.ratio <= 1.0 / (K * K);
        if (step.flattened && !trace.first_flattening_k) trace.first_flattening_k = k;
        prev = step.a_k;
        trace.rows.push_back(step);
    }
    return trace;
}

TraceIdentityReport trace_identity_check(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                         u64 dense_cap) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (mu.p != ctx->p() || mu.d != ctx->d())
        throw std::invalid_argument("measure parameters do not match group context");
    mu.validate();
    if (!is_symmetric(*ctx, mu)) throw hypothesis_error("trace identity requires a symmetric measure");

    double order = static_cast<double>(ctx->group_order());
    TraceIdentityReport out;

    GroupMeasure squared = convolve(*ctx, reverse(*ctx, mu), mu);
    auto it = squared.masses.find(ctx->identity_index());
    out.via_convolution = order * (it == squared.masses.end() ? 0.0 : it->second);

    double sum_sq = 0.0;
    for (const auto& [gi, mass] : mu.masses) sum_sq += mass * mass;
    out.via_l2 = order * sum_sq;

    if (ctx->group_order() <= dense_cap) {
        WalkOperator op(ctx, mu, Rep::regular);
        double frob = 0.0;
        for (const auto& row : dense_matrix(op)) {
            for (double v : row) frob += v * v;
        }
        out.via_frobenius = frob;
    }

    auto rel = [](double x, double y) {
        double scale = std::max({std::fabs(x), std::fabs(y), 1e-300});
        return std::fabs(x - y) / scale;
    };
    out.max_discrepancy = rel(out.via_convolution, out.via_l2);
    if (out.via_frobenius) {
        out.max_discrepancy = std::max(out.max_discrepancy, rel(out.via_convolution, *out.via_frobenius));
        out.max_discrepancy = std::max(out.max_discrepancy, rel(out.via_l2, *out.via_frobenius));
    }
    if (out.max_discrepancy > 1e-8)
        throw verification_error("trace identity routes disagree");
    return out;
}

BgGapBound bg_gap_bound(u64 dim_pi, u64 l1, u32 L, double a_l) {
    if (dim_pi < 1) throw std::invalid_argument("irreducible dimension must be positive");
    if (l1 == 0) throw std::invalid_argument("walk length l1 must be positive");
    if (L > 62) throw cap_exceeded("doubling count exceeds the supported range");

    BgGapBound out;
    out.dim_pi = dim_pi;
    out.l1 = l1;
    out.L = L;
    out.a_l = a_l;
    double dim = static_cast<double>(dim_pi);
    out.base = 2.0 * std::pow(dim, 2.0 / 3.0) / dim;
    double exponent = 1.0 / (std::pow(2.0, static_cast<double>(L) + 1.0) * static_cast<double>(l1));
    out.bound = std::pow(out.base, exponent);
    out.vacuous = out.base >= 1.0;
    return out;
}

} // namespace affwalk
