#pragma once

#include <optional>
#include <vector>

#include "affwalk/measure.hpp"

namespace affwalk {

struct IrrepDimBound {
    u32 d = 0;
    u32 p = 0;
    u64 bound = 0;
};

/// Lower bound for the dimension of a nontrivial irreducible representation of
/// F_p^d x| SL_d(F_p): floor((p-1)/2), at least 1, when d = 2; p^d - 1
/// otherwise. Requires d >= 2.
IrrepDimBound min_irrep_dim(u32 d, u32 p);

struct FlatteningStep {
    u32 k = 0;
    u64 steps = 0;    // walk length 2^k * l1
    double a_k = 0;   // squared L2 norm of mu^{*(steps)}
    double ratio = 1; // a_k / a_{k-1}; 1 on the first row
    bool flattened = false; // ratio <= 1/K^2
};

struct FlatteningTrace {
    u32 p = 0, d = 0;
    u64 l1 = 0;
    double K = 0;
    std::vector<FlatteningStep> rows;
    std::optional<u32> first_flattening_k; // least k whose step flattened
};

/// a_k = ||mu^{*(2^k l1)}||_2^2 for k = 0..k_max, with the flattening flag
/// a_{k+1} <= a_k / K^2 recorded on row k+1.
FlatteningTrace flattening_trace(const GroupContextPtr& ctx, const GroupMeasure& mu, u64 l1,
                                 u32 k_max, double K);

struct TraceIdentityReport {
    double via_convolution = 0; // |G| * (mu-reversed * mu)(identity)
    double via_l2 = 0;          // |G| * ||mu||_2^2
    std::optional<double> via_frobenius; // squared Frobenius norm of the dense walk matrix
    double max_discrepancy = 0;
};

/// Three routes to the trace of L(mu)^* L(mu); the dense route is included
/// when the group is small enough to materialize.
TraceIdentityReport trace_identity_check(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                         u64 dense_cap = 4096);

struct BgGapBound {
    u64 dim_pi = 0;
    u64 l1 = 0;
    u32 L = 0;
    double a_l = 0;   // flattening endpoint supplied by the caller, echoed
    double base = 0;  // 2 * dim_pi^{2/3} / dim_pi
    double bound = 0; // base^(1 / (2^{L+1} l1)), the spectral-norm bound
    bool vacuous = false; // base >= 1: no information at this dimension
};

/// Norm bound implied by a flattening cascade that ends after L doublings at
/// scale l1 against an irreducible dimension dim_pi; a_l is the cascade
/// endpoint and is echoed for the caller's consistency reporting.
BgGapBound bg_gap_bound(u64 dim_pi, u64 l1, u32 L, double a_l);

} // namespace affwalk
