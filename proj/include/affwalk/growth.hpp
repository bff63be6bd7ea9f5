#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "affwalk/group.hpp"

namespace affwalk {

// Section of the linear-part projection over triple products: for each SL
// matrix index sigma, table[sigma] is the element of Pi_3 A with that linear
// part and minimal group index, and witness[sigma] lists three members of A
// whose product it is.
struct SectionMap {
    std::map<u32, u64> table;
    std::map<u32, std::array<u64, 3>> witness;
};

struct GrowthCertificate {
    AffineElement g0;
    AffineElement g1;
    SLMatrix sigma;
    bool found_in_a = false;
    std::vector<u64> witness; // exactly seven members of A multiplying to g0
    bool coverage_ok = false;
    bool translations_complete = false;
    bool materialized = false;        // exhaustive product-set cross-check ran
    bool materialized_ok = false;
};

struct TaoBound {
    double lhs = 0.0; // |Pi_k A| / |A|
    double rhs = 0.0; // (|Pi_3 A| / |A|)^(k-2)
    u64 pi_k_size = 0;
    u64 pi_3_size = 0;
};

enum class CoverageOutcome { covered, not_covered, not_applicable };

struct CoverageCheck {
    CoverageOutcome outcome = CoverageOutcome::not_applicable;
    double threshold = 0.0; // |SL_d(F_p)| / D^(1/3)
    u64 set_size = 0;
};

// True iff the linear-part projection of Pi_3 A is all of SL_d(F_p).
bool linear_part_coverage(const GroupContextPtr& ctx, const ElementSet& a,
                          u64 cap = kDefaultProductCap);

SectionMap build_section(const GroupContextPtr& ctx, const ElementSet& a,
                         u64 cap = kDefaultProductCap);

// Finds a nonzero pure translation in Pi_7 A: first by scanning A itself,
// then via the section construction F(theta(g1) sigma)^{-1} g1 F(sigma) in
// canonical order. Throws hypothesis_error when the search is exhausted.
GrowthCertificate find_pure_translation(const GroupContextPtr& ctx, const ElementSet& a,
                                        u64 cap = kDefaultProductCap);

// Extends a pure-translation certificate to the full-group conclusion: the
// Pi_3 A conjugation orbit of g0's translation covers every nonzero vector.
// With materialize (forced on for p <= 3, d = 2) the product sets Pi_13 and
// Pi_29 are enumerated and compared against the claims directly.
GrowthCertificate full_group_certificate(const GroupContextPtr& ctx, const ElementSet& a,
                                         bool materialize = false,
                                         u64 cap = kDefaultProductCap);

// Exact |Pi_k A| / |A| <= (|Pi_3 A| / |A|)^(k-2); violation throws
// verification_error.
TaoBound tao_triple_inequality(const GroupContextPtr& ctx, const ElementSet& a, u32 k,
                               u64 cap = kDefaultProductCap);

// For |B| above the |SL| / D^(1/3) threshold, verifies that triple products
// of B cover SL_d(F_p); below the threshold the check is not applicable.
CoverageCheck gowers_coverage_check(const GroupContextPtr& ctx, const std::vector<u32>& b_mats,
                                    u64 cap = kDefaultProductCap);

} // namespace affwalk
