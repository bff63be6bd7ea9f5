#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affwalk/fourier.hpp"
#include "affwalk/group.hpp"
#include "affwalk/measure.hpp"
#include "affwalk/spectral.hpp"

namespace affwalk {

// Hypotheses for the norm-decay iteration: symmetry, quotient operator norm
// at most 1/2, and every point pushforward with L2 norm at most 3/4.
struct DecayHypotheses {
    bool symmetric = false;
    bool point_mass_ok = false;
    bool quotient_ok = false;
    double symmetry_defect = 0.0;
    double max_point_l2 = 0.0;
    double quotient_norm = 0.0;

    bool ok() const { return symmetric && point_mass_ok && quotient_ok; }
};

// quotient_norm_override skips the operator-norm computation (used when the
// caller knows the exact value, e.g. for convolution powers where the norm
// is a power of the base norm).
DecayHypotheses check_decay_hypotheses(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                       std::optional<double> quotient_norm_override = std::nullopt);

struct DecayStepRecord {
    u64 l = 0;
    double l2_norm = 0.0;
    double l4_fourier_norm = 0.0;
    std::string case_tag;
    std::optional<FpVector> atom_location;
    double deviation = 0.0;
};

struct DecayReport {
    u32 p = 0;
    u32 d = 0;
    DecayHypotheses hypotheses;
    bool hypotheses_ok = false;
    double target = 0.0;
    std::vector<DecayStepRecord> steps;
    std::optional<u64> stop_l;
    bool reached_cap = false;
};

// Iterates eta_{l+1} = mu.eta_l from eta_0 = delta_{v0}, recording one step
// record per level. Stops at the first l >= 1 with l2 norm at most the
// target 5 p^{-d/4}, or at l_cap. With run_to_cap the iteration continues to
// l_cap regardless (stop_l still records the first crossing).
DecayReport decay_run(const GroupContextPtr& ctx, const GroupMeasure& mu, const FpVector& v0,
                      u64 l_cap, std::optional<DecayHypotheses> hypotheses = std::nullopt,
                      bool run_to_cap = false);

struct AtomCaseBound {
    double lhs = 0.0;          // || mu.eta ||_2
    double intermediate = 0.0; // (3/4) eta(x0) + sqrt(||eta||^2 - eta(x0)^2)
    double rhs = 0.0;          // e^{-2^-5} ||eta||_2
    FpVector atom;
};

// Requires some x0 with eta(x0) >= (40/41)||eta||_2 and passing hypotheses;
// throws verification_error if the contraction lhs < rhs fails.
AtomCaseBound atom_case_contraction(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                    const VectorMeasure& eta,
                                    std::optional<DecayHypotheses> hypotheses = std::nullopt);

struct ClarksonBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool degenerate = false; // pi(mu) f = 0; no witness available
};

// Averaging contraction on the unit sphere of L4 with the witness
// f0 = pi(mu) f / || pi(mu) f ||_4; norms use the operator's representation
// space with the normalized counting measure (weight 1/p^d per point).
ClarksonBound clarkson_bound(const WalkOperator& op, const std::vector<cdouble>& f);

struct L4ContractionBound {
    double lhs = 0.0;
    double rhs = 0.0;
    double min_distance = 0.0; // min over |z| = nu(X)^{-1/4} of ||f - z||_4
    cdouble minimizer{0.0, 0.0};
    double mean_zero_norm = 0.0;
    bool applicable = false; // mean-zero L2 operator norm <= 1/2
};

L4ContractionBound l4_contraction_bound(const WalkOperator& op, const std::vector<cdouble>& f);

struct TransferBound {
    double lhs = 0.0; // 2^7 (1 - ||pi(mu) f||_4)
    double rhs = 0.0; // (1 - ||pi(mu) phi(f)||_2)^2
};

TransferBound l4_l2_transfer(const WalkOperator& op, const std::vector<cdouble>& f);

struct NoMassOriginBound {
    double lhs = 0.0; // sum_{x != 0} (eta * check-eta)(x)^2
    double rhs = 0.0; // (1/50) || eta * check-eta ||_2^2
};

NoMassOriginBound no_mass_origin_check(const GroupContextPtr& ctx, const VectorMeasure& eta);

struct Mu0Result {
    GroupMeasure mu0;
    u64 l0 = 0;
    double alpha1 = 0.0;          // alpha of the input measure
    double quotient_norm = 0.0;   // quotient operator norm of the input
    double mu0_quotient_norm = 0.0;
    double mu0_max_point_l2 = 0.0;
    DecayHypotheses mu0_hypotheses;
};

// mu0 = (reverse(mu) * mu)^{* l0} with l0 = ceil(max(3/(1-alpha),
// log 2 / (2 - 2 quotient_norm))), then both decay hypotheses of mu0 are
// verified computationally (failure throws verification_error).
Mu0Result mu0_construct(const GroupContextPtr& ctx, const GroupMeasure& mu);

struct AlphaTrace {
    std::vector<double> alpha; // alpha[l-1] = alpha of (reverse(mu) * mu)^{* l}
    u64 l0 = 0;
    double alpha_l0 = 0.0;
};

// Exact alpha sequence of the symmetrized-square powers, with the recursion
// alpha_{l+1} <= alpha_1 alpha_l + 1/4 and alpha_{l0} <= 9/16 checked
// (violations throw verification_error).
AlphaTrace alpha_recursion_trace(const GroupContextPtr& ctx, const GroupMeasure& mu, u64 l_max);

// Point-action kernel: row-major n x n matrix with K[y*n + x] = (mu.delta_x)(y),
// the transition matrix of the induced walk on F_p^d.
std::vector<double> action_kernel(const GroupContextPtr& ctx, const GroupMeasure& mu);

} // namespace affwalk
