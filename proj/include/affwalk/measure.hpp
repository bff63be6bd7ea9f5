#pragma once

#include "affwalk/group.hpp"

#include <map>
#include <vector>

namespace affwalk {

/// Probability measure on G, sparse over GroupIndex. The map is ordered so
/// every accumulation loop visits the support in index order, which keeps
/// floating-point results reproducible.
struct GroupMeasure {
    u32 p = 0, d = 0;
    std::map<u64, double> masses;
    double drift = 0; // cumulative renormalization magnitude

    static GroupMeasure dirac(const GroupContext& ctx, u64 gi);
    static GroupMeasure uniform_on(const GroupContext& ctx, const ElementSet& a);
    static GroupMeasure uniform_on_group(const GroupContext& ctx);

    size_t support_size() const { return masses.size(); }
    double total() const;
    ElementSet support() const;
    /// Throws unless masses are nonnegative, the support is nonempty, and the
    /// total is within tol of 1.
    void validate(double tol = 1e-12) const;
};

/// Probability density on F_p^d, dense, indexed by FpVector::index().
struct VectorMeasure {
    u32 p = 0, d = 0;
    std::vector<double> density;

    static VectorMeasure dirac(u32 p, u32 d, u64 x_index);
    static VectorMeasure uniform(u32 p, u32 d);

    double total() const;
    void validate(double tol = 1e-12) const;
};

/// (mu * nu)(g) = sum_h mu(h) nu(h^{-1} g). Accumulation switches to a dense
/// buffer once either support exceeds |G|/4. Renormalizes to total mass 1 when
/// the drift exceeds 1e-13 and records the drift.
GroupMeasure convolve(const GroupContext& ctx, const GroupMeasure& mu, const GroupMeasure& nu);

/// mu^{*(l)}; l = 0 gives the Dirac mass at the identity. Folds against the
/// sparse base measure, which is never slower than repeated squaring here.
GroupMeasure convolve_power(const GroupContext& ctx, const GroupMeasure& mu, u32 l);

/// Same value computed by binary squaring; kept as an independent path for
/// cross-checking the fold.
GroupMeasure convolve_power_squaring(const GroupContext& ctx, const GroupMeasure& mu, u32 l);

GroupMeasure reverse(const GroupContext& ctx, const GroupMeasure& mu);
bool is_symmetric(const GroupContext& ctx, const GroupMeasure& mu, double tol = 1e-12);

/// [mu.eta](x) = sum_g mu(g) eta(g^{-1}.x).
VectorMeasure act_convolve(const GroupContext& ctx, const GroupMeasure& mu,
                           const VectorMeasure& eta);

/// mu . delta_x as a dense density.
VectorMeasure point_pushforward(const GroupContext& ctx, const GroupMeasure& mu, u64 x_index);

/// alpha(mu) = max_{x,y} (mu . delta_x)(y), exhaustive over all p^d points x.
double alpha(const GroupContext& ctx, const GroupMeasure& mu);

/// max_x || mu . delta_x ||_{L^2}.
double max_point_l2(const GroupContext& ctx, const GroupMeasure& mu);

/// Counting-measure L^q norms (no normalization); q >= 1 or q = infinity.
double lq_norm(const std::vector<double>& f, double q);
double lq_norm(const VectorMeasure& f, double q);
double lq_norm(const GroupMeasure& f, double q);

/// Abelian convolution on F_p^d: (a * b)(x) = sum_y a(y) b(x - y). The (p, d)
/// overloads need no group context; digit arithmetic is self-contained.
std::vector<double> vec_convolve(u32 p, u32 d, const std::vector<double>& a,
                                 const std::vector<double>& b);
std::vector<double> vec_convolve(const GroupContext& ctx, const std::vector<double>& a,
                                 const std::vector<double>& b);
/// b(x) = a(-x).
std::vector<double> vec_reverse(u32 p, u32 d, const std::vector<double>& a);
std::vector<double> vec_reverse(const GroupContext& ctx, const std::vector<double>& a);

/// Pushforward of mu under g -> theta(g): sparse measure on SL matrix indices.
std::map<u32, double> quotient_pushforward(const GroupContext& ctx, const GroupMeasure& mu);

} // namespace affwalk
