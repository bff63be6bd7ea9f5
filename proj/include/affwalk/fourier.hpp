#pragma once

#include "affwalk/measure.hpp"

#include <complex>

namespace affwalk {

using cdouble = std::complex<double>;

/// Function on the dual grid of F_p^d, indexed like FpVector. When
/// origin_included is false the xi = 0 entry is pinned to exactly 0 and the
/// function is regarded as living on X = dual grid minus the origin.
struct DualFunction {
    u32 p = 0, d = 0;
    bool origin_included = true;
    std::vector<cdouble> values;

    static DualFunction zero(u32 p, u32 d, bool origin_included);
};

/// Reference transform: fhat(xi) = sum_x e(<x,xi>) f(x) with
/// e(y) = exp(-2 pi i y / p) and <x,xi> = sum_i x_i xi_i mod p. O(p^{2d}).
/// The (p, d) overloads need no group context.
DualFunction dft(u32 p, u32 d, const std::vector<double>& f);
DualFunction dft(u32 p, u32 d, const std::vector<cdouble>& f);
DualFunction dft(const GroupContext& ctx, const std::vector<double>& f);
DualFunction dft(const GroupContext& ctx, const VectorMeasure& f);
DualFunction dft(const GroupContext& ctx, const std::vector<cdouble>& f);
DualFunction dft(const VectorMeasure& f);

/// Axis-by-axis evaluation of the same transform, O(d p^{d+1}).
DualFunction dft_axis(const GroupContext& ctx, const std::vector<double>& f);

/// Copy with the origin zeroed: the restriction to X.
DualFunction restrict_to_x(const DualFunction& phi);

/// Normalized dual-side norm ((1/p^d) sum |phi|^q)^{1/q}; q >= 1 or infinity.
double lhat_norm(const DualFunction& phi, double q);

/// Pointwise |f|^2 sign(f) = |f| f, zero where f vanishes.
cdouble mazur_point(cdouble z);
std::vector<cdouble> mazur(const std::vector<cdouble>& f);
DualFunction mazur(const DualFunction& f);

/// L-hat-4 distance between |psi| / ||psi|| and the constant
/// (p^d/(p^d-1))^{1/4} on X; input must be origin-punctured and nonzero.
double nonconstancy_deviation(const DualFunction& psi);

enum class DualAction { transpose, inverse_mat };

struct DualConventionReport {
    u32 p = 0, d = 0;
    DualAction chosen = DualAction::transpose;
    double err_chosen = 0;  // consistency error of the selected convention
    double err_rejected = 0;
};

const char* dual_action_name(DualAction a);

/// Which matrix action on the dual grid makes
/// dft(act_convolve(mu, eta)) == dual_pushforward(mu, dft(eta)) hold. Resolved
/// once per (p, d) by a seeded consistency trial against the spatial side and
/// cached; throws verification_error if neither or both candidates pass.
const DualConventionReport& dual_action_convention(const GroupContext& ctx);

/// One dual-side walk step:
/// out(xi) = sum_g mu(g) e(<v(g), xi>) psi(M(g) xi)
/// with M(g) the resolved dual action of theta(g).
DualFunction dual_pushforward(const GroupContext& ctx, const GroupMeasure& mu,
                              const DualFunction& psi);

/// Same map with an explicit convention; used by the resolver and tests.
DualFunction dual_pushforward_with(const GroupContext& ctx, const GroupMeasure& mu,
                                   const DualFunction& psi, DualAction action);

} // namespace affwalk
