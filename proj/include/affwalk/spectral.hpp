#pragma once

#include "affwalk/fourier.hpp"
#include "affwalk/measure.hpp"

#include <optional>

namespace affwalk {

enum class Rep {
    regular,  // left regular representation on G
    quotient, // left regular representation of the SL quotient
    space,    // permutation action on F_p^d
    dual_grid // permutation action on X (dual grid minus origin)
};

/// Averaging operator of a measure in one of the four representations,
/// stored as one permutation table per support atom:
/// (A f)(i) = sum_k mass_k f(perm_k[i]). Immutable after construction.
class WalkOperator {
  public:
    WalkOperator(GroupContextPtr ctx, const GroupMeasure& mu, Rep rep,
                 u64 table_budget = u64(1) << 28);

    const GroupContext& ctx() const { return *ctx_; }
    Rep representation() const { return rep_; }
    u64 dim() const { return dim_; }
    size_t atom_count() const { return masses_.size(); }
    double atom_mass(size_t k) const { return masses_[k]; }
    const std::vector<u32>& atom_perm(size_t k) const { return perms_[k]; }
    bool measure_symmetric() const { return symmetric_; }

    void apply(const double* in, double* out) const;
    /// Adjoint equals the operator of the reversed measure; implemented by
    /// scattering through the same tables.
    void apply_adjoint(const double* in, double* out) const;

    void apply(const cdouble* in, cdouble* out) const;
    /// Single unitary pi(g_k) without the mass weight.
    void apply_atom(size_t k, const cdouble* in, cdouble* out) const;

    std::vector<double> apply(const std::vector<double>& in) const;
    std::vector<cdouble> apply(const std::vector<cdouble>& in) const;

  private:
    GroupContextPtr ctx_;
    Rep rep_;
    u64 dim_ = 0;
    bool symmetric_ = false;
    std::vector<double> masses_;
    std::vector<std::vector<u32>> perms_;
};

struct L0Options {
    double tol = 1e-10;
    u64 max_iter = 100000;
    u64 seed = 0x6a09e667f3bcc908ull;
    u32 stable_window = 5; // consecutive Rayleigh diffs below tol required
};

struct L0Result {
    double norm = 0;
    u64 iterations = 0;
    double residual = 0;
    bool converged = false;
};

/// Operator norm restricted to the mean-zero subspace: square root of the top
/// eigenvalue of L0(mu-reversed * mu), by power iteration with the constant
/// component projected out every step.
L0Result l0_norm(const WalkOperator& op, const L0Options& opt = {});

/// Same, but throws non_convergence unless the iteration converged.
double l0_norm_value(const WalkOperator& op, const L0Options& opt = {});

struct SpectralReport {
    u32 p = 0, d = 0;
    u64 support_size = 0;
    double walk_norm = 0, walk_gap = 0;
    double quotient_norm = 0, quotient_gap = 0;
    double alpha = 0;
    double ratio = 0; // walk_gap / min(quotient_gap, 1 - alpha)
    u64 iterations = 0;
    double residual = 0;
    u64 seed = 0;
    bool generates = false; // coset-free generation hypothesis
};

SpectralReport spectral_report(const GroupContextPtr& ctx, const GroupMeasure& mu,
                               const L0Options& opt = {});

struct MixingRow {
    u32 l = 0;
    double distance = 0; // L2 distance of mu^(l) . delta_1 from uniform
    double bound = 0;    // exp(-l * walk_gap)
    bool certified = false; // bound >= 1e-8, where doubles can decide
    bool ok = false;        // !certified or distance <= bound + 1e-9
};

struct MixingProfile {
    double walk_gap = 0;
    std::vector<MixingRow> rows;
    bool all_ok = true;
};

MixingProfile mixing_profile(const GroupContextPtr& ctx, const GroupMeasure& mu, u32 l_max,
                             std::optional<double> walk_gap = {}, const L0Options& opt = {});

struct EigenvalueCluster {
    double mean = 0, low = 0, high = 0;
    u64 multiplicity = 0;
    bool contains_one = false;
    bool ok = false; // multiplicity >= bound, or the simple top eigenvalue
};

struct MultiplicityReport {
    u32 p = 0, d = 0;
    u64 dim = 0;
    double tol = 0;
    u64 irrep_bound = 0;
    bool generates = false;
    std::vector<EigenvalueCluster> clusters; // descending by eigenvalue
    bool top_simple_ok = false;
    bool multiplicities_ok = false;
    bool passed = false;
};

/// Dense symmetric eigendecomposition of the regular-representation operator,
/// clustered with gap tolerance tol.
MultiplicityReport multiplicity_check(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                      double tol = 1e-6, u64 dim_cap = 5000);

/// Dense matrix of the operator; for oracles and eigensolves. Row-major,
/// M[i][j] = sum of masses with perm_k[i] == j.
std::vector<std::vector<double>> dense_matrix(const WalkOperator& op);

} // namespace affwalk
