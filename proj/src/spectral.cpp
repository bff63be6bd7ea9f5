#include "affwalk/spectral.hpp"

#include "affwalk/bg_diag.hpp"
#include "affwalk/rng.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace affwalk {

WalkOperator::WalkOperator(GroupContextPtr ctx, const GroupMeasure& mu, Rep rep, u64 table_budget)
    : ctx_(std::move(ctx)), rep_(rep) {
    if (mu.p != ctx_->p() || mu.d != ctx_->d()) throw std::invalid_argument("mismatched moduli");
    mu.validate();
    symmetric_ = is_symmetric(*ctx_, mu, 1e-12);

    const GroupContext& g = *ctx_;
    switch (rep_) {
    case Rep::regular: {
        dim_ = g.group_order();
        if (dim_ * mu.masses.size() > table_budget)
            throw cap_exceeded("walk operator tables exceed budget");
        for (const auto& [gi, mass] : mu.masses) {
            const u64 inv = g.inverse_idx(gi);
            std::vector<u32> perm(dim_);
            for (u64 h = 0; h < dim_; ++h) perm[h] = static_cast<u32>(g.compose_idx(inv, h));
            masses_.push_back(mass);
            perms_.push_back(std::move(perm));
        }
        break;
    }
    case Rep::quotient: {
        dim_ = g.sl_order();
        const auto qm = quotient_pushforward(g, mu);
        if (dim_ * qm.size() > table_budget)
            throw cap_exceeded("walk operator tables exceed budget");
        for (const auto& [m, mass] : qm) {
            const u32 inv = g.sl_inv(m);
            std::vector<u32> perm(dim_);
            for (u64 t = 0; t < dim_; ++t) perm[t] = g.sl_mul(inv, static_cast<u32>(t));
            masses_.push_back(mass);
            perms_.push_back(std::move(perm));
        }
        break;
    }
    case Rep::space: {
        dim_ = g.space_size();
        if (dim_ * mu.masses.size() > table_budget)
            throw cap_exceeded("walk operator tables exceed budget");
        for (const auto& [gi, mass] : mu.masses) {
            const u64 inv = g.inverse_idx(gi);
            std::vector<u32> perm(dim_);
            for (u64 x = 0; x < dim_; ++x) perm[x] = static_cast<u32>(g.act_idx(inv, x));
            masses_.push_back(mass);
            perms_.push_back(std::move(perm));
        }
        break;
    }
    case Rep::dual_grid: {
        dim_ = g.space_size() - 1;
        const DualAction action = dual_action_convention(g).chosen;
        // atoms with equal linear part act identically on the dual grid
        std::map<u32, double> collapsed;
        for (const auto& [gi, mass] : mu.masses) {
            const u32 m = g.mat_index_of(gi);
            collapsed[action == DualAction::transpose ? g.sl_transpose(m) : g.sl_inv(m)] += mass;
        }
        if (dim_ * collapsed.size() > table_budget)
            throw cap_exceeded("walk operator tables exceed budget");
        for (const auto& [m, mass] : collapsed) {
            std::vector<u32> perm(dim_);
            for (u64 xi = 1; xi <= dim_; ++xi)
                perm[xi - 1] = static_cast<u32>(g.mat_apply_idx(m, xi) - 1);
            masses_.push_back(mass);
            perms_.push_back(std::move(perm));
        }
        break;
    }
    }
}

void WalkOperator::apply(const double* in, double* out) const {
    std::fill(out, out + dim_, 0.0);
    for (size_t k = 0; k < masses_.size(); ++k) {
        const double m = masses_[k];
        const u32* perm = perms_[k].data();
        for (u64 i = 0; i < dim_; ++i) out[i] += m * in[perm[i]];
    }
}

void WalkOperator::apply_adjoint(const double* in, double* out) const {
    std::fill(out, out + dim_, 0.0);
    for (size_t k = 0; k < masses_.size(); ++k) {
        const double m = masses_[k];
        const u32* perm = perms_[k].data();
        for (u64 i = 0; i < dim_; ++i) out[perm[i]] += m * in[i];
    }
}

void WalkOperator::apply(const cdouble* in, cdouble* out) const {
    std::fill(out, out + dim_, cdouble{0.0, 0.0});
    for (size_t k = 0; k < masses_.size(); ++k) {
        const double m = masses_[k];
        const u32* perm = perms_[k].data();
        for (u64 i = 0; i < dim_; ++i) out[i] += m * in[perm[i]];
    }
}

void WalkOperator::apply_atom(size_t k, const cdouble* in, cdouble* out) const {
    const u32* perm = perms_[k].data();
    for (u64 i = 0; i < dim_; ++i) out[i] = in[perm[i]];
}

std::vector<double> WalkOperator::apply(const std::vector<double>& in) const {
    if (in.size() != dim_) throw std::invalid_argument("vector size mismatch");
    std::vector<double> out(dim_);
    apply(in.data(), out.data());
    return out;
}

std::vector<cdouble> WalkOperator::apply(const std::vector<cdouble>& in) const {
    if (in.size() != dim_) throw std::invalid_argument("vector size mismatch");
    std::vector<cdouble> out(dim_);
    apply(in.data(), out.data());
    return out;
}

namespace {

void project_constants(std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    for (double& x : v) x -= mean;
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

L0Result l0_norm(const WalkOperator& op, const L0Options& opt) {
    const u64 n = op.dim();
    L0Result res;
    if (n <= 1) {
        res.converged = true;
        res.iterations = 0;
        return res;
    }

    Rng rng(opt.seed);
    std::vector<double> v(n), w(n), u(n);
    for (double& x : v) x = rng.next_unit() - 0.5;
    project_constants(v);
    double nv = norm2(v);
    if (nv < 1e-30) {
        for (u64 i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
        project_constants(v);
        nv = norm2(v);
    }
    for (double& x : v) x /= nv;

    double lambda_prev = -1.0;
    u32 stable = 0;
    for (u64 it = 1; it <= opt.max_iter; ++it) {
        op.apply(v.data(), w.data());
        project_constants(w);
        double lambda = 0;
        for (double x : w) lambda += x * x; // = ||A v||^2 = <v, A*A v>
        res.iterations = it;
        res.residual = std::abs(lambda - lambda_prev);
        if (lambda < 1e-280) {
            res.norm = 0.0;
            res.converged = true;
            return res;
        }
        if (lambda_prev >= 0 && res.residual < opt.tol) {
            if (++stable >= opt.stable_window) {
                res.norm = std::sqrt(std::max(lambda, 0.0));
                res.converged = true;
                return res;
            }
        } else {
            stable = 0;
        }
        lambda_prev = lambda;
        op.apply_adjoint(w.data(), u.data());
        project_constants(u);
        const double nu = norm2(u);
        if (nu < 1e-280) {
            res.norm = 0.0;
            res.converged = true;
            return res;
        }
        for (u64 i = 0; i < n; ++i) v[i] = u[i] / nu;
    }
    res.norm = std::sqrt(std::max(lambda_prev, 0.0));
    res.converged = false;
    return res;
}

double l0_norm_value(const WalkOperator& op, const L0Options& opt) {
    const L0Result r = l0_norm(op, opt);
    if (!r.converged)
        throw non_convergence("power iteration did not stabilize within " +
                              std::to_string(opt.max_iter) +
                              " iterations (last residual " + std::to_string(r.residual) + ")");
    return r.norm;
}

SpectralReport spectral_report(const GroupContextPtr& ctx, const GroupMeasure& mu,
                               const L0Options& opt) {
    SpectralReport rep;
    rep.p = ctx->p();
    rep.d = ctx->d();
    rep.support_size = mu.masses.size();
    rep.seed = opt.seed;

    WalkOperator walk(ctx, mu, Rep::regular);
    const L0Result wres = l0_norm(walk, opt);
    if (!wres.converged)
        throw non_convergence("walk norm power iteration did not converge");
    rep.walk_norm = wres.norm;
    rep.walk_gap = 1.0 - wres.norm;
    rep.iterations = wres.iterations;
    rep.residual = wres.residual;

    L0Options qopt = opt;
    qopt.seed = derive_seed(opt.seed, 0x71);
    WalkOperator quot(ctx, mu, Rep::quotient);
    rep.quotient_norm = l0_norm_value(quot, qopt);
    rep.quotient_gap = 1.0 - rep.quotient_norm;

    rep.alpha = alpha(*ctx, mu);
    rep.generates = generates_whole_group(*ctx, mu.support(), false);

    const double denom = std::min(rep.quotient_gap, 1.0 - rep.alpha);
    rep.ratio = denom > 0 ? rep.walk_gap / denom : 0.0;
    return rep;
}

MixingProfile mixing_profile(const GroupContextPtr& ctx, const GroupMeasure& mu, u32 l_max,
                             std::optional<double> walk_gap, const L0Options& opt) {
    const u64 n = ctx->group_order();
    if (n > kDefaultProductCap) throw cap_exceeded("group too large for a dense mixing profile");

    MixingProfile prof;
    if (walk_gap) {
        prof.walk_gap = *walk_gap;
    } else {
        WalkOperator walk(ctx, mu, Rep::regular);
        prof.walk_gap = 1.0 - l0_norm_value(walk, opt);
    }

    const double uniform_mass = 1.0 / double(n);
    std::vector<double> acc(n, 0.0), next(n);
    acc[ctx->identity_index()] = 1.0;
    for (u32 l = 0; l <= l_max; ++l) {
        double s = 0;
        for (double x : acc) {
            const double dl = x - uniform_mass;
            s += dl * dl;
        }
        MixingRow row;
        row.l = l;
        row.distance = std::sqrt(s);
        row.bound = std::exp(-double(l) * prof.walk_gap);
        row.certified = row.bound >= 1e-8;
        row.ok = !row.certified || row.distance <= row.bound + 1e-9;
        prof.all_ok = prof.all_ok && row.ok;
        prof.rows.push_back(row);
        if (l == l_max) break;
        std::fill(next.begin(), next.end(), 0.0);
        for (u64 h = 0; h < n; ++h) {
            const double ah = acc[h];
            if (ah == 0.0) continue;
            for (const auto& [k, mk] : mu.masses) next[ctx->compose_idx(h, k)] += ah * mk;
        }
        acc.swap(next);
    }
    return prof;
}

MultiplicityReport multiplicity_check(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                      double tol, u64 dim_cap) {
    if (!is_symmetric(*ctx, mu, 1e-12))
        throw hypothesis_error("multiplicity check requires a symmetric measure");
    const u64 n = ctx->group_order();
    if (n > dim_cap) throw cap_exceeded("group too large for dense eigendecomposition");

    MultiplicityReport rep;
    rep.p = ctx->p();
    rep.d = ctx->d();
    rep.dim = n;
    rep.tol = tol;
    rep.irrep_bound = min_irrep_dim(ctx->d(), ctx->p()).bound;
    rep.generates = generates_whole_group(*ctx, mu.support(), true);

    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (const auto& [gi, mass] : mu.masses) {
        const u64 inv = ctx->inverse_idx(gi);
        for (u64 h = 0; h < n; ++h)
            mat(Eigen::Index(h), Eigen::Index(ctx->compose_idx(inv, h))) += mass;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw non_convergence("dense eigendecomposition failed");
    const auto& ev = solver.eigenvalues(); // ascending

    // cluster from the top down: a gap > tol between consecutive eigenvalues
    // starts a new cluster
    for (Eigen::Index i = ev.size(); i-- > 0;) {
        const double lam = ev(i);
        if (rep.clusters.empty() || rep.clusters.back().low - lam > tol) {
            EigenvalueCluster c;
            c.low = c.high = c.mean = lam;
            c.multiplicity = 1;
            rep.clusters.push_back(c);
        } else {
            auto& c = rep.clusters.back();
            c.low = lam;
            c.mean += (lam - c.mean) / double(++c.multiplicity);
        }
    }
    rep.top_simple_ok = true;
    rep.multiplicities_ok = true;
    for (auto& c : rep.clusters) {
        c.contains_one = c.high >= 1.0 - tol && c.low <= 1.0 + tol;
        if (c.contains_one) {
            c.ok = !rep.generates || c.multiplicity == 1;
            rep.top_simple_ok = rep.top_simple_ok && c.ok;
        } else {
            c.ok = c.multiplicity >= rep.irrep_bound;
            rep.multiplicities_ok = rep.multiplicities_ok && c.ok;
        }
    }
    rep.passed = rep.top_simple_ok && rep.multiplicities_ok;
    return rep;
}

std::vector<std::vector<double>> dense_matrix(const WalkOperator& op) {
    const u64 n = op.dim();
    std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
    for (size_t k = 0; k < op.atom_count(); ++k) {
        const double m = op.atom_mass(k);
        const auto& perm = op.atom_perm(k);
        for (u64 i = 0; i < n; ++i) mat[i][perm[i]] += m;
    }
    return mat;
}

} // namespace affwalk
