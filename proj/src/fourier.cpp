#include "affwalk/fourier.hpp"

#include "affwalk/rng.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace affwalk {

namespace {

std::vector<cdouble> character_table(u32 p) {
    std::vector<cdouble> roots(p);
    for (u32 r = 0; r < p; ++r) {
        const double angle = -2.0 * std::numbers::pi * double(r) / double(p);
        roots[r] = {std::cos(angle), std::sin(angle)};
    }
    return roots;
}

/// Digits of every index of F_p^d, flattened: digits[x * d + i] = x_i.
std::vector<u16> digit_table(u32 p, u32 d) {
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) n *= p;
    std::vector<u16> digits(n * d, 0);
    std::vector<u16> odo(d, 0);
    for (u64 x = 0; x < n; ++x) {
        for (u32 i = 0; i < d; ++i) digits[x * d + i] = odo[i];
        for (u32 i = d; i-- > 0;) {
            if (++odo[i] < p) break;
            odo[i] = 0;
        }
    }
    return digits;
}

template <typename Scalar>
DualFunction dft_reference(u32 p, u32 d, const std::vector<Scalar>& f) {
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) n *= p;
    if (f.size() != n) throw std::invalid_argument("spatial function has wrong size");
    const auto roots = character_table(p);
    const auto digits = digit_table(p, d);
    DualFunction out = DualFunction::zero(p, d, true);
    for (u64 x = 0; x < n; ++x) {
        if (f[x] == Scalar{}) continue;
        const u16* xd = &digits[x * d];
        for (u64 xi = 0; xi < n; ++xi) {
            const u16* xid = &digits[xi * d];
            u64 dot = 0;
            for (u32 i = 0; i < d; ++i) dot += u64(xd[i]) * xid[i];
            out.values[xi] += roots[dot % p] * f[x];
        }
    }
    return out;
}

} // namespace

DualFunction DualFunction::zero(u32 p, u32 d, bool origin_included_) {
    DualFunction phi;
    phi.p = p;
    phi.d = d;
    phi.origin_included = origin_included_;
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) n *= p;
    phi.values.assign(n, cdouble{0.0, 0.0});
    return phi;
}

DualFunction dft(u32 p, u32 d, const std::vector<double>& f) { return dft_reference(p, d, f); }

DualFunction dft(u32 p, u32 d, const std::vector<cdouble>& f) { return dft_reference(p, d, f); }

DualFunction dft(const GroupContext& ctx, const std::vector<double>& f) {
    return dft_reference(ctx.p(), ctx.d(), f);
}

DualFunction dft(const GroupContext& ctx, const VectorMeasure& f) {
    if (f.p != ctx.p() || f.d != ctx.d()) throw std::invalid_argument("mismatched moduli");
    return dft_reference(ctx.p(), ctx.d(), f.density);
}

DualFunction dft(const VectorMeasure& f) { return dft_reference(f.p, f.d, f.density); }

DualFunction dft(const GroupContext& ctx, const std::vector<cdouble>& f) {
    return dft_reference(ctx.p(), ctx.d(), f);
}

DualFunction dft_axis(const GroupContext& ctx, const std::vector<double>& f) {
    const u32 p = ctx.p(), d = ctx.d();
    const u64 n = ctx.space_size();
    if (f.size() != n) throw std::invalid_argument("spatial function has wrong size");
    const auto roots = character_table(p);
    std::vector<cdouble> buf(f.begin(), f.end());
    std::vector<cdouble> line(p), transformed(p);
    // one 1-D transform along each axis; axis a has stride p^(d-1-a)
    u64 stride = n;
    for (u32 a = 0; a < d; ++a) {
        stride /= p;
        for (u64 base = 0; base < n; ++base) {
            // visit each line once: base must have digit 0 along axis a
            if ((base / stride) % p != 0) continue;
            for (u32 j = 0; j < p; ++j) line[j] = buf[base + j * stride];
            for (u32 k = 0; k < p; ++k) {
                cdouble acc{0.0, 0.0};
                for (u32 j = 0; j < p; ++j) acc += roots[(u64(j) * k) % p] * line[j];
                transformed[k] = acc;
            }
            for (u32 k = 0; k < p; ++k) buf[base + k * stride] = transformed[k];
        }
    }
    DualFunction out = DualFunction::zero(p, d, true);
    out.values = std::move(buf);
    return out;
}

DualFunction restrict_to_x(const DualFunction& phi) {
    DualFunction out = phi;
    out.origin_included = false;
    out.values[0] = cdouble{0.0, 0.0};
    return out;
}

double lhat_norm(const DualFunction& phi, double q) {
    const double n = double(phi.values.size());
    if (std::isinf(q)) {
        double m = 0;
        for (const cdouble& z : phi.values) m = std::max(m, std::abs(z));
        return m;
    }
    if (q < 1) throw std::invalid_argument("L-hat norm requires q >= 1");
    double s = 0;
    if (q == 2.0) {
        for (const cdouble& z : phi.values) s += std::norm(z);
        return std::sqrt(s / n);
    }
    if (q == 4.0) {
        for (const cdouble& z : phi.values) {
            const double t = std::norm(z);
            s += t * t;
        }
        return std::sqrt(std::sqrt(s / n));
    }
    for (const cdouble& z : phi.values) s += std::pow(std::abs(z), q);
    return std::pow(s / n, 1.0 / q);
}

cdouble mazur_point(cdouble z) { return std::abs(z) * z; }

std::vector<cdouble> mazur(const std::vector<cdouble>& f) {
    std::vector<cdouble> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = mazur_point(f[i]);
    return out;
}

DualFunction mazur(const DualFunction& f) {
    DualFunction out = f;
    for (cdouble& z : out.values) z = mazur_point(z);
    return out;
}

double nonconstancy_deviation(const DualFunction& psi) {
    if (psi.origin_included)
        throw std::invalid_argument("nonconstancy deviation expects an origin-punctured input");
    const double t = lhat_norm(psi, 4.0);
    if (t == 0.0) throw std::invalid_argument("nonconstancy deviation of the zero function");
    const double n = double(psi.values.size());
    const double c = std::pow(n / (n - 1.0), 0.25);
    double s = 0;
    for (size_t xi = 1; xi < psi.values.size(); ++xi) {
        const double dev = std::abs(psi.values[xi]) / t - c;
        const double dev2 = dev * dev;
        s += dev2 * dev2;
    }
    return std::sqrt(std::sqrt(s / n));
}

const char* dual_action_name(DualAction a) {
    return a == DualAction::transpose ? "transpose" : "inverse";
}

DualFunction dual_pushforward_with(const GroupContext& ctx, const GroupMeasure& mu,
                                   const DualFunction& psi, DualAction action) {
    if (mu.p != ctx.p() || mu.d != ctx.d() || psi.p != ctx.p() || psi.d != ctx.d())
        throw std::invalid_argument("mismatched moduli");
    const u32 p = ctx.p(), d = ctx.d();
    const u64 n = ctx.space_size();
    const auto roots = character_table(p);
    const auto digits = digit_table(p, d);
    DualFunction out = DualFunction::zero(p, d, psi.origin_included);
    std::vector<u16> vdig(d);
    for (const auto& [gi, mass] : mu.masses) {
        const u64 v = ctx.vec_index_of(gi);
        const u32 m = ctx.mat_index_of(gi);
        const u32 mact =
            action == DualAction::transpose ? ctx.sl_transpose(m) : ctx.sl_inv(m);
        u64 tv = v;
        for (u32 i = d; i-- > 0;) {
            vdig[i] = static_cast<u16>(tv % p);
            tv /= p;
        }
        for (u64 xi = 0; xi < n; ++xi) {
            const u16* xid = &digits[xi * d];
            u64 dot = 0;
            for (u32 i = 0; i < d; ++i) dot += u64(vdig[i]) * xid[i];
            out.values[xi] += mass * roots[dot % p] * psi.values[ctx.mat_apply_idx(mact, xi)];
        }
    }
    if (!out.origin_included) out.values[0] = cdouble{0.0, 0.0};
    return out;
}

namespace {

double consistency_error(const GroupContext& ctx, const GroupMeasure& mu,
                         const VectorMeasure& eta, DualAction action) {
    const DualFunction lhs = dft(ctx, act_convolve(ctx, mu, eta));
    const DualFunction rhs = dual_pushforward_with(ctx, mu, dft(ctx, eta), action);
    double err = 0;
    for (size_t i = 0; i < lhs.values.size(); ++i)
        err = std::max(err, std::abs(lhs.values[i] - rhs.values[i]));
    return err;
}

DualConventionReport resolve_dual_action(const GroupContext& ctx) {
    constexpr double tol = 1e-10;
    constexpr int trials = 3;
    Rng rng(derive_seed(0x6175616cull, (u64(ctx.p()) << 8) | ctx.d()));
    double err_t = 0, err_i = 0;
    for (int t = 0; t < trials; ++t) {
        GroupMeasure mu;
        mu.p = ctx.p();
        mu.d = ctx.d();
        double total = 0;
        while (mu.masses.size() < 4) {
            const u64 gi = rng.below(ctx.group_order());
            const double w = 0.1 + rng.next_unit();
            mu.masses[gi] += w;
            total += w;
        }
        for (auto& [gi, mass] : mu.masses) mass /= total;
        VectorMeasure eta;
        eta.p = ctx.p();
        eta.d = ctx.d();
        eta.density.resize(ctx.space_size());
        double etot = 0;
        for (double& x : eta.density) {
            x = rng.next_unit() + 1e-3;
            etot += x;
        }
        for (double& x : eta.density) x /= etot;
        err_t = std::max(err_t, consistency_error(ctx, mu, eta, DualAction::transpose));
        err_i = std::max(err_i, consistency_error(ctx, mu, eta, DualAction::inverse_mat));
    }
    DualConventionReport rep;
    rep.p = ctx.p();
    rep.d = ctx.d();
    const bool t_ok = err_t <= tol, i_ok = err_i <= tol;
    if (t_ok == i_ok)
        throw verification_error(
            std::string("dual action resolution failed: ") +
            (t_ok ? "both conventions satisfy the consistency identity"
                  : "neither convention satisfies the consistency identity"));
    rep.chosen = t_ok ? DualAction::transpose : DualAction::inverse_mat;
    rep.err_chosen = t_ok ? err_t : err_i;
    rep.err_rejected = t_ok ? err_i : err_t;
    return rep;
}

} // namespace

const DualConventionReport& dual_action_convention(const GroupContext& ctx) {
    static std::mutex mu;
    static std::map<std::pair<u32, u32>, DualConventionReport> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ctx.p(), ctx.d());
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, resolve_dual_action(ctx)).first;
    return it->second;
}

DualFunction dual_pushforward(const GroupContext& ctx, const GroupMeasure& mu,
                              const DualFunction& psi) {
    return dual_pushforward_with(ctx, mu, psi, dual_action_convention(ctx).chosen);
}

} // namespace affwalk
