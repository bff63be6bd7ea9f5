#include "affwalk/measure.hpp"

#include <algorithm>
#include <cmath>

namespace affwalk {

namespace {

void require_same_group(const GroupMeasure& a, const GroupMeasure& b) {
    if (a.p != b.p || a.d != b.d) throw std::invalid_argument("measures on different groups");
}

} // namespace

GroupMeasure GroupMeasure::dirac(const GroupContext& ctx, u64 gi) {
    if (gi >= ctx.group_order()) throw std::invalid_argument("group index out of range");
    GroupMeasure m;
    m.p = ctx.p();
    m.d = ctx.d();
    m.masses[gi] = 1.0;
    return m;
}

GroupMeasure GroupMeasure::uniform_on(const GroupContext& ctx, const ElementSet& a) {
    if (a.empty()) throw std::invalid_argument("uniform measure on empty set");
    GroupMeasure m;
    m.p = ctx.p();
    m.d = ctx.d();
    const double w = 1.0 / double(a.size());
    for (u64 gi : a.members) m.masses[gi] = w;
    return m;
}

GroupMeasure GroupMeasure::uniform_on_group(const GroupContext& ctx) {
    GroupMeasure m;
    m.p = ctx.p();
    m.d = ctx.d();
    const u64 n = ctx.group_order();
    const double w = 1.0 / double(n);
    auto hint = m.masses.end();
    for (u64 gi = 0; gi < n; ++gi) hint = m.masses.emplace_hint(hint, gi, w);
    return m;
}

double GroupMeasure::total() const {
    double t = 0;
    for (const auto& [gi, mass] : masses) t += mass;
    return t;
}

ElementSet GroupMeasure::support() const {
    std::vector<u64> idx;
    idx.reserve(masses.size());
    for (const auto& [gi, mass] : masses)
        if (mass > 0) idx.push_back(gi);
    return ElementSet::from_indices(std::move(idx));
}

void GroupMeasure::validate(double tol) const {
    if (masses.empty()) throw std::invalid_argument("measure with empty support");
    for (const auto& [gi, mass] : masses)
        if (!(mass >= 0)) throw std::invalid_argument("negative mass");
    if (std::abs(total() - 1.0) > tol) throw std::invalid_argument("total mass differs from 1");
}

VectorMeasure VectorMeasure::dirac(u32 p, u32 d, u64 x_index) {
    VectorMeasure m;
    m.p = p;
    m.d = d;
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) n *= p;
    if (x_index >= n) throw std::invalid_argument("point index out of range");
    m.density.assign(n, 0.0);
    m.density[x_index] = 1.0;
    return m;
}

VectorMeasure VectorMeasure::uniform(u32 p, u32 d) {
    VectorMeasure m;
    m.p = p;
    m.d = d;
    u64 n = 1;
    for (u32 i = 0; i < d; ++i) n *= p;
    m.density.assign(n, 1.0 / double(n));
    return m;
}

double VectorMeasure::total() const {
    double t = 0;
    for (double x : density) t += x;
    return t;
}

void VectorMeasure::validate(double tol) const {
    if (density.empty()) throw std::invalid_argument("empty density");
    for (double x : density)
        if (!(x >= 0)) throw std::invalid_argument("negative density entry");
    if (std::abs(total() - 1.0) > tol) throw std::invalid_argument("total mass differs from 1");
}

GroupMeasure convolve(const GroupContext& ctx, const GroupMeasure& mu, const GroupMeasure& nu) {
    require_same_group(mu, nu);
    const u64 n = ctx.group_order();
    const bool dense = mu.masses.size() > n / 4 || nu.masses.size() > n / 4;

    GroupMeasure out;
    out.p = mu.p;
    out.d = mu.d;

    if (dense) {
        std::vector<double> acc(n, 0.0);
        for (const auto& [g, mg] : mu.masses)
            for (const auto& [h, mh] : nu.masses) acc[ctx.compose_idx(g, h)] += mg * mh;
        auto hint = out.masses.end();
        for (u64 gi = 0; gi < n; ++gi)
            if (acc[gi] != 0.0) hint = out.masses.emplace_hint(hint, gi, acc[gi]);
    } else {
        for (const auto& [g, mg] : mu.masses)
            for (const auto& [h, mh] : nu.masses) out.masses[ctx.compose_idx(g, h)] += mg * mh;
    }

    double total = 0;
    for (const auto& [gi, mass] : out.masses) total += mass;
    const double drift = std::abs(total - 1.0);
    out.drift = mu.drift + nu.drift;
    if (drift > 1e-13) {
        out.drift += drift;
        for (auto& [gi, mass] : out.masses) mass /= total;
    }
    return out;
}

GroupMeasure convolve_power(const GroupContext& ctx, const GroupMeasure& mu, u32 l) {
    if (l == 0) return GroupMeasure::dirac(ctx, ctx.identity_index());
    GroupMeasure acc = mu;
    for (u32 i = 1; i < l; ++i) acc = convolve(ctx, acc, mu);
    return acc;
}

GroupMeasure convolve_power_squaring(const GroupContext& ctx, const GroupMeasure& mu, u32 l) {
    if (l == 0) return GroupMeasure::dirac(ctx, ctx.identity_index());
    GroupMeasure base = mu;
    GroupMeasure acc;
    bool have_acc = false;
    u32 e = l;
    while (true) {
        if (e & 1) {
            acc = have_acc ? convolve(ctx, acc, base) : base;
            have_acc = true;
        }
        e >>= 1;
        if (e == 0) break;
        base = convolve(ctx, base, base);
    }
    return acc;
}

GroupMeasure reverse(const GroupContext& ctx, const GroupMeasure& mu) {
    GroupMeasure out;
    out.p = mu.p;
    out.d = mu.d;
    out.drift = mu.drift;
    for (const auto& [gi, mass] : mu.masses) out.masses[ctx.inverse_idx(gi)] = mass;
    return out;
}

bool is_symmetric(const GroupContext& ctx, const GroupMeasure& mu, double tol) {
    for (const auto& [gi, mass] : mu.masses) {
        const u64 inv = ctx.inverse_idx(gi);
        auto it = mu.masses.find(inv);
        const double other = it == mu.masses.end() ? 0.0 : it->second;
        if (std::abs(mass - other) > tol) return false;
    }
    return true;
}

VectorMeasure act_convolve(const GroupContext& ctx, const GroupMeasure& mu,
                           const VectorMeasure& eta) {
    if (mu.p != eta.p || mu.d != eta.d) throw std::invalid_argument("mismatched moduli");
    const u64 n = ctx.space_size();
    VectorMeasure out;
    out.p = eta.p;
    out.d = eta.d;
    out.density.assign(n, 0.0);
    for (const auto& [g, mg] : mu.masses)
        for (u64 x = 0; x < n; ++x) {
            const double w = eta.density[x];
            if (w != 0.0) out.density[ctx.act_idx(g, x)] += mg * w;
        }
    return out;
}

VectorMeasure point_pushforward(const GroupContext& ctx, const GroupMeasure& mu, u64 x_index) {
    const u64 n = ctx.space_size();
    if (x_index >= n) throw std::invalid_argument("point index out of range");
    VectorMeasure out;
    out.p = mu.p;
    out.d = mu.d;
    out.density.assign(n, 0.0);
    for (const auto& [g, mg] : mu.masses) out.density[ctx.act_idx(g, x_index)] += mg;
    return out;
}

double alpha(const GroupContext& ctx, const GroupMeasure& mu) {
    const u64 n = ctx.space_size();
    double best = 0;
    std::vector<double> acc(n);
    for (u64 x = 0; x < n; ++x) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& [g, mg] : mu.masses) acc[ctx.act_idx(g, x)] += mg;
        for (double v : acc) best = std::max(best, v);
    }
    return best;
}

double max_point_l2(const GroupContext& ctx, const GroupMeasure& mu) {
    const u64 n = ctx.space_size();
    double best = 0;
    std::vector<double> acc(n);
    for (u64 x = 0; x < n; ++x) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& [g, mg] : mu.masses) acc[ctx.act_idx(g, x)] += mg;
        double s = 0;
        for (double v : acc) s += v * v;
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

namespace {

double lq_of_range(const double* begin, const double* end, double q) {
    if (std::isinf(q)) {
        double m = 0;
        for (const double* it = begin; it != end; ++it) m = std::max(m, std::abs(*it));
        return m;
    }
    if (q < 1) throw std::invalid_argument("L^q norm requires q >= 1");
    if (q == 1.0) {
        double s = 0;
        for (const double* it = begin; it != end; ++it) s += std::abs(*it);
        return s;
    }
    if (q == 2.0) {
        double s = 0;
        for (const double* it = begin; it != end; ++it) s += *it * *it;
        return std::sqrt(s);
    }
    if (q == 4.0) {
        double s = 0;
        for (const double* it = begin; it != end; ++it) {
            const double t = *it * *it;
            s += t * t;
        }
        return std::sqrt(std::sqrt(s));
    }
    double s = 0;
    for (const double* it = begin; it != end; ++it) s += std::pow(std::abs(*it), q);
    return std::pow(s, 1.0 / q);
}

} // namespace

double lq_norm(const std::vector<double>& f, double q) {
    return lq_of_range(f.data(), f.data() + f.size(), q);
}

double lq_norm(const VectorMeasure& f, double q) { return lq_norm(f.density, q); }

double lq_norm(const GroupMeasure& f, double q) {
    if (std::isinf(q)) {
        double m = 0;
        for (const auto& [gi, mass] : f.masses) m = std::max(m, std::abs(mass));
        return m;
    }
    if (q < 1) throw std::invalid_argument("L^q norm requires q >= 1");
    double s = 0;
    for (const auto& [gi, mass] : f.masses)
        s += q == 2.0 ? mass * mass : std::pow(std::abs(mass), q);
    return q == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / q);
}

namespace {

u64 space_size_of(u32 p, u32 d) {
    u64 n = 1;
    while (d--) n *= p;
    return n;
}

/// Digit-wise radix-p sum of two vector indices.
u64 digit_add(u32 p, u32 d, u64 a, u64 b) {
    u64 out = 0, scale = 1;
    for (u32 i = 0; i < d; ++i) {
        out += scale * ((a % p + b % p) % p);
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

u64 digit_neg(u32 p, u32 d, u64 a) {
    u64 out = 0, scale = 1;
    for (u32 i = 0; i < d; ++i) {
        out += scale * ((p - a % p) % p);
        a /= p;
        scale *= p;
    }
    return out;
}

} // namespace

std::vector<double> vec_convolve(u32 p, u32 d, const std::vector<double>& a,
                                 const std::vector<double>& b) {
    const u64 n = space_size_of(p, d);
    if (a.size() != n || b.size() != n) throw std::invalid_argument("density size mismatch");
    std::vector<double> out(n, 0.0);
    for (u64 x = 0; x < n; ++x) {
        const double ax = a[x];
        if (ax == 0.0) continue;
        for (u64 y = 0; y < n; ++y)
            if (b[y] != 0.0) out[digit_add(p, d, x, y)] += ax * b[y];
    }
    return out;
}

std::vector<double> vec_convolve(const GroupContext& ctx, const std::vector<double>& a,
                                 const std::vector<double>& b) {
    return vec_convolve(ctx.p(), ctx.d(), a, b);
}

std::vector<double> vec_reverse(u32 p, u32 d, const std::vector<double>& a) {
    const u64 n = space_size_of(p, d);
    if (a.size() != n) throw std::invalid_argument("density size mismatch");
    std::vector<double> out(n, 0.0);
    for (u64 x = 0; x < n; ++x) out[digit_neg(p, d, x)] = a[x];
    return out;
}

std::vector<double> vec_reverse(const GroupContext& ctx, const std::vector<double>& a) {
    return vec_reverse(ctx.p(), ctx.d(), a);
}

std::map<u32, double> quotient_pushforward(const GroupContext& ctx, const GroupMeasure& mu) {
    std::map<u32, double> out;
    for (const auto& [gi, mass] : mu.masses)
        out[static_cast<u32>(gi % ctx.sl_order())] += mass;
    return out;
}

} // namespace affwalk
