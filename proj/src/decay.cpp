#include "affwalk/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace affwalk {

namespace {

constexpr double kAtomFraction = 40.0 / 41.0;
constexpr double kSlack = 1e-12;

void require_measure_matches(const GroupContextPtr& ctx, const GroupMeasure& mu) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (mu.p != ctx->p() || mu.d != ctx->d())
        throw std::invalid_argument("measure parameters do not match group context");
}

// Per-point weight of the representation space: dual-grid functions carry the
// 1/p^d normalization, spatial functions use counting measure.
double space_weight(const WalkOperator& op) {
    if (op.representation() == Rep::dual_grid) {
        double n = static_cast<double>(op.ctx().space_size());
        return 1.0 / n;
    }
    return 1.0;
}

double weighted_lq(const std::vector<cdouble>& f, double q, double w) {
    double acc = 0.0;
    if (q == 2.0) {
        for (const auto& z : f) acc += std::norm(z);
        return std::sqrt(acc * w);
    }
    if (q == 4.0) {
        for (const auto& z : f) {
            double m2 = std::norm(z);
            acc += m2 * m2;
        }
        return std::pow(acc * w, 0.25);
    }
    for (const auto& z : f) acc += std::pow(std::abs(z), q);
    return std::pow(acc * w, 1.0 / q);
}

void require_unit_l4(const std::vector<cdouble>& f, double w, const char* where) {
    double n4 = weighted_lq(f, 4.0, w);
    if (std::fabs(n4 - 1.0) > 1e-10)
        throw std::invalid_argument(std::string(where) + ": input must have unit L4 norm");
}

std::vector<double> kernel_apply(const std::vector<double>& k, const std::vector<double>& v) {
    size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (size_t y = 0; y < n; ++y) {
        const double* row = k.data() + y * n;
        double acc = 0.0;
        for (size_t x = 0; x < n; ++x) acc += row[x] * v[x];
        out[y] = acc;
    }
    return out;
}

std::vector<double> kernel_mul(const std::vector<double>& a, const std::vector<double>& b,
                               size_t n) {
    std::vector<double> out(n * n, 0.0);
    for (size_t y = 0; y < n; ++y) {
        const double* arow = a.data() + y * n;
        double* orow = out.data() + y * n;
        for (size_t z = 0; z < n; ++z) {
            double av = arow[z];
            if (av == 0.0) continue;
            const double* brow = b.data() + z * n;
            for (size_t x = 0; x < n; ++x) orow[x] += av * brow[x];
        }
    }
    return out;
}

double kernel_max_entry(const std::vector<double>& k) {
    double m = 0.0;
    for (double v : k) m = std::max(m, v);
    return m;
}

double kernel_max_column_l2(const std::vector<double>& k, size_t n) {
    double best = 0.0;
    for (size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (size_t y = 0; y < n; ++y) {
            double v = k[y * n + x];
            acc += v * v;
        }
        best = std::max(best, acc);
    }
    return std::sqrt(best);
}

DecayStepRecord make_step_record(const GroupContext& ctx, u64 l, const std::vector<double>& eta) {
    DecayStepRecord rec;
    rec.l = l;
    rec.l2_norm = lq_norm(eta, 2.0);
    DualFunction psi = restrict_to_x(dft(ctx, eta));
    rec.l4_fourier_norm = lhat_norm(psi, 4.0);
    double threshold = kAtomFraction * rec.l2_norm;
    for (size_t x = 0; x < eta.size(); ++x) {
        if (eta[x] > threshold) {
            rec.case_tag = "atom";
            rec.atom_location = FpVector::from_index(ctx.p(), ctx.d(), x);
            break;
        }
    }
    if (rec.case_tag.empty()) rec.case_tag = "fourier";
    rec.deviation = rec.l4_fourier_norm > 1e-14 ? nonconstancy_deviation(psi) : 0.0;
    return rec;
}

} // namespace

std::vector<double> action_kernel(const GroupContextPtr& ctx, const GroupMeasure& mu) {
    require_measure_matches(ctx, mu);
    size_t n = static_cast<size_t>(ctx->space_size());
    std::vector<double> k(n * n, 0.0);
    for (const auto& [gi, mass] : mu.masses) {
        for (size_t x = 0; x < n; ++x) {
            k[static_cast<size_t>(ctx->act_idx(gi, x)) * n + x] += mass;
        }
    }
    return k;
}

DecayHypotheses check_decay_hypotheses(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                       std::optional<double> quotient_norm_override) {
    require_measure_matches(ctx, mu);
    mu.validate();
    DecayHypotheses h;

    h.symmetry_defect = 0.0;
    for (const auto& [gi, mass] : mu.masses) {
        u64 inv = ctx->inverse_idx(gi);
        auto it = mu.masses.find(inv);
        double other = it == mu.masses.end() ? 0.0 : it->second;
        h.symmetry_defect = std::max(h.symmetry_defect, std::fabs(mass - other));
    }
    h.symmetric = h.symmetry_defect <= 1e-12;

    h.max_point_l2 = max_point_l2(*ctx, mu);
    h.point_mass_ok = h.max_point_l2 <= 0.75 + kSlack;

    if (quotient_norm_override) {
        h.quotient_norm = *quotient_norm_override;
    } else {
        WalkOperator q(ctx, mu, Rep::quotient);
        h.quotient_norm = l0_norm_value(q);
    }
    h.quotient_ok = h.quotient_norm <= 0.5 + kSlack;
    return h;
}

DecayReport decay_run(const GroupContextPtr& ctx, const GroupMeasure& mu, const FpVector& v0,
                      u64 l_cap, std::optional<DecayHypotheses> hypotheses, bool run_to_cap) {
    require_measure_matches(ctx, mu);
    if (v0.p != ctx->p() || static_cast<u32>(v0.coords.size()) != ctx->d())
        throw std::invalid_argument("starting point does not match group context");

    DecayReport report;
    report.p = ctx->p();
    report.d = ctx->d();
    report.hypotheses = hypotheses ? *hypotheses : check_decay_hypotheses(ctx, mu);
    report.hypotheses_ok = report.hypotheses.ok();
    report.target =
        5.0 * std::pow(static_cast<double>(ctx->p()), -0.25 * static_cast<double>(ctx->d()));

    std::vector<double> kernel = action_kernel(ctx, mu);
    size_t n = static_cast<size_t>(ctx->space_size());
    std::vector<double> eta(n, 0.0);
    eta[static_cast<size_t>(v0.index())] = 1.0;

    for (u64 l = 0;; ++l) {
        DecayStepRecord rec = make_step_record(*ctx, l, eta);
        if (l >= 1 && !report.stop_l && rec.l2_norm <= report.target) report.stop_l = l;
        report.steps.push_back(std::move(rec));
        bool done = run_to_cap ? l >= l_cap : (report.stop_l.has_value() || l >= l_cap);
        if (done) break;
        eta = kernel_apply(kernel, eta);
    }
    report.reached_cap = !report.stop_l.has_value();
    return report;
}

AtomCaseBound atom_case_contraction(const GroupContextPtr& ctx, const GroupMeasure& mu,
                                    const VectorMeasure& eta,
                                    std::optional<DecayHypotheses> hypotheses) {
    require_measure_matches(ctx, mu);
    eta.validate();
    if (eta.p != ctx->p() || eta.d != ctx->d())
        throw std::invalid_argument("density parameters do not match group context");
    DecayHypotheses h = hypotheses ? *hypotheses : check_decay_hypotheses(ctx, mu);
    if (!h.ok()) throw verification_error("atom_case_contraction: decay hypotheses fail");

    double l2 = lq_norm(eta, 2.0);
    size_t atom = eta.density.size();
    for (size_t x = 0; x < eta.density.size(); ++x) {
        if (eta.density[x] >= kAtomFraction * l2 - kSlack) {
            atom = x;
            break;
        }
    }
    if (atom == eta.density.size())
        throw verification_error("atom_case_contraction: no point carries 40/41 of the L2 norm");

    AtomCaseBound out;
    out.atom = FpVector::from_index(ctx->p(), ctx->d(), atom);
    VectorMeasure next = act_convolve(*ctx, mu, eta);
    out.lhs = lq_norm(next, 2.0);
    double at = eta.density[atom];
    out.intermediate = 0.75 * at + std::sqrt(std::max(0.0, l2 * l2 - at * at));
    out.rhs = std::exp(-std::pow(2.0, -5.0)) * l2;
    if (!(out.lhs < out.rhs))
        throw verification_error("atom_case_contraction: contraction bound failed");
    return out;
}

ClarksonBound clarkson_bound(const WalkOperator& op, const std::vector<cdouble>& f) {
    if (f.size() != op.dim()) throw std::invalid_argument("clarkson_bound: dimension mismatch");
    double w = space_weight(op);
    require_unit_l4(f, w, "clarkson_bound");

    std::vector<cdouble> averaged = op.apply(f);
    ClarksonBound out;
    out.lhs = weighted_lq(averaged, 4.0, w);
    if (out.lhs < 1e-14) {
        out.degenerate = true;
        out.rhs = 1.0;
        return out;
    }
    std::vector<cdouble> f0(averaged);
    for (auto& z : f0) z /= out.lhs;

    double integral = 0.0;
    std::vector<cdouble> image(f.size());
    std::vector<cdouble> diff(f.size());
    for (size_t k = 0; k < op.atom_count(); ++k) {
        op.apply_atom(k, f.data(), image.data());
        for (size_t i = 0; i < f.size(); ++i) diff[i] = image[i] - f0[i];
        double dist = weighted_lq(diff, 4.0, w);
        integral += op.atom_mass(k) * dist * dist * dist * dist;
    }
    out.rhs = 1.0 - std::pow(2.0, -5.0) * integral;
    if (out.lhs > out.rhs + 1e-10)
        throw verification_error("clarkson_bound: averaging bound failed");
    return out;
}

L4ContractionBound l4_contraction_bound(const WalkOperator& op, const std::vector<cdouble>& f) {
    if (f.size() != op.dim())
        throw std::invalid_argument("l4_contraction_bound: dimension mismatch");
    double w = space_weight(op);
    require_unit_l4(f, w, "l4_contraction_bound");

    L4ContractionBound out;
    out.mean_zero_norm = l0_norm_value(op);
    out.applicable = out.mean_zero_norm <= 0.5 + kSlack;
    if (!out.applicable) return out;

    double nu_total = w * static_cast<double>(f.size());
    double radius = std::pow(nu_total, -0.25);

    bool nonnegative = true;
    for (const auto& z : f) {
        if (z.imag() != 0.0 || z.real() < 0.0) {
            nonnegative = false;
            break;
        }
    }

    std::vector<cdouble> diff(f.size());
    auto distance_for = [&](double phase) {
        cdouble z = std::polar(radius, phase);
        for (size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - z;
        return weighted_lq(diff, 4.0, w);
    };

    double best_phase = 0.0;
    if (!nonnegative) {
        constexpr int kGrid = 512;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kGrid; ++i) {
            double phase = 2.0 * M_PI * i / kGrid;
            double val = distance_for(phase);
            if (val < best) {
                best = val;
                best_phase = phase;
            }
        }
        double lo = best_phase - 2.0 * M_PI / kGrid;
        double hi = best_phase + 2.0 * M_PI / kGrid;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = hi - gr * (hi - lo);
        double b = lo + gr * (hi - lo);
        double fa = distance_for(a);
        double fb = distance_for(b);
        while (hi - lo > 1e-10) {
            if (fa < fb) {
                hi = b;
                b = a;
                fb = fa;
                a = hi - gr * (hi - lo);
                fa = distance_for(a);
            } else {
                lo = a;
                a = b;
                fa = fb;
                b = lo + gr * (hi - lo);
                fb = distance_for(b);
            }
        }
        best_phase = 0.5 * (lo + hi);
    }

    out.min_distance = distance_for(best_phase);
    out.minimizer = std::polar(radius, best_phase);
    std::vector<cdouble> averaged = op.apply(f);
    out.lhs = weighted_lq(averaged, 4.0, w);
    out.rhs = 1.0 - std::pow(2.0, -16.0) * std::pow(out.min_distance, 8.0);
    if (out.lhs > out.rhs + 1e-10)
        throw verification_error("l4_contraction_bound: contraction bound failed");
    return out;
}

TransferBound l4_l2_transfer(const WalkOperator& op, const std::vector<cdouble>& f) {
    if (f.size() != op.dim()) throw std::invalid_argument("l4_l2_transfer: dimension mismatch");
    double w = space_weight(op);
    require_unit_l4(f, w, "l4_l2_transfer");

    std::vector<cdouble> averaged = op.apply(f);
    std::vector<cdouble> averaged_mazur = op.apply(mazur(f));
    TransferBound out;
    out.lhs = std::pow(2.0, 7.0) * (1.0 - weighted_lq(averaged, 4.0, w));
    double m = 1.0 - weighted_lq(averaged_mazur, 2.0, w);
    out.rhs = m * m;
    if (out.lhs < out.rhs - 1e-10)
        throw verification_error("l4_l2_transfer: transfer bound failed");
    return out;
}

NoMassOriginBound no_mass_origin_check(const GroupContextPtr& ctx, const VectorMeasure& eta) {
    if (!ctx) throw std::invalid_argument("null group context");
    if (eta.p != ctx->p() || eta.d != ctx->d())
        throw std::invalid_argument("density parameters do not match group context");
    eta.validate();

    double l2 = lq_norm(eta, 2.0);
    for (double v : eta.density) {
        if (v > kAtomFraction * l2 + kSlack)
            throw verification_error("no_mass_origin_check: atom hypothesis fails");
    }

    std::vector<double> folded =
        vec_convolve(*ctx, eta.density, vec_reverse(*ctx, eta.density));
    NoMassOriginBound out;
    double total_sq = 0.0;
    for (size_t x = 0; x < folded.size(); ++x) {
        double sq = folded[x] * folded[x];
        total_sq += sq;
        if (x != 0) out.lhs += sq;
    }
    out.rhs = total_sq / 50.0;
    if (out.lhs < out.rhs - 1e-12)
        throw verification_error("no_mass_origin_check: origin mass bound failed");
    return out;
}

Mu0Result mu0_construct(const GroupContextPtr& ctx, const GroupMeasure& mu) {
    require_measure_matches(ctx, mu);
    mu.validate();

    double a1 = alpha(*ctx, mu);
    WalkOperator q(ctx, mu, Rep::quotient);
    double qnorm = l0_norm_value(q);
    if (a1 >= 1.0 - 1e-12)
        throw hypothesis_error("mu0_construct: alpha = 1, no valid smoothing exponent");
    if (qnorm >= 1.0 - 1e-12)
        throw hypothesis_error("mu0_construct: quotient norm = 1, no valid smoothing exponent");

    double bound = std::max(3.0 / (1.0 - a1), std::log(2.0) / (2.0 - 2.0 * qnorm));
    u64 l0 = static_cast<u64>(std::ceil(bound - 1e-12));
    if (l0 == 0) l0 = 1;

    GroupMeasure base = convolve(*ctx, reverse(*ctx, mu), mu);
    Mu0Result out{convolve_power(*ctx, base, static_cast<u32>(l0)), l0, a1, qnorm, 0.0, 0.0, {}};

    // The quotient operator of mu0 is the l0-th power of the positive
    // operator attached to base, so its norm is an exact power of the base
    // quotient norm.
    out.mu0_quotient_norm = std::pow(qnorm, 2.0 * static_cast<double>(l0));

    std::vector<double> base_kernel = action_kernel(ctx, base);
    size_t n = static_cast<size_t>(ctx->space_size());
    std::vector<double> power = base_kernel;
    for (u64 i = 1; i < l0; ++i) power = kernel_mul(power, base_kernel, n);
    out.mu0_max_point_l2 = kernel_max_column_l2(power, n);

    out.mu0_hypotheses = check_decay_hypotheses(ctx, out.mu0, out.mu0_quotient_norm);
    if (std::fabs(out.mu0_hypotheses.max_point_l2 - out.mu0_max_point_l2) > 1e-9)
        throw verification_error("mu0_construct: kernel power disagrees with direct pushforward");

    if (out.mu0_quotient_norm > 0.5 + kSlack)
        throw verification_error("mu0_construct: smoothed quotient norm exceeds 1/2");
    if (out.mu0_max_point_l2 > 0.75 + kSlack)
        throw verification_error("mu0_construct: smoothed point mass exceeds 3/4");
    return out;
}

AlphaTrace alpha_recursion_trace(const GroupContextPtr& ctx, const GroupMeasure& mu, u64 l_max) {
    require_measure_matches(ctx, mu);
    if (l_max == 0) throw std::invalid_argument("alpha_recursion_trace: l_max must be positive");

    GroupMeasure base = convolve(*ctx, reverse(*ctx, mu), mu);
    std::vector<double> base_kernel = action_kernel(ctx, base);
    size_t n = static_cast<size_t>(ctx->space_size());

    AlphaTrace out;
    std::vector<double> power = base_kernel;
    out.alpha.push_back(kernel_max_entry(power));
    if (out.alpha[0] >= 1.0 - 1e-12)
        throw hypothesis_error("alpha_recursion_trace: alpha_1 = 1");
    for (u64 l = 2; l <= l_max; ++l) {
        power = kernel_mul(power, base_kernel, n);
        out.alpha.push_back(kernel_max_entry(power));
        double predicted = out.alpha[0] * out.alpha[l - 2] + 0.25 + 1e-12;
        if (out.alpha[l - 1] > predicted)
            throw verification_error("alpha_recursion_trace: recursion inequality failed");
    }

    double a1 = alpha(*ctx, mu);
    WalkOperator q(ctx, mu, Rep::quotient);
    double qnorm = l0_norm_value(q);
    double bound = std::max(3.0 / (1.0 - a1), std::log(2.0) / (2.0 - 2.0 * qnorm));
    out.l0 = static_cast<u64>(std::ceil(bound - 1e-12));
    if (out.l0 == 0) out.l0 = 1;
    if (out.l0 <= l_max) {
        out.alpha_l0 = out.alpha[out.l0 - 1];
        if (out.alpha_l0 > 9.0 / 16.0 + kSlack)
            throw verification_error("alpha_recursion_trace: alpha at the smoothing exponent "
                                     "exceeds 9/16");
    }
    return out;
}

} // namespace affwalk
