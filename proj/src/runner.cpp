#include "affwalk/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "affwalk/bg_diag.hpp"
#include "affwalk/decay.hpp"
#include "affwalk/fourier.hpp"
#include "affwalk/growth.hpp"
#include "affwalk/sampling.hpp"
#include "affwalk/spectral.hpp"

namespace affwalk {

using nlohmann::json;

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

json require_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("config: missing field '") + key + "'");
    return *it;
}

std::vector<i64> int_vector(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string("config: ") + what + " must be an array");
    std::vector<i64> out;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw std::invalid_argument(std::string("config: ") + what + " entries must be integers");
        out.push_back(e.get<i64>());
    }
    return out;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

void write_text(const std::string& dir, const std::string& name, const std::string& body) {
    auto out = open_out(dir, name);
    out << body;
    if (!out) throw std::runtime_error("failed writing " + name);
    std::cout << "wrote " << (std::filesystem::path(dir) / name).string() << "\n";
}

json vec_json(const FpVector& v) {
    json a = json::array();
    for (u32 c : v.coords) a.push_back(c);
    return a;
}

json mat_json(const SLMatrix& m) {
    json rows = json::array();
    for (u32 r = 0; r < m.d; ++r) {
        json row = json::array();
        for (u32 c = 0; c < m.d; ++c) row.push_back(m.at(r, c));
        rows.push_back(row);
    }
    return rows;
}

json element_json(const AffineElement& g) { return json{{"v", vec_json(g.v)}, {"m", mat_json(g.m)}}; }

json measure_json(const GroupContext& ctx, const GroupMeasure& mu) {
    json entries = json::array();
    for (const auto& [gi, mass] : mu.masses) {
        AffineElement g = ctx.element_at(gi);
        json e = element_json(g);
        e["mass"] = mass;
        entries.push_back(std::move(e));
    }
    return json{{"p", mu.p}, {"d", mu.d}, {"entries", std::move(entries)}};
}

json hypotheses_json(const DecayHypotheses& h) {
    return json{{"symmetric", h.symmetric},
                {"symmetry_defect", h.symmetry_defect},
                {"point_mass_ok", h.point_mass_ok},
                {"max_point_l2", h.max_point_l2},
                {"quotient_ok", h.quotient_ok},
                {"quotient_norm", h.quotient_norm},
                {"ok", h.ok()}};
}

json spectral_json(const SpectralReport& r) {
    return json{{"p", r.p},
                {"d", r.d},
                {"support", r.support_size},
                {"walk_norm", r.walk_norm},
                {"walk_gap", r.walk_gap},
                {"quotient_norm", r.quotient_norm},
                {"quotient_gap", r.quotient_gap},
                {"alpha", r.alpha},
                {"ratio", r.ratio},
                {"iterations", r.iterations},
                {"residual", r.residual},
                {"seed", r.seed},
                {"generates", r.generates}};
}

std::string spectral_csv_row(const SpectralReport& r) {
    std::string row;
    row += std::to_string(r.p) + "," + std::to_string(r.d) + "," + std::to_string(r.support_size);
    row += "," + format_real(r.walk_gap) + "," + format_real(r.quotient_gap);
    row += "," + format_real(r.alpha) + "," + format_real(r.ratio);
    row += "," + std::to_string(r.iterations) + "," + format_real(r.residual);
    row += "," + std::to_string(r.seed);
    return row;
}

u32 single_p(const ExperimentConfig& cfg) {
    if (cfg.p_list.size() != 1)
        throw std::invalid_argument("config: this command needs exactly one prime in 'p'");
    return cfg.p_list.front();
}

FpVector config_v0(const ExperimentConfig& cfg, u32 p) {
    std::vector<u32> coords(cfg.d, 0);
    if (!cfg.v0.empty()) {
        if (cfg.v0.size() != cfg.d)
            throw std::invalid_argument("config: v0 must have d coordinates");
        for (u32 i = 0; i < cfg.d; ++i) coords[i] = fp_reduce(cfg.v0[i], p);
    }
    return FpVector(p, coords);
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    ExperimentConfig cfg;
    json sv = require_field(j, "schema_version");
    if (!sv.is_number_integer() || sv.get<i64>() != 1)
        throw std::invalid_argument("config: schema_version must be 1");

    json p = require_field(j, "p");
    if (p.is_number_integer()) {
        cfg.p_list = {p.get<u32>()};
    } else if (p.is_array() && !p.empty()) {
        for (const auto& e : p) {
            if (!e.is_number_integer()) throw std::invalid_argument("config: p entries must be integers");
            cfg.p_list.push_back(e.get<u32>());
        }
    } else {
        throw std::invalid_argument("config: p must be a prime or a nonempty array of primes");
    }
    std::sort(cfg.p_list.begin(), cfg.p_list.end());
    cfg.p_list.erase(std::unique(cfg.p_list.begin(), cfg.p_list.end()), cfg.p_list.end());
    for (u32 q : cfg.p_list) require_prime(q);

    cfg.d = require_field(j, "d").get<u32>();
    if (cfg.d < 2) throw std::invalid_argument("config: d must be at least 2");

    if (j.contains("generators")) {
        const json& gens = j["generators"];
        if (!gens.is_array()) throw std::invalid_argument("config: generators must be an array");
        for (const auto& g : gens) {
            GeneratorSpec spec;
            spec.v = int_vector(require_field(g, "v"), "generator v");
            json m = require_field(g, "m");
            if (!m.is_array()) throw std::invalid_argument("config: generator m must be an array");
            for (const auto& row : m) spec.m.push_back(int_vector(row, "generator m row"));
            cfg.generators.push_back(std::move(spec));
        }
    }

    if (j.contains("symmetrize")) cfg.symmetrize = j["symmetrize"].get<bool>();
    if (j.contains("uniform_on_group")) cfg.uniform_on_group = j["uniform_on_group"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<u64>();
    if (j.contains("l_cap")) cfg.l_cap = j["l_cap"].get<u64>();
    if (j.contains("k_max")) cfg.k_max = j["k_max"].get<u32>();
    if (j.contains("K")) cfg.K = j["K"].get<double>();
    if (j.contains("l1")) cfg.l1 = j["l1"].get<u64>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<u64>();
    if (j.contains("generator_count")) cfg.generator_count = j["generator_count"].get<u32>();
    if (j.contains("v0")) cfg.v0 = int_vector(j["v0"], "v0");

    if (cfg.samples == 0) throw std::invalid_argument("config: samples must be at least 1");
    if (cfg.generator_count == 0)
        throw std::invalid_argument("config: generator_count must be at least 1");
    return cfg;
}

ConfiguredMeasure build_configured_measure(const ExperimentConfig& cfg, u32 p) {
    ConfiguredMeasure out;
    out.ctx = GroupContext::create(p, cfg.d);

    if (cfg.uniform_on_group) {
        std::vector<u64> all(out.ctx->group_order());
        for (u64 i = 0; i < all.size(); ++i) all[i] = i;
        out.set = ElementSet::from_indices(std::move(all));
        out.mu = GroupMeasure::uniform_on_group(*out.ctx);
        return out;
    }

    if (cfg.generators.empty())
        throw std::invalid_argument("config: generators must be nonempty for this command");
    std::vector<u64> indices;
    for (const auto& spec : cfg.generators) {
        if (spec.v.size() != cfg.d)
            throw std::invalid_argument("config: generator v must have d coordinates");
        if (spec.m.size() != cfg.d)
            throw std::invalid_argument("config: generator m must be a d x d matrix");
        std::vector<u32> coords(cfg.d);
        for (u32 i = 0; i < cfg.d; ++i) coords[i] = fp_reduce(spec.v[i], p);
        std::vector<u32> entries;
        for (const auto& row : spec.m) {
            if (row.size() != cfg.d)
                throw std::invalid_argument("config: generator m must be a d x d matrix");
            for (i64 e : row) entries.push_back(fp_reduce(e, p));
        }
        SLMatrix m(p, cfg.d, entries);
        if (det(m) != 1)
            throw std::invalid_argument("config: generator matrix determinant is not 1 mod p");
        indices.push_back(out.ctx->index_of(AffineElement(FpVector(p, coords), m)));
    }
    ElementSet base = ElementSet::from_indices(std::move(indices));
    out.set = cfg.symmetrize ? symmetrize(*out.ctx, base) : base;
    out.mu = GroupMeasure::uniform_on(*out.ctx, out.set);
    return out;
}

int run_gap(const ExperimentConfig& cfg, const RunOptions& opt) {
    u32 p = single_p(cfg);
    ConfiguredMeasure cm = build_configured_measure(cfg, p);
    L0Options lopt;
    lopt.seed = derive_seed(cfg.seed, 0x676170);
    SpectralReport rep = spectral_report(cm.ctx, cm.mu, lopt);

    std::string csv = "p,d,|S|,walk_gap,quotient_gap,alpha,ratio,iterations,residual,seed\n";
    csv += spectral_csv_row(rep) + "\n";
    write_text(opt.out_dir, "gap.csv", csv);

    json out = spectral_json(rep);
    out["measure"] = measure_json(*cm.ctx, cm.mu);
    write_text(opt.out_dir, "gap.json", out.dump(2) + "\n");

    std::cout << "walk_gap=" << format_real(rep.walk_gap)
              << " quotient_gap=" << format_real(rep.quotient_gap)
              << " ratio=" << format_real(rep.ratio) << "\n";
    if (!rep.generates) {
        std::cout << "warning: generators sit inside a proper coset, the walk does not "
                     "equidistribute\n";
        return 2;
    }
    return rep.walk_gap > 0 ? 0 : 1;
}

namespace {

struct ScanRowData {
    u32 p = 0;
    u64 sample = 0;
    u64 seed = 0;
    SpectralReport spec;
    std::optional<u64> stop_l;
    bool coverage_ok = false;
    bool translation_found = false;
    bool translations_complete = false;
};

ScanRowData scan_one(const GroupContextPtr& ctx, const ExperimentConfig& cfg,
                     const RunOptions& opt, u32 p, u64 sample, u64 global_index) {
    ScanRowData row;
    row.p = p;
    row.sample = sample;
    row.seed = cfg.seed ^ global_index;

    Rng rng(row.seed);
    SampledGenerators gens = sample_lifted_generators(ctx, cfg.generator_count, rng);

    L0Options lopt;
    lopt.seed = derive_seed(row.seed, 0x7370);
    row.spec = spectral_report(ctx, gens.measure, lopt);
    row.spec.seed = row.seed;

    Mu0Result m0 = mu0_construct(ctx, gens.measure);
    DecayReport decay = decay_run(ctx, m0.mu0, FpVector::zero(p, cfg.d), cfg.l_cap,
                                  m0.mu0_hypotheses);
    row.stop_l = decay.stop_l;

    row.coverage_ok = linear_part_coverage(ctx, gens.symmetric_set);
    if (row.coverage_ok) {
        try {
            GrowthCertificate cert =
                full_group_certificate(ctx, gens.symmetric_set, opt.materialize);
            row.translation_found = true;
            row.translations_complete = cert.translations_complete;
        } catch (const hypothesis_error&) {
            row.translation_found = false;
        }
    }
    return row;
}

} // namespace

int run_scan(const ExperimentConfig& cfg, const RunOptions& opt) {
    std::vector<GroupContextPtr> ctxs;
    for (u32 p : cfg.p_list) ctxs.push_back(GroupContext::create(p, cfg.d));

    const u64 total = cfg.p_list.size() * cfg.samples;
    std::vector<ScanRowData> rows(total);
    std::vector<std::exception_ptr> errors(total);

    auto work = [&](u64 idx) {
        u32 pi = static_cast<u32>(idx / cfg.samples);
        u64 sample = idx % cfg.samples;
        try {
            rows[idx] = scan_one(ctxs[pi], cfg, opt, cfg.p_list[pi], sample, idx);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    };

    u32 threads = std::max<u32>(1, opt.threads);
    if (threads <= 1 || total <= 1) {
        for (u64 idx = 0; idx < total; ++idx) work(idx);
    } else {
        std::atomic<u64> cursor{0};
        std::vector<std::thread> pool;
        u32 n = static_cast<u32>(std::min<u64>(threads, total));
        for (u32 t = 0; t < n; ++t) {
            pool.emplace_back([&]() {
                for (u64 idx = cursor.fetch_add(1); idx < total; idx = cursor.fetch_add(1))
                    work(idx);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (u64 idx = 0; idx < total; ++idx) {
        if (errors[idx]) std::rethrow_exception(errors[idx]);
    }

    std::string csv =
        "p,d,sample,|S|,walk_gap,quotient_gap,alpha,ratio,iterations,residual,seed,"
        "stop_l,coverage_ok,translation_found,translations_complete\n";
    for (const auto& row : rows) {
        csv += std::to_string(row.p) + "," + std::to_string(cfg.d) + "," +
               std::to_string(row.sample) + "," + std::to_string(row.spec.support_size);
        csv += "," + format_real(row.spec.walk_gap) + "," + format_real(row.spec.quotient_gap);
        csv += "," + format_real(row.spec.alpha) + "," + format_real(row.spec.ratio);
        csv += "," + std::to_string(row.spec.iterations) + "," + format_real(row.spec.residual);
        csv += "," + std::to_string(row.seed);
        csv += "," + (row.stop_l ? std::to_string(*row.stop_l) : std::string());
        csv += std::string(",") + (row.coverage_ok ? "1" : "0");
        csv += std::string(",") + (row.translation_found ? "1" : "0");
        csv += std::string(",") + (row.translations_complete ? "1" : "0");
        csv += "\n";
    }
    write_text(opt.out_dir, "scan.csv", csv);

    std::string summary = "p,d,samples,min_ratio,argmin_sample,label\n";
    json per_p = json::array();
    double overall_min = std::numeric_limits<double>::infinity();
    json overall;
    for (size_t pi = 0; pi < cfg.p_list.size(); ++pi) {
        double best = std::numeric_limits<double>::infinity();
        u64 best_sample = 0;
        for (u64 s = 0; s < cfg.samples; ++s) {
            const auto& row = rows[pi * cfg.samples + s];
            if (row.spec.ratio < best) {
                best = row.spec.ratio;
                best_sample = s;
            }
        }
        summary += std::to_string(cfg.p_list[pi]) + "," + std::to_string(cfg.d) + "," +
                   std::to_string(cfg.samples) + "," + format_real(best) + "," +
                   std::to_string(best_sample) + ",non-certified\n";
        per_p.push_back(json{{"p", cfg.p_list[pi]},
                             {"min_ratio", best},
                             {"argmin_sample", best_sample}});
        if (best < overall_min) {
            overall_min = best;
            overall = json{{"p", cfg.p_list[pi]}, {"sample", best_sample}};
        }
    }
    write_text(opt.out_dir, "scan_summary.csv", summary);

    json sj{{"command", "scan"},
            {"d", cfg.d},
            {"samples_per_p", cfg.samples},
            {"generator_count", cfg.generator_count},
            {"seed", cfg.seed},
            {"per_p", per_p},
            {"min_ratio", overall_min},
            {"min_ratio_at", overall},
            {"label", "non-certified empirical estimate, not an asserted constant"}};
    write_text(opt.out_dir, "scan_summary.json", sj.dump(2) + "\n");

    std::cout << "scan minimum ratio " << format_real(overall_min)
              << " (non-certified empirical estimate)\n";
    return 0;
}

int run_decay(const ExperimentConfig& cfg, const RunOptions& opt) {
    u32 p = single_p(cfg);
    ConfiguredMeasure cm = build_configured_measure(cfg, p);
    FpVector v0 = config_v0(cfg, p);

    DecayHypotheses raw = check_decay_hypotheses(cm.ctx, cm.mu);
    bool smoothed = !raw.ok();
    std::optional<Mu0Result> m0;
    DecayReport rep;
    if (smoothed) {
        m0 = mu0_construct(cm.ctx, cm.mu);
        rep = decay_run(cm.ctx, m0->mu0, v0, cfg.l_cap, m0->mu0_hypotheses);
    } else {
        rep = decay_run(cm.ctx, cm.mu, v0, cfg.l_cap, raw);
    }

    std::string csv = "l,l2_norm,l4_fourier_norm,case_tag,deviation,atom_x\n";
    std::string plot = "# l l2_norm\n";
    for (const auto& s : rep.steps) {
        csv += std::to_string(s.l) + "," + format_real(s.l2_norm) + "," +
               format_real(s.l4_fourier_norm) + "," + s.case_tag + "," +
               format_real(s.deviation) + ",";
        if (s.atom_location) csv += std::to_string(s.atom_location->index());
        csv += "\n";
        plot += std::to_string(s.l) + " " + format_real(s.l2_norm) + "\n";
    }
    write_text(opt.out_dir, "decay.csv", csv);
    write_text(opt.out_dir, "decay_plot.dat", plot);

    json out{{"p", rep.p},
             {"d", rep.d},
             {"target", rep.target},
             {"hypotheses_ok", rep.hypotheses_ok},
             {"hypotheses", hypotheses_json(rep.hypotheses)},
             {"raw_hypotheses", hypotheses_json(raw)},
             {"smoothed", smoothed},
             {"steps", rep.steps.size()},
             {"reached_cap", rep.reached_cap},
             {"v0", vec_json(v0)}};
    out["stop_l"] = rep.stop_l ? json(*rep.stop_l) : json(nullptr);
    if (m0) {
        out["l0"] = m0->l0;
        out["alpha"] = m0->alpha1;
        out["quotient_norm"] = m0->quotient_norm;
        out["mu0_quotient_norm"] = m0->mu0_quotient_norm;
        out["mu0_max_point_l2"] = m0->mu0_max_point_l2;
        out["mu0_support"] = m0->mu0.support_size();
    }
    write_text(opt.out_dir, "decay.json", out.dump(2) + "\n");

    if (rep.stop_l) {
        std::cout << "decay stopped at l=" << *rep.stop_l << " (target "
                  << format_real(rep.target) << ")\n";
    } else {
        std::cout << "decay did not reach the target within l_cap=" << cfg.l_cap << "\n";
    }
    return 0;
}

int run_growth(const ExperimentConfig& cfg, const RunOptions& opt) {
    u32 p = single_p(cfg);
    ConfiguredMeasure cm = build_configured_measure(cfg, p);

    GrowthCertificate cert = full_group_certificate(cm.ctx, cm.set, opt.materialize);
    json witness_elements = json::array();
    for (u64 gi : cert.witness) witness_elements.push_back(element_json(cm.ctx->element_at(gi)));
    json out{{"p", p},
             {"d", cfg.d},
             {"set_size", cm.set.size()},
             {"g0", element_json(cert.g0)},
             {"g1", element_json(cert.g1)},
             {"sigma", mat_json(cert.sigma)},
             {"found_in_a", cert.found_in_a},
             {"witness_indices", cert.witness},
             {"witness_elements", witness_elements},
             {"coverage_ok", cert.coverage_ok},
             {"translations_complete", cert.translations_complete},
             {"materialized", cert.materialized},
             {"materialized_ok", cert.materialized_ok}};
    write_text(opt.out_dir, "growth.json", out.dump(2) + "\n");

    std::cout << "pure translation found; coverage_ok=" << (cert.coverage_ok ? 1 : 0)
              << " translations_complete=" << (cert.translations_complete ? 1 : 0) << "\n";
    return 0;
}

int run_flatten(const ExperimentConfig& cfg, const RunOptions& opt) {
    u32 p = single_p(cfg);
    ConfiguredMeasure cm = build_configured_measure(cfg, p);

    FlatteningTrace trace = flattening_trace(cm.ctx, cm.mu, cfg.l1, cfg.k_max, cfg.K);
    std::string csv = "k,steps,a_k,ratio,flattened_flag\n";
    std::string plot = "# steps a_k\n";
    for (const auto& row : trace.rows) {
        csv += std::to_string(row.k) + "," + std::to_string(row.steps) + "," +
               format_real(row.a_k) + "," + format_real(row.ratio) + "," +
               (row.flattened ? "1" : "0") + "\n";
        plot += std::to_string(row.steps) + " " + format_real(row.a_k) + "\n";
    }
    write_text(opt.out_dir, "flatten.csv", csv);
    write_text(opt.out_dir, "flatten_plot.dat", plot);

    json out{{"p", trace.p},
             {"d", trace.d},
             {"l1", trace.l1},
             {"K", trace.K},
             {"rows", trace.rows.size()},
             {"group_order", cm.ctx->group_order()}};
    out["first_flattening_k"] =
        trace.first_flattening_k ? json(*trace.first_flattening_k) : json(nullptr);
    write_text(opt.out_dir, "flatten.json", out.dump(2) + "\n");
    return 0;
}

int run_mixing(const ExperimentConfig& cfg, const RunOptions& opt) {
    u32 p = single_p(cfg);
    ConfiguredMeasure cm = build_configured_measure(cfg, p);
    if (cfg.l_cap > 100000) throw std::invalid_argument("config: l_cap too large for mixing");

    L0Options lopt;
    lopt.seed = derive_seed(cfg.seed, 0x6d6978);
    MixingProfile prof = mixing_profile(cm.ctx, cm.mu, static_cast<u32>(cfg.l_cap), {}, lopt);

    std::string csv = "l,distance,bound,certified,ok\n";
    std::string plot = "# l distance\n";
    for (const auto& row : prof.rows) {
        csv += std::to_string(row.l) + "," + format_real(row.distance) + "," +
               format_real(row.bound) + "," + (row.certified ? "1" : "0") + "," +
               (row.ok ? "1" : "0") + "\n";
        plot += std::to_string(row.l) + " " + format_real(row.distance) + "\n";
    }
    write_text(opt.out_dir, "mixing.csv", csv);
    write_text(opt.out_dir, "mixing_plot.dat", plot);

    json out{{"p", p},
             {"d", cfg.d},
             {"walk_gap", prof.walk_gap},
             {"rows", prof.rows.size()},
             {"all_ok", prof.all_ok}};
    write_text(opt.out_dir, "mixing.json", out.dump(2) + "\n");

    if (!prof.all_ok) {
        std::cout << "mixing bound violated\n";
        return 1;
    }
    return 0;
}

int run_multiplicity(const ExperimentConfig& cfg, const RunOptions& opt) {
    u32 p = single_p(cfg);
    ConfiguredMeasure cm = build_configured_measure(cfg, p);

    MultiplicityReport rep = multiplicity_check(cm.ctx, cm.mu);
    std::string csv = "cluster,mean,low,high,multiplicity,contains_one,ok\n";
    json clusters = json::array();
    for (size_t i = 0; i < rep.clusters.size(); ++i) {
        const auto& c = rep.clusters[i];
        csv += std::to_string(i) + "," + format_real(c.mean) + "," + format_real(c.low) + "," +
               format_real(c.high) + "," + std::to_string(c.multiplicity) + "," +
               (c.contains_one ? "1" : "0") + "," + (c.ok ? "1" : "0") + "\n";
        clusters.push_back(json{{"mean", c.mean},
                                {"low", c.low},
                                {"high", c.high},
                                {"multiplicity", c.multiplicity},
                                {"contains_one", c.contains_one},
                                {"ok", c.ok}});
    }
    write_text(opt.out_dir, "multiplicity.csv", csv);

    json out{{"p", rep.p},
             {"d", rep.d},
             {"dim", rep.dim},
             {"tol", rep.tol},
             {"irrep_bound", rep.irrep_bound},
             {"generates", rep.generates},
             {"top_simple_ok", rep.top_simple_ok},
             {"multiplicities_ok", rep.multiplicities_ok},
             {"passed", rep.passed},
             {"clusters", clusters}};
    write_text(opt.out_dir, "multiplicity.json", out.dump(2) + "\n");

    std::cout << (rep.passed ? "multiplicity structure confirmed\n"
                             : "multiplicity structure violated\n");
    return rep.passed ? 0 : 1;
}

} // namespace affwalk
