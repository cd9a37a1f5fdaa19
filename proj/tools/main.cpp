// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// txcap: outage and transmission-capacity experiments for multi-antenna
// links inside a Poisson field of interferers, with partial interference
// cancelation at the receiver. Subcommands:
//
//   simulate       estimate outage probability at a given intensity
//   bounds         closed-form outage / capacity bounds
//   find-tc        search the largest intensity meeting an outage target
//   sweep          run a list of experiment points from a config file
//   eigen-moments  measure Wishart eigenvalue moments
//   design         best (k, m) split for a given antenna budget
//
// Results go to stdout (or --output) as JSON or CSV. A JSON config file can
// supply any flag (keys named like the flags, without the leading dashes);
// command-line flags override file values. Every result echoes the resolved
// configuration, so a saved result re-runs itself when passed as --config.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "txcap/bounds.hpp"
#include "txcap/channel.hpp"
#include "txcap/montecarlo.hpp"
#include "txcap/params.hpp"
#include "txcap/receiver.hpp"
#include "txcap/rng.hpp"

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
    std::string mode = "no-csit";
    std::size_t N = 8;
    std::size_t k = 1;
    std::size_t m = 0;
    double alpha = 3.0;
    double beta = 1.0;
    double d = 1.0;
    double epsilon = 0.1;
    double R = 1.0;
    double lambda = kNaN;   // absolute intensity
    double lambda_x = kNaN; // normalized: lambda * pi * d^2
    std::size_t trials = 20000;
    std::size_t trials_final = 100000;
    double tol_rel = 0.02;
    std::uint64_t seed = 1;
    double mean_nodes = 200.0;
    std::size_t window = 0;
    std::size_t subset_limit = 5000;
    std::size_t threads = 0;
    std::string path = "auto";
    std::string format; // resolved per subcommand
    std::string output;
    std::size_t samples = 100000;        // eigen-moments
    std::size_t moment_samples = 100000; // moments backing CSIT bounds
    std::uint64_t moment_seed = 0;       // 0 = derived from (N, k)
    bool find_tc = false;                // sweep points only
};

std::uint64_t json_to_u64(const json& v, const std::string& key) {
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const auto s = v.get<std::int64_t>();
        if (s < 0)
            throw std::invalid_argument("config: " + key + " must be non-negative");
        return static_cast<std::uint64_t>(s);
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (x < 0 || x != std::floor(x))
            throw std::invalid_argument("config: " + key + " must be a non-negative integer");
        return static_cast<std::uint64_t>(x);
    }
    throw std::invalid_argument("config: " + key + " must be a number");
}

double json_to_double(const json& v, const std::string& key) {
    if (!v.is_number())
        throw std::invalid_argument("config: " + key + " must be a number");
    return v.get<double>();
}

std::string json_to_string(const json& v, const std::string& key) {
    if (!v.is_string())
        throw std::invalid_argument("config: " + key + " must be a string");
    return v.get<std::string>();
}

// Apply one config object onto cfg. Keys mirror the long flag names; the
// echo keys "command" and "result" plus anything unknown are ignored so a
// saved result file works directly as a config.
void apply_config(const json& j, RunConfig& cfg) {
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "mode") cfg.mode = json_to_string(v, key);
        else if (key == "N") cfg.N = json_to_u64(v, key);
        else if (key == "k") cfg.k = json_to_u64(v, key);
        else if (key == "m") cfg.m = json_to_u64(v, key);
        else if (key == "alpha") cfg.alpha = json_to_double(v, key);
        else if (key == "beta") cfg.beta = json_to_double(v, key);
        else if (key == "d") cfg.d = json_to_double(v, key);
        else if (key == "epsilon") cfg.epsilon = json_to_double(v, key);
        else if (key == "R") cfg.R = json_to_double(v, key);
        else if (key == "lambda") cfg.lambda = json_to_double(v, key);
        else if (key == "lambda-x") cfg.lambda_x = json_to_double(v, key);
        else if (key == "trials") cfg.trials = json_to_u64(v, key);
        else if (key == "trials-final") cfg.trials_final = json_to_u64(v, key);
        else if (key == "tol-rel") cfg.tol_rel = json_to_double(v, key);
        else if (key == "seed") cfg.seed = json_to_u64(v, key);
        else if (key == "mean-nodes") cfg.mean_nodes = json_to_double(v, key);
        else if (key == "window") cfg.window = json_to_u64(v, key);
        else if (key == "subset-limit") cfg.subset_limit = json_to_u64(v, key);
        else if (key == "threads") cfg.threads = json_to_u64(v, key);
        else if (key == "path") cfg.path = json_to_string(v, key);
        else if (key == "format") cfg.format = json_to_string(v, key);
        else if (key == "output") cfg.output = json_to_string(v, key);
        else if (key == "samples") cfg.samples = json_to_u64(v, key);
        else if (key == "moment-samples") cfg.moment_samples = json_to_u64(v, key);
        else if (key == "moment-seed") cfg.moment_seed = json_to_u64(v, key);
        else if (key == "find-tc") {
            if (!v.is_boolean())
                throw std::invalid_argument("config: find-tc must be a boolean");
            cfg.find_tc = v.get<bool>();
        }
        // unknown keys (including "command", "result", "points") are ignored
    }
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("--config: cannot read file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("--config: " + path + ": " + e.what());
    }
    return j;
}

txcap::SystemParams params_from(const RunConfig& cfg) {
    const auto mo = txcap::mode_from_name(cfg.mode);
    if (!mo)
        throw std::invalid_argument(
            "--mode: must be one of no-csit, cmsir, csit (got '" + cfg.mode + "')");
    txcap::SystemParams p;
    p.mode = *mo;
    p.N = cfg.N;
    p.k = cfg.k;
    p.m = cfg.m;
    p.alpha = cfg.alpha;
    p.beta = cfg.beta;
    p.d = cfg.d;
    p.epsilon = cfg.epsilon;
    p.R = cfg.R;
    return p;
}

txcap::SimOptions sim_options(const RunConfig& cfg) {
    txcap::SimOptions o;
    o.mean_nodes = cfg.mean_nodes;
    o.workers = cfg.threads;
    o.window = cfg.window;
    o.subset_limit = cfg.subset_limit;
    if (cfg.path == "auto") o.path = txcap::SimPath::Auto;
    else if (cfg.path == "explicit") o.path = txcap::SimPath::Explicit;
    else if (cfg.path == "sufficient") o.path = txcap::SimPath::Sufficient;
    else if (cfg.path == "fast") o.path = txcap::SimPath::Fast;
    else
        throw std::invalid_argument(
            "--path: must be auto, explicit, sufficient, or fast (got '" +
            cfg.path + "')");
    return o;
}

std::optional<double> resolve_lambda(const RunConfig& cfg) {
    const bool has_l = !std::isnan(cfg.lambda);
    const bool has_x = !std::isnan(cfg.lambda_x);
    if (has_l && has_x)
        throw std::invalid_argument("--lambda: conflicts with --lambda-x");
    if (has_l)
        return cfg.lambda;
    if (has_x)
        return cfg.lambda_x / (kPi * cfg.d * cfg.d);
    return std::nullopt;
}

std::uint64_t derived_moment_seed(const RunConfig& cfg) {
    if (cfg.moment_seed != 0)
        return cfg.moment_seed;
    std::uint64_t s = 0x74786361705F6D6FULL;
    s ^= txcap::splitmix64_next(s) + 0x9E3779B97F4A7C15ULL * cfg.N;
    s ^= txcap::splitmix64_next(s) + 0xBF58476D1CE4E5B9ULL * cfg.k;
    return txcap::splitmix64_next(s);
}

// Full configuration echo; NaN-valued optionals are omitted (JSON has no NaN).
json config_echo(const std::string& cmd, const RunConfig& cfg,
                 std::optional<double> lambda_abs) {
    json j;
    j["command"] = cmd;
    j["mode"] = cfg.mode;
    j["N"] = cfg.N;
    j["k"] = cfg.k;
    j["m"] = cfg.m;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["d"] = cfg.d;
    j["epsilon"] = cfg.epsilon;
    j["R"] = cfg.R;
    if (lambda_abs)
        j["lambda"] = *lambda_abs;
    j["trials"] = cfg.trials;
    j["trials-final"] = cfg.trials_final;
    j["tol-rel"] = cfg.tol_rel;
    j["seed"] = cfg.seed;
    j["mean-nodes"] = cfg.mean_nodes;
    j["window"] = cfg.window;
    j["subset-limit"] = cfg.subset_limit;
    j["threads"] = cfg.threads;
    j["path"] = cfg.path;
    if (cfg.mode == "csit") {
        j["moment-samples"] = cfg.moment_samples;
        j["moment-seed"] = cfg.moment_seed;
    }
    return j;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.output);
    if (!out)
        throw std::runtime_error("--output: cannot write file " + cfg.output);
    out << text;
    if (!text.empty() && text.back() != '\n')
        out << '\n';
    if (!out)
        throw std::runtime_error("--output: write failed for " + cfg.output);
}

std::string resolve_format(const RunConfig& cfg, const char* dflt,
                           std::initializer_list<const char*> allowed) {
    const std::string f = cfg.format.empty() ? dflt : cfg.format;
    for (const char* a : allowed)
        if (f == a)
            return f;
    throw std::invalid_argument("--format: '" + f + "' is not supported here");
}

txcap::EigenMoments measured_moments(const RunConfig& cfg) {
    txcap::Rng rng(derived_moment_seed(cfg));
    return txcap::wishart_eigen_moments(cfg.N, cfg.k, cfg.moment_samples, rng);
}

// Bounds for one parameter point, tolerating configurations whose moments do
// not exist (CSIT with k = N): those report no bounds rather than failing.
struct RowBounds {
    txcap::PoutBounds pout;
    txcap::TcBounds tc;
    bool have = false;
};

RowBounds row_bounds(const RunConfig& cfg, const txcap::SystemParams& p,
                     std::optional<double> lambda) {
    RowBounds rb;
    try {
        if (p.mode == txcap::Mode::CsitBfNearest) {
            const auto mm = measured_moments(cfg);
            if (lambda)
                rb.pout = txcap::pout_bounds_csit(p, *lambda, mm);
            rb.tc = txcap::tc_bounds_csit(p, mm);
        } else {
            if (lambda)
                rb.pout = p.mode == txcap::Mode::NoCsitCmsir
                              ? txcap::pout_bounds_cmsir(p, *lambda)
                              : txcap::pout_bounds_no_csit(p, *lambda);
            rb.tc = txcap::tc_bounds_no_csit(p);
        }
        rb.have = true;
    } catch (const std::exception&) {
        rb.have = false;
    }
    return rb;
}

txcap::SweepRow make_row(const txcap::SystemParams& p, const RunConfig& cfg) {
    txcap::SweepRow row;
    row.mode = txcap::mode_name(p.mode);
    row.N = p.N;
    row.k = p.k;
    row.m = p.m;
    row.alpha = p.alpha;
    row.beta = p.beta;
    row.d = p.d;
    row.epsilon = p.epsilon;
    row.lambda = kNaN;
    row.trials = cfg.trials;
    row.seed = cfg.seed;
    row.pout_hat = row.ci95 = row.pout_lb = row.pout_ub = kNaN;
    row.tc = row.tc_lb = row.tc_ub = kNaN;
    return row;
}

void fill_row_bounds(txcap::SweepRow& row, const RowBounds& rb, bool have_pout) {
    if (!rb.have)
        return;
    if (have_pout) {
        row.pout_lb = rb.pout.lower;
        row.pout_ub = rb.pout.valid ? rb.pout.upper : kNaN;
        row.valid = rb.pout.valid;
    } else {
        row.valid = rb.tc.valid;
    }
    row.tc_lb = rb.tc.lower;
    row.tc_ub = rb.tc.upper;
}

int cmd_simulate(const RunConfig& cfg) {
    const std::string format = resolve_format(cfg, "json", {"json", "csv"});
    const auto p = params_from(cfg);
    const auto lambda = resolve_lambda(cfg);
    if (!lambda)
        throw std::invalid_argument("--lambda: required for simulate (or --lambda-x)");
    const auto est =
        txcap::estimate_outage(p, *lambda, cfg.trials, cfg.seed, sim_options(cfg));
    const RowBounds rb = row_bounds(cfg, p, lambda);

    if (format == "csv") {
        txcap::SweepRow row = make_row(p, cfg);
        row.lambda = *lambda;
        row.pout_hat = est.p_hat;
        row.ci95 = est.ci95_half_width;
        fill_row_bounds(row, rb, true);
        emit(cfg, txcap::sweep_csv_header() + "\n" + txcap::sweep_row_csv(row));
        return 0;
    }
    json out = config_echo("simulate", cfg, lambda);
    json res;
    res["p_hat"] = est.p_hat;
    res["ci95"] = est.ci95_half_width;
    res["per_stream_p"] = est.per_stream_p;
    if (rb.have) {
        res["pout_lower"] = rb.pout.lower;
        if (rb.pout.valid)
            res["pout_upper"] = rb.pout.upper;
        res["bounds_valid"] = rb.pout.valid;
        res["tc_lower"] = rb.tc.lower;
        res["tc_upper"] = rb.tc.upper;
    }
    out["result"] = std::move(res);
    emit(cfg, out.dump(2));
    return 0;
}

int cmd_bounds(const RunConfig& cfg) {
    resolve_format(cfg, "json", {"json"});
    const auto p = params_from(cfg);
    const auto lambda = resolve_lambda(cfg);

    json out = config_echo("bounds", cfg, lambda);
    json res;
    if (p.mode == txcap::Mode::CsitBfNearest) {
        const auto mm = measured_moments(cfg);
        json jm;
        jm["mean_gamma_k"] = mm.mean_gamma_k;
        jm["mean_inv_gamma_k"] = mm.mean_inv_gamma_k;
        jm["ci_gamma"] = mm.ci_gamma;
        jm["ci_inv_gamma"] = mm.ci_inv_gamma;
        jm["samples"] = mm.samples;
        jm["source"] = "measured";
        res["moments"] = std::move(jm);
        if (lambda) {
            const auto pb = txcap::pout_bounds_csit(p, *lambda, mm);
            res["pout_lower"] = pb.lower;
            res["pout_upper"] = pb.upper;
            res["valid"] = pb.valid;
        }
        const auto tb = txcap::tc_bounds_csit(p, mm);
        res["tc_lower"] = tb.lower;
        res["tc_upper"] = tb.upper;
        res["tc_valid"] = tb.valid;
    } else {
        if (lambda) {
            const auto pb = p.mode == txcap::Mode::NoCsitCmsir
                                ? txcap::pout_bounds_cmsir(p, *lambda)
                                : txcap::pout_bounds_no_csit(p, *lambda);
            res["pout_lower"] = pb.lower;
            res["pout_upper"] = pb.upper;
            res["valid"] = pb.valid;
        }
        const auto tb = txcap::tc_bounds_no_csit(p);
        res["tc_lower"] = tb.lower;
        res["tc_upper"] = tb.upper;
        res["tc_valid"] = tb.valid;
    }
    out["result"] = std::move(res);
    emit(cfg, out.dump(2));
    return 0;
}

int cmd_find_tc(const RunConfig& cfg) {
    const std::string format = resolve_format(cfg, "json", {"json", "csv"});
    const auto p = params_from(cfg);
    txcap::TcOptions topts;
    topts.trials_final = cfg.trials_final;
    topts.sim = sim_options(cfg);
    const auto tc = txcap::find_lambda_star(p, cfg.epsilon, cfg.trials, cfg.tol_rel,
                                            cfg.seed, topts);
    const RowBounds rb = row_bounds(cfg, p, tc.lambda_star);

    if (format == "csv") {
        txcap::SweepRow row = make_row(p, cfg);
        row.lambda = tc.lambda_star;
        row.trials = cfg.trials_final;
        row.pout_hat = tc.achieved_pout;
        row.ci95 = tc.achieved_ci;
        row.tc = tc.capacity;
        fill_row_bounds(row, rb, true);
        emit(cfg, txcap::sweep_csv_header() + "\n" + txcap::sweep_row_csv(row));
        return 0;
    }
    json out = config_echo("find-tc", cfg, resolve_lambda(cfg));
    json res;
    res["lambda_star"] = tc.lambda_star;
    res["capacity"] = tc.capacity;
    res["bracket_lo"] = tc.bracket_lo;
    res["bracket_hi"] = tc.bracket_hi;
    res["iterations"] = tc.iterations;
    res["evals"] = tc.evals;
    res["achieved_pout"] = tc.achieved_pout;
    res["achieved_ci"] = tc.achieved_ci;
    if (rb.have) {
        res["tc_lower"] = rb.tc.lower;
        res["tc_upper"] = rb.tc.upper;
        res["tc_valid"] = rb.tc.valid;
    }
    out["result"] = std::move(res);
    emit(cfg, out.dump(2));
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const json& file_json) {
    resolve_format(cfg, "csv", {"csv"});
    if (file_json.is_null())
        throw std::invalid_argument("--config: sweep requires a config file with points");
    if (!file_json.contains("points") || !file_json["points"].is_array())
        throw std::invalid_argument("--config: sweep config needs a points array");

    std::vector<txcap::SweepPoint> points;
    for (const auto& pj : file_json["points"]) {
        RunConfig pc = cfg; // inherit top-level values, then apply the point
        apply_config(pj, pc);
        txcap::SweepPoint sp;
        sp.params = params_from(pc);
        sp.lambda = resolve_lambda(pc);
        sp.find_tc = pc.find_tc;
        sp.trials = pc.trials;
        sp.trials_final = pc.trials_final;
        sp.tol_rel = pc.tol_rel;
        sp.seed = pc.seed;
        points.push_back(std::move(sp));
    }

    const auto rows = txcap::sweep(points, cfg.output, sim_options(cfg));
    if (cfg.output.empty()) {
        std::ostringstream os;
        os << txcap::sweep_csv_header() << '\n';
        for (const auto& r : rows)
            os << txcap::sweep_row_csv(r) << '\n';
        std::cout << os.str();
    }
    return 0;
}

int cmd_eigen_moments(const RunConfig& cfg) {
    resolve_format(cfg, "json", {"json"});
    txcap::Rng rng(cfg.seed);
    const auto mm = txcap::wishart_eigen_moments(cfg.N, cfg.k, cfg.samples, rng);
    json out;
    out["command"] = "eigen-moments";
    out["N"] = cfg.N;
    out["k"] = cfg.k;
    out["samples"] = cfg.samples;
    out["seed"] = cfg.seed;
    json res;
    res["mean_gamma_k"] = mm.mean_gamma_k;
    res["ci_gamma"] = mm.ci_gamma;
    res["mean_inv_gamma_k"] = mm.mean_inv_gamma_k;
    res["ci_inv_gamma"] = mm.ci_inv_gamma;
    out["result"] = std::move(res);
    emit(cfg, out.dump(2));
    return 0;
}

int cmd_design(const RunConfig& cfg) {
    const std::string format = resolve_format(cfg, "text", {"text", "json"});
    const auto mo = txcap::mode_from_name(cfg.mode);
    if (!mo)
        throw std::invalid_argument(
            "--mode: must be one of no-csit, cmsir, csit (got '" + cfg.mode + "')");
    txcap::SystemParams env;
    env.beta = cfg.beta;
    env.d = cfg.d;
    env.epsilon = cfg.epsilon;
    env.R = cfg.R;
    const auto choice = txcap::optimal_design(cfg.N, cfg.alpha, *mo, env);
    if (format == "json") {
        json out;
        out["command"] = "design";
        out["N"] = cfg.N;
        out["alpha"] = cfg.alpha;
        out["mode"] = cfg.mode;
        json res;
        res["k"] = choice.k;
        res["m"] = choice.m;
        out["result"] = std::move(res);
        emit(cfg, out.dump(2));
    } else {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "k=%zu, m=%zu", choice.k, choice.m);
        emit(cfg, buf);
    }
    return 0;
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--config", "JSON config file; flags override it")
        ->type_name("FILE");
    sub->add_option("--mode", cfg.mode, "no-csit | cmsir | csit");
    sub->add_option("--N", cfg.N, "receive antennas");
    sub->add_option("--k", cfg.k, "transmit streams");
    sub->add_option("--m", cfg.m, "receive DOF spent on cancelation (no CSIT)");
    sub->add_option("--alpha", cfg.alpha, "path-loss exponent (> 2)");
    sub->add_option("--beta", cfg.beta, "SIR threshold");
    sub->add_option("--d", cfg.d, "link distance");
    sub->add_option("--epsilon", cfg.epsilon, "outage target");
    sub->add_option("--R", cfg.R, "rate factor");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--format", cfg.format, "output format");
    sub->add_option("--output", cfg.output, "write results to this file");
}

void add_sim_options(CLI::App* sub, RunConfig& cfg) {
    auto* l = sub->add_option("--lambda", cfg.lambda, "interferer intensity");
    auto* lx = sub->add_option("--lambda-x", cfg.lambda_x,
                               "normalized intensity lambda*pi*d^2");
    l->excludes(lx);
    lx->excludes(l);
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
    sub->add_option("--mean-nodes", cfg.mean_nodes, "Poisson mean in the disk");
    sub->add_option("--window", cfg.window, "CMSIR candidate window (0 = c+4)");
    sub->add_option("--subset-limit", cfg.subset_limit,
                    "max exhaustive CMSIR subsets before greedy");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = machine)");
    sub->add_option("--path", cfg.path, "auto | explicit | sufficient | fast");
}

void add_moment_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--moment-samples", cfg.moment_samples,
                    "samples for measured eigenvalue moments (CSIT bounds)");
    sub->add_option("--moment-seed", cfg.moment_seed,
                    "seed for moment measurement (0 = derived)");
}

int run(int argc, char** argv) {
    RunConfig cfg;

    // First pass: locate --config so file values become defaults that
    // command-line flags then override.
    json file_json;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc)
            path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0)
            path = a.substr(9);
        if (!path.empty()) {
            file_json = load_config_file(path);
            apply_config(file_json, cfg);
            break;
        }
    }

    CLI::App app{"transmission capacity of multi-antenna links in a Poisson "
                 "interference field"};
    app.require_subcommand(1);
    app.fallthrough(false);

    auto* sim = app.add_subcommand("simulate", "estimate outage at one intensity");
    add_common_options(sim, cfg);
    add_sim_options(sim, cfg);
    add_moment_options(sim, cfg);

    auto* bnd = app.add_subcommand("bounds", "closed-form outage/capacity bounds");
    add_common_options(bnd, cfg);
    auto* bl = bnd->add_option("--lambda", cfg.lambda, "interferer intensity");
    auto* blx = bnd->add_option("--lambda-x", cfg.lambda_x,
                                "normalized intensity lambda*pi*d^2");
    bl->excludes(blx);
    blx->excludes(bl);
    add_moment_options(bnd, cfg);

    auto* ftc = app.add_subcommand("find-tc", "search lambda* for the outage target");
    add_common_options(ftc, cfg);
    add_sim_options(ftc, cfg);
    add_moment_options(ftc, cfg);
    ftc->add_option("--trials-final", cfg.trials_final,
                    "trials for the final estimate at lambda*");
    ftc->add_option("--tol-rel", cfg.tol_rel, "relative bracket tolerance");

    auto* swp = app.add_subcommand("sweep", "run experiment points from a config");
    add_common_options(swp, cfg);
    add_sim_options(swp, cfg);
    swp->add_option("--trials-final", cfg.trials_final,
                    "trials for final estimates of find-tc points");
    swp->add_option("--tol-rel", cfg.tol_rel, "relative bracket tolerance");

    auto* eig = app.add_subcommand("eigen-moments", "measure Wishart eigen moments");
    add_common_options(eig, cfg);
    eig->add_option("--samples", cfg.samples, "number of Wishart samples");

    auto* dsg = app.add_subcommand("design", "best (k, m) for an antenna budget");
    add_common_options(dsg, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the offending flag
        return code == 0 ? 0 : 1;
    }

    if (sim->parsed())
        return cmd_simulate(cfg);
    if (bnd->parsed())
        return cmd_bounds(cfg);
    if (ftc->parsed())
        return cmd_find_tc(cfg);
    if (swp->parsed())
        return cmd_sweep(cfg, file_json);
    if (eig->parsed())
        return cmd_eigen_moments(cfg);
    if (dsg->parsed())
        return cmd_design(cfg);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return 2;
    }
}
