// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Acceptance gate for the whole artifact. Each criterion prints exactly one
// [PASS]/[FAIL] verdict line (optionally preceded by indented diagnostics)
// and the process exits with the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "txcap/bounds.hpp"
#include "txcap/channel.hpp"
#include "txcap/geometry.hpp"
#include "txcap/montecarlo.hpp"
#include "txcap/params.hpp"
#include "txcap/receiver.hpp"
#include "txcap/rng.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pinned tolerances.
constexpr double kEigenWindowLo = 0.97;   // x 1/(4N)
constexpr double kEigenWindowHi = 1.03;   // x 1/(3.5N)
constexpr std::size_t kEigenSamples = 100000;
constexpr std::size_t kSandwichTrials = 50000;
constexpr double kSandwichCiFactor = 2.0; // bound slack in CI half-widths
constexpr double kKs01 = 1.6276;          // KS critical coefficient at 1%
constexpr double kMeanSigmas = 3.0;       // moment tolerance in standard errors
constexpr double kTenDigits = 1e-10;      // relative, "10 significant digits"
constexpr double kResidualTol = 1e-9;     // ZF / cross-talk residuals
constexpr double kScalingFloor = 1.6;     // capacity ratio N=16 vs N=8

int g_failures = 0;

void verdict(int idx, bool pass, const std::string& name, const std::string& note) {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), note.empty() ? "" : " -- ", note.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

void run_criterion(int idx, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [pass, note] = body();
        verdict(idx, pass, name, note);
    } catch (const std::exception& e) {
        verdict(idx, false, name, std::string("exception: ") + e.what());
    }
}

txcap::SystemParams make(std::size_t N, std::size_t k, std::size_t m, double alpha,
                         txcap::Mode mode = txcap::Mode::NoCsitNearest) {
    txcap::SystemParams p;
    p.N = N;
    p.k = k;
    p.m = m;
    p.alpha = alpha;
    p.mode = mode;
    return p;
}

txcap::PointProcessSample fixed_ppp(std::vector<double> dists) {
    txcap::PointProcessSample s;
    s.intensity = 1.0;
    s.disk_radius = dists.empty() ? 1.0 : dists.back();
    s.count = dists.size();
    s.distances = std::move(dists);
    return s;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TXCAP_CLI_PATH) + " " + args;
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double sup = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        sup = std::max(sup, std::fabs(i / na - j / nb));
    }
    return sup;
}

// ---------------------------------------------------------------------------
// 1. Reciprocal-eigenvalue window.

std::pair<bool, std::string> crit_eigen_window() {
    bool all = true;
    std::string worst;
    for (std::size_t N : {2, 4, 8, 16}) {
        txcap::Rng rng(0xE16E5000 + N);
        const auto mm = txcap::wishart_eigen_moments(N, 1, kEigenSamples, rng);
        const double lo = kEigenWindowLo / (4.0 * double(N));
        const double hi = kEigenWindowHi / (3.5 * double(N));
        const bool ok = mm.mean_inv_gamma_k >= lo && mm.mean_inv_gamma_k <= hi;
        std::printf("    N=%zu: E{1/gamma_1} = %.6g (ci %.2g), window [%.6g, %.6g], "
                    "N*E = %.4f -> %s\n",
                    N, mm.mean_inv_gamma_k, mm.ci_inv_gamma, lo, hi,
                    double(N) * mm.mean_inv_gamma_k, ok ? "inside" : "OUTSIDE");
        if (!ok) {
            all = false;
            worst = "measured reciprocal means sit above the 1/(3.5N)..1/(4N) "
                    "window at every tested N; the window describes the "
                    "N -> infinity limit only";
        }
    }
    return {all, all ? "" : worst};
}

// ---------------------------------------------------------------------------
// 2. Bound sandwich over the full small-array grid.

double invert_upper_for_lambda(const txcap::SystemParams& p, double target) {
    const double a2 = p.alpha / 2.0;
    const double c = std::floor(double(p.m) / double(p.k));
    const double dab = std::pow(p.d, p.alpha) * p.beta;
    double pl;
    if (p.N > p.k + p.m)
        pl = target * double(p.N - p.m - p.k) * (a2 - 1.0) *
             std::pow(c + 1.0, a2 - 1.0) / (double(p.k) * dab);
    else
        pl = -std::log1p(-target) * (a2 - 1.0) * std::pow(c + 1.0, a2 - 1.0) /
             (double(p.k) * dab);
    return pl / (kPi * p.d * p.d);
}

// The shipped upper bound approximates the mean residual interference with
// the coefficient (c+1)^(1-a2)/(a2-1). The exact series value, from
// E{d_i^-alpha} = (pi lambda)^(a2) Gamma(i-a2)/Gamma(i) telescoped over
// i > c, is Gamma(c+1-a2)/((a2-1) Gamma(c)), strictly larger at every finite
// c. The diagnostic below recomputes the bound with the exact mean so a
// sandwich violation can be attributed to that approximation rather than to
// the simulator.
double exact_mean_upper(const txcap::SystemParams& p, double lambda) {
    const double a2 = p.alpha / 2.0;
    const double c = std::floor(double(p.m) / double(p.k));
    const double pl = std::pow(kPi * lambda, a2);
    const double dab = std::pow(p.d, p.alpha) * p.beta;
    const double series =
        std::exp(std::lgamma(c + 1.0 - a2) - std::lgamma(c)) / (a2 - 1.0);
    const double mean_i = double(p.k) * pl * series;
    if (p.N > p.k + p.m)
        return dab * mean_i / double(p.N - p.m - p.k);
    return 1.0 - std::exp(-dab * mean_i);
}

std::pair<bool, std::string> crit_bound_sandwich() {
    std::size_t points = 0, violations = 0, untuned = 0, fixed_violations = 0;
    std::uint64_t point_index = 0;
    for (double alpha : {3.0, 4.0})
        for (std::size_t N = 8; N <= 12; ++N)
            for (std::size_t k : {1, 2})
                for (std::size_t m = k; m + k <= N; m += k) {
                    const double c = std::floor(double(m) / double(k));
                    if (!(c > alpha / 2.0 - 1.0))
                        continue;
                    ++point_index;
                    const auto p = make(N, k, m, alpha);
                    double lam = invert_upper_for_lambda(p, 0.25);
                    for (int round = 0; round < 6; ++round) {
                        const auto probe = txcap::estimate_outage(
                            p, lam, 2000, 1000 + point_index);
                        if (probe.p_hat >= 0.08 && probe.p_hat <= 0.45)
                            break;
                        const double ph =
                            std::min(0.95, std::max(0.005, probe.p_hat));
                        lam *= std::pow(0.25 / ph, 2.0 / alpha);
                    }
                    const auto est = txcap::estimate_outage(p, lam, kSandwichTrials,
                                                            5000 + point_index);
                    ++points;
                    if (est.p_hat < 0.05 || est.p_hat > 0.5) {
                        ++untuned;
                        continue; // tuning failed: counted separately below
                    }
                    const auto pb = txcap::pout_bounds_no_csit(p, lam);
                    const double slack = kSandwichCiFactor * est.ci95_half_width;
                    const bool ok = pb.valid && est.p_hat >= pb.lower - slack &&
                                    est.p_hat <= pb.upper + slack;
                    const double upfix =
                        std::min(1.0, exact_mean_upper(p, lam));
                    if (est.p_hat > upfix + slack || est.p_hat < pb.lower - slack)
                        ++fixed_violations;
                    if (!ok)
                        std::printf("    violation (N=%zu,k=%zu,m=%zu,alpha=%.0f%s): "
                                    "p_hat=%.4f ci=%.4f bounds [%.4f, %.4f], "
                                    "exact-mean upper %.4f\n",
                                    N, k, m, alpha,
                                    N == k + m ? ", N=k+m branch" : "", est.p_hat,
                                    est.ci95_half_width, pb.lower, pb.upper, upfix),
                            ++violations;
                }
    std::printf("    %zu grid points, %zu sandwich violations, %zu untunable; "
                "recomputing the upper bound with the exact mean residual "
                "interference leaves %zu violations\n",
                points, violations, untuned, fixed_violations);
    const bool pass = points == 118 && violations == 0 && untuned == 0;
    std::string note = "all " + std::to_string(points) +
                       " tuned points sit inside [lower-2ci, upper+2ci]";
    if (!pass)
        note = violations > 0
                   ? "the closed-form upper coefficient (c+1)^(1-alpha/2) drops "
                     "the leading terms of the residual-interference series; the "
                     "shipped N=k+m bound falls below the exact-law simulation, "
                     "while the exact-series version holds everywhere (above)"
                   : "expected 118 tuned grid points, got " + std::to_string(points);
    return {pass, note};
}

// ---------------------------------------------------------------------------
// 3 & 10. Capacity ordering in k via the command line, then a byte-identical
// re-run at a different worker count.

struct SweepRowLite {
    double lambda = 0.0, pout = 0.0, ci = 0.0, tc = 0.0;
    std::string error;
};

std::vector<SweepRowLite> parse_sweep_csv(const std::string& body) {
    std::vector<SweepRowLite> rows;
    std::istringstream is(body);
    std::string line;
    std::getline(is, line); // header
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cols.push_back(cell);
        SweepRowLite r;
        if (cols.size() >= 19) {
            r.lambda = std::atof(cols[8].c_str());
            r.pout = std::atof(cols[11].c_str());
            r.ci = std::atof(cols[12].c_str());
            r.tc = std::atof(cols[16].c_str());
            r.error = cols.size() > 19 ? cols[19] : "";
        } else {
            r.error = "short row";
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

constexpr const char* kSweepConfig = "/tmp/txcap_accept_c3.json";
constexpr const char* kSweepCsvT1 = "/tmp/txcap_accept_c3_t1.csv";
constexpr const char* kSweepCsvT4 = "/tmp/txcap_accept_c3_t4.csv";
constexpr double kSweepAlpha = 3.0;
constexpr double kSweepEps = 0.1;
constexpr double kSweepTol = 0.02;

// Half width of the capacity estimate: outage noise mapped through the
// lambda(p) ~ p^(2/alpha) sensitivity, plus half the bisection bracket.
double capacity_ci(double tc, double ci, double eps, double alpha, double tol_rel) {
    return tc * ((2.0 / alpha) * (ci / eps) + 0.5 * tol_rel);
}

std::pair<bool, std::string> crit_capacity_vs_streams() {
    {
        std::ofstream cfg(kSweepConfig);
        cfg << "{\n"
               "  \"mode\": \"no-csit\", \"alpha\": 3.0, \"beta\": 1.0,\n"
               "  \"d\": 1.0, \"epsilon\": 0.1, \"trials\": 20000,\n"
               "  \"trials-final\": 100000, \"tol-rel\": 0.02, \"seed\": 1,\n"
               "  \"find-tc\": true,\n"
               "  \"points\": [\n"
               "    {\"N\": 10, \"k\": 1, \"m\": 3},\n"
               "    {\"N\": 10, \"k\": 2, \"m\": 3},\n"
               "    {\"N\": 10, \"k\": 5, \"m\": 1}\n"
               "  ]\n"
               "}\n";
    }
    const int rc = run_cli(std::string("sweep --config ") + kSweepConfig +
                           " --threads 1 --output " + kSweepCsvT1);
    if (rc != 0)
        return {false, "sweep exited with code " + std::to_string(rc)};
    const auto rows = parse_sweep_csv(read_file(kSweepCsvT1));
    if (rows.size() != 3)
        return {false, "expected 3 sweep rows, got " + std::to_string(rows.size())};
    for (const auto& r : rows)
        if (!r.error.empty())
            return {false, "sweep row failed: " + r.error};
    const double c1 = rows[0].tc, c2 = rows[1].tc, c5 = rows[2].tc;
    const double w1 = capacity_ci(c1, rows[0].ci, kSweepEps, kSweepAlpha, kSweepTol);
    const double w2 = capacity_ci(c2, rows[1].ci, kSweepEps, kSweepAlpha, kSweepTol);
    const double w5 = capacity_ci(c5, rows[2].ci, kSweepEps, kSweepAlpha, kSweepTol);
    std::printf("    C(k=1)=%.4f+-%.4f  C(k=2)=%.4f+-%.4f  C(k=5)=%.4f+-%.4f\n",
                c1, w1, c2, w2, c5, w5);
    const bool pass = (c1 - c2 > w1 + w2) && (c2 - c5 > w2 + w5);
    return {pass, pass ? "capacity strictly decreasing in k beyond combined CIs"
                       : "ordering gap within noise"};
}

std::pair<bool, std::string> crit_deterministic_sweep() {
    const int rc = run_cli(std::string("sweep --config ") + kSweepConfig +
                           " --threads 4 --output " + kSweepCsvT4);
    if (rc != 0)
        return {false, "re-run exited with code " + std::to_string(rc)};
    const std::string a = read_file(kSweepCsvT1);
    const std::string b = read_file(kSweepCsvT4);
    if (a.empty() || b.empty())
        return {false, "missing sweep outputs"};
    const bool pass = a == b;
    return {pass, pass ? "1-worker and 4-worker sweeps byte-identical"
                       : "outputs differ between worker counts"};
}

// ---------------------------------------------------------------------------
// 4. Capacity scaling in N without CSIT.

double capacity_at(const txcap::SystemParams& p, txcap::SimPath path,
                   std::uint64_t seed, double* ci_out) {
    txcap::TcOptions topts;
    topts.trials_final = 100000;
    topts.sim.path = path;
    const auto tc = txcap::find_lambda_star(p, 0.1, 20000, 0.02, seed, topts);
    if (ci_out)
        *ci_out = capacity_ci(tc.capacity, tc.achieved_ci, 0.1, p.alpha, 0.02);
    return tc.capacity;
}

std::pair<bool, std::string> crit_scaling() {
    double ci8 = 0, ci16 = 0, ciHalf = 0, ciBare = 0;
    const double c8 = capacity_at(make(8, 1, 2, 3.0), txcap::SimPath::Fast, 41, &ci8);
    const double c16 =
        capacity_at(make(16, 1, 5, 3.0), txcap::SimPath::Fast, 42, &ci16);
    const double chalf =
        capacity_at(make(16, 8, 8, 3.0), txcap::SimPath::Fast, 43, &ciHalf);
    const double cbare =
        capacity_at(make(16, 1, 0, 3.0), txcap::SimPath::Fast, 44, &ciBare);
    const double ratio = c16 / c8;
    std::printf("    C(16,1,5)=%.4f  C(8,1,2)=%.4f  ratio=%.3f  "
                "C(16,8,8)=%.4f  C(16,1,0)=%.4f\n",
                c16, c8, ratio, chalf, cbare);
    const bool pass = ratio >= kScalingFloor && c16 - chalf > ci16 + ciHalf &&
                      c16 - cbare > ci16 + ciBare;
    return {pass, pass ? "k=1 with the design-rule m scales and dominates"
                       : "scaling or dominance shortfall (see values above)"};
}

// ---------------------------------------------------------------------------
// 5. Max-SIR cancelation dominance.

std::pair<bool, std::string> crit_cmsir() {
    auto pn = make(8, 1, 4, 4.0);
    auto pc = make(8, 1, 4, 4.0, txcap::Mode::NoCsitCmsir);
    std::size_t violations = 0;
    const std::size_t realizations = 10000;
    for (std::size_t t = 0; t < realizations; ++t) {
        auto rng = txcap::Rng::for_trial(777, t);
        const auto ppp = txcap::sample_interferers(0.15, 200.0, rng);
        const auto ch = txcap::sample_channel_set(pn, ppp.count, rng);
        const auto nearest = txcap::sir_no_csit_nearest(pn, ppp, ch);
        const auto best = txcap::sir_cmsir(pc, ppp, ch);
        if (best.per_stream_sir[0] < nearest.per_stream_sir[0])
            ++violations;
    }
    std::printf("    %zu shared realizations, %zu dominance violations\n",
                realizations, violations);

    txcap::TcOptions topts;
    topts.trials_final = 20000;
    const auto tn = txcap::find_lambda_star(pn, 0.1, 5000, 0.05, 611, topts);
    const auto tc = txcap::find_lambda_star(pc, 0.1, 5000, 0.05, 611, topts);
    const double wn = capacity_ci(tn.capacity, tn.achieved_ci, 0.1, 4.0, 0.05);
    const double wc = capacity_ci(tc.capacity, tc.achieved_ci, 0.1, 4.0, 0.05);
    std::printf("    C(max-SIR)=%.4f+-%.4f  C(nearest)=%.4f+-%.4f\n", tc.capacity,
                wc, tn.capacity, wn);
    const bool pass = violations == 0 && tc.capacity >= tn.capacity - (wn + wc);
    return {pass, pass ? "max-SIR cancelation never loses and its capacity holds up"
                       : "dominance violated"};
}

// ---------------------------------------------------------------------------
// 6. Beamforming prefers a single stream.

std::pair<bool, std::string> crit_csit_streams() {
    auto p1 = make(8, 1, 0, 4.0, txcap::Mode::CsitBfNearest);
    auto p2 = make(8, 2, 0, 4.0, txcap::Mode::CsitBfNearest);
    double w1 = 0, w2 = 0;
    const double c1 = capacity_at(p1, txcap::SimPath::Auto, 51, &w1);
    const double c2 = capacity_at(p2, txcap::SimPath::Auto, 52, &w2);
    const auto choice = txcap::optimal_design(8, 4.0, txcap::Mode::CsitBfNearest);
    std::printf("    C_bf(k=1)=%.4f+-%.4f  C_bf(k=2)=%.4f+-%.4f  design=(%zu,%zu)\n",
                c1, w1, c2, w2, choice.k, choice.m);
    const bool pass = (c1 - c2 > w1 + w2) && choice.k == 1 && choice.m == 7;
    return {pass, pass ? "single-stream beamforming wins and the design agrees"
                       : "stream ordering or design choice failed"};
}

// ---------------------------------------------------------------------------
// 7. Distributional oracles.

struct MomentCheck {
    std::string label;
    double mean = 0.0, target = 0.0, se = 0.0;
    bool ok() const { return std::fabs(mean - target) <= kMeanSigmas * se; }
};

MomentCheck check_signal_and_leak(std::size_t N, std::size_t k, std::size_t m,
                                  bool leak, std::uint64_t seed) {
    const auto p = make(N, k, m, 4.0);
    const std::size_t c = m / k;
    std::vector<double> dists;
    for (std::size_t i = 0; i < c; ++i)
        dists.push_back(0.8 + 0.05 * double(i));
    dists.push_back(2.0); // one live interferer for the leakage draw
    const auto ppp = fixed_ppp(dists);
    txcap::Rng rng(seed);
    const std::size_t n = 100000;
    double sum = 0.0, sq = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const auto ch = txcap::sample_channel_set(p, ppp.count, rng);
        const auto qs = txcap::zf_vectors_nearest(ch.H00, ch.interferer_channels, p);
        double x = 0.0;
        if (leak) {
            for (std::size_t j = 0; j < k; ++j) {
                const double a =
                    std::abs(arma::accu(qs[0] % ch.interferer_channels[c].col(j)));
                x += a * a;
            }
        } else {
            const double a = std::abs(arma::accu(qs[0] % ch.H00.col(0)));
            x = a * a;
        }
        sum += x;
        sq += x * x;
    }
    MomentCheck mc;
    mc.label = (leak ? "rho(" : "s(") + std::to_string(N) + "," + std::to_string(k) +
               "," + std::to_string(m) + ")";
    mc.mean = sum / double(n);
    mc.target = leak ? double(k) : double(N - k * c - k + 1);
    const double var = sq / double(n) - mc.mean * mc.mean;
    mc.se = std::sqrt(var / double(n));
    return mc;
}

MomentCheck check_mu(std::size_t N, std::size_t k, std::uint64_t seed) {
    auto p = make(N, k, 0, 4.0, txcap::Mode::CsitBfNearest);
    const std::size_t c = N / k - 1;
    std::vector<double> dists;
    for (std::size_t i = 0; i < c + 2; ++i)
        dists.push_back(0.8 + 0.1 * double(i));
    const auto ppp = fixed_ppp(dists);
    txcap::Rng rng(seed);
    double sum = 0.0, sq = 0.0;
    std::size_t cnt = 0;
    while (cnt < 100000) {
        const auto ch = txcap::sample_channel_set(p, ppp.count, rng);
        const auto det = txcap::sir_csit_bf_detail(p, ppp, ch);
        for (const double x : det.mu) {
            sum += x;
            sq += x * x;
            ++cnt;
        }
    }
    MomentCheck mc;
    mc.label = "mu(" + std::to_string(N) + "," + std::to_string(k) + ")";
    mc.mean = sum / double(cnt);
    mc.target = double(k);
    const double var = sq / double(cnt) - mc.mean * mc.mean;
    mc.se = std::sqrt(var / double(cnt));
    return mc;
}

void collect_log_sir(const txcap::SystemParams& p, std::size_t n, std::uint64_t seed,
                     bool fast, std::vector<double>& out) {
    out.clear();
    const std::size_t stream = p.mode == txcap::Mode::CsitBfNearest ? p.k - 1 : 0;
    for (std::size_t t = 0; t < n; ++t) {
        auto rng = txcap::Rng::for_trial(seed, t);
        const auto ppp = txcap::sample_interferers(0.1, 60.0, rng);
        txcap::SirSample s;
        if (fast) {
            s = txcap::fast_sir(p, ppp, rng);
        } else {
            const auto ch = txcap::sample_channel_set(p, ppp.count, rng);
            s = p.mode == txcap::Mode::CsitBfNearest
                    ? txcap::sir_csit_bf(p, ppp, ch)
                    : txcap::sir_no_csit_nearest(p, ppp, ch);
        }
        if (std::isfinite(s.per_stream_sir[stream]))
            out.push_back(std::log(s.per_stream_sir[stream]));
    }
}

std::pair<bool, std::string> crit_distributions() {
    std::vector<MomentCheck> checks;
    std::uint64_t seed = 70001;
    for (auto [N, k, m] : {std::array<std::size_t, 3>{8, 1, 4},
                           std::array<std::size_t, 3>{8, 2, 4},
                           std::array<std::size_t, 3>{7, 2, 5}}) {
        checks.push_back(check_signal_and_leak(N, k, m, false, seed++));
        checks.push_back(check_signal_and_leak(N, k, m, true, seed++));
    }
    checks.push_back(check_mu(8, 2, seed++));
    checks.push_back(check_mu(4, 2, seed++));
    checks.push_back(check_mu(6, 3, seed++));
    bool all = true;
    for (const auto& mc : checks) {
        std::printf("    %-10s mean %.4f target %.0f se %.4f -> %s\n",
                    mc.label.c_str(), mc.mean, mc.target, mc.se,
                    mc.ok() ? "ok" : "OFF");
        all = all && mc.ok();
    }

    std::vector<double> full, fastv;
    auto pn = make(8, 2, 4, 4.0);
    collect_log_sir(pn, 3000, 71001, false, full);
    collect_log_sir(pn, 3000, 71002, true, fastv);
    double crit = kKs01 * std::sqrt(double(full.size() + fastv.size()) /
                                    (double(full.size()) * double(fastv.size())));
    const double ks_nc = ks_two_sample(full, fastv);
    const bool ok_nc = ks_nc < crit;
    std::printf("    KS fast-vs-full (8,2,4): %.4f vs %.4f -> %s\n", ks_nc, crit,
                ok_nc ? "ok" : "OFF");

    auto pb = make(5, 2, 0, 4.0, txcap::Mode::CsitBfNearest);
    collect_log_sir(pb, 3000, 71003, false, full);
    collect_log_sir(pb, 3000, 71004, true, fastv);
    crit = kKs01 * std::sqrt(double(full.size() + fastv.size()) /
                             (double(full.size()) * double(fastv.size())));
    const double ks_bf = ks_two_sample(full, fastv);
    const bool ok_bf = ks_bf < crit;
    std::printf("    KS fast-vs-full csit (5,2): %.4f vs %.4f -> %s\n", ks_bf, crit,
                ok_bf ? "ok" : "OFF");

    const bool pass = all && ok_nc && ok_bf;
    return {pass, pass ? "all moment targets and KS equivalences hold"
                       : "a distributional oracle failed (see lines above)"};
}

// ---------------------------------------------------------------------------
// 8. Exact transcription of the closed forms.

std::pair<bool, std::string> crit_frozen_values() {
    const auto up = txcap::pout_bounds_no_csit(make(8, 1, 4, 4.0), 1.0 / kPi);
    const auto ex = txcap::pout_bounds_no_csit(make(8, 2, 6, 4.0), 1.0 / kPi);
    const auto tc = txcap::tc_bounds_no_csit(make(8, 1, 4, 4.0));
    const double v1 = 1.0 / 15.0;
    const double v2 = 0.39346934028736657639; // 1 - exp(-1/2)
    const double v3 = 0.35086356055515424855; // 0.9/pi * sqrt(3/2)
    const bool ok1 = std::fabs(up.upper / v1 - 1.0) < kTenDigits;
    const bool ok2 = std::fabs(ex.upper / v2 - 1.0) < kTenDigits;
    const bool ok3 = std::fabs(tc.lower / v3 - 1.0) < kTenDigits;
    std::printf("    1/15: %.15g  1-e^-1/2: %.15g  tc lower: %.15g\n", up.upper,
                ex.upper, tc.lower);
    const bool pass = ok1 && ok2 && ok3;
    return {pass, pass ? "three frozen references reproduced to 10 digits"
                       : "a closed-form value drifted"};
}

// ---------------------------------------------------------------------------
// 9. Zero-forcing / beamforming algebra across random configurations.

std::pair<bool, std::string> crit_algebra() {
    txcap::Rng rng(90001);
    std::size_t violations = 0;
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        if (it % 2 == 0) {
            const std::size_t N = 2 + rng.next_u64() % 9; // 2..10
            const std::size_t kmax = std::min<std::size_t>(4, N);
            const std::size_t k = 1 + rng.next_u64() % kmax;
            const std::size_t m = rng.next_u64() % (N - k + 1);
            const auto p = make(N, k, m, 4.0);
            const std::size_t c = m / k;
            std::vector<double> dists;
            for (std::size_t i = 0; i < c + 1; ++i)
                dists.push_back(0.5 + 0.3 * double(i));
            const auto ppp = fixed_ppp(dists);
            const auto ch = txcap::sample_channel_set(p, ppp.count, rng);
            const auto qs =
                txcap::zf_vectors_nearest(ch.H00, ch.interferer_channels, p);
            for (std::size_t l = 0; l < k; ++l) {
                for (std::size_t r = 0; r < k; ++r) {
                    if (r == l)
                        continue;
                    const double res =
                        std::abs(arma::accu(qs[l] % ch.H00.col(r))) /
                        arma::norm(ch.H00.col(r));
                    worst = std::max(worst, res);
                }
                for (std::size_t n = 0; n < c; ++n)
                    for (std::size_t j = 0; j < k; ++j) {
                        const double res =
                            std::abs(arma::accu(
                                qs[l] % ch.interferer_channels[n].col(j))) /
                            arma::norm(ch.interferer_channels[n].col(j));
                        worst = std::max(worst, res);
                    }
            }
        } else {
            const std::size_t N = 2 + rng.next_u64() % 9;
            const std::size_t k = 1 + rng.next_u64() % N;
            const auto p = make(N, k, 0, 4.0, txcap::Mode::CsitBfNearest);
            const std::size_t c = N / k - 1;
            std::vector<double> dists;
            for (std::size_t i = 0; i < c + 2; ++i)
                dists.push_back(0.6 + 0.2 * double(i));
            const auto ppp = fixed_ppp(dists);
            const auto ch = txcap::sample_channel_set(p, ppp.count, rng);
            const auto det = txcap::sir_csit_bf_detail(p, ppp, ch);
            worst = std::max(worst, det.cross_talk_residual);
        }
        if (worst > kResidualTol) {
            ++violations;
            worst = 0.0;
        }
    }
    std::printf("    1000 random configurations, %zu residuals above %.0e\n",
                violations, kResidualTol);
    const bool pass = violations == 0;
    return {pass, pass ? "all projection and cross-talk residuals within 1e-9"
                       : "residual violations found"};
}

} // namespace

int main() {
    run_criterion(1, "reciprocal-eigenvalue window", crit_eigen_window);
    run_criterion(2, "outage bound sandwich on the full grid", crit_bound_sandwich);
    run_criterion(3, "capacity decreasing in the stream count",
                  crit_capacity_vs_streams);
    run_criterion(4, "capacity scaling and k=1 dominance", crit_scaling);
    run_criterion(5, "max-SIR cancelation dominance", crit_cmsir);
    run_criterion(6, "beamforming favors a single stream", crit_csit_streams);
    run_criterion(7, "distributional oracles", crit_distributions);
    run_criterion(8, "frozen closed-form values", crit_frozen_values);
    run_criterion(9, "zero-forcing and beamforming algebra", crit_algebra);
    run_criterion(10, "worker-count determinism of the full sweep",
                  crit_deterministic_sweep);
    if (g_failures > 0)
        std::printf("%d of 10 criteria failed\n", g_failures);
    else
        std::printf("all 10 criteria passed\n");
    return g_failures;
}
