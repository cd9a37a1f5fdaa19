// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "txcap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "txcap/bounds.hpp"
#include "txcap/channel.hpp"
#include "txcap/geometry.hpp"
#include "txcap/receiver.hpp"
#include "txcap/rng.hpp"

namespace txcap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SimPath resolve_path(const SystemParams& p, SimPath requested) {
    if (requested == SimPath::Auto)
        return p.mode == Mode::NoCsitCmsir ? SimPath::Explicit : SimPath::Sufficient;
    if (p.mode == Mode::NoCsitCmsir && requested != SimPath::Explicit)
        throw std::invalid_argument(
            "estimate_outage: CMSIR supports only the explicit path");
    return requested;
}

// Draw the k x k coefficient block of one non-canceled interferer through the
// lower Cholesky factor of the combiner Gram matrix, and return the
// per-stream power row sums scaled by dn into I.
void add_interference_chol(const std::complex<double>* L, std::size_t k, double dn,
                           Rng& rng, std::vector<std::complex<double>>& gbuf,
                           double* I) {
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < k; ++r)
            gbuf[r] = rng.cgaussian();
        // x = L g, L column-major lower triangular
        for (std::size_t l = 0; l < k; ++l) {
            std::complex<double> x{0.0, 0.0};
            for (std::size_t r = 0; r <= l; ++r)
                x += L[r * k + l] * gbuf[r];
            I[l] += dn * std::norm(x);
        }
    }
}

// Exact-law trial without materializing non-canceled interferer channels:
// their combined coefficients under the fixed combiner rows form a complex
// Gaussian with the combiner Gram matrix as covariance.
void trial_no_csit_sufficient(const SystemParams& p, double lambda,
                              double mean_nodes, Rng& rng,
                              std::vector<double>& sir) {
    const auto ppp = sample_interferers(lambda, mean_nodes, rng);
    const std::size_t ccount = std::min(p.m / p.k, ppp.count);

    const arma::cx_mat H00 = sample_complex_gaussian(p.N, p.k, rng);
    std::vector<arma::cx_mat> canceled(ccount);
    if (ccount > 0) {
        const arma::cx_mat icols = sample_complex_gaussian(p.N, p.k * ccount, rng);
        for (std::size_t j = 0; j < ccount; ++j)
            canceled[j] = icols.cols(j * p.k, j * p.k + p.k - 1);
    }
    const auto qs = zf_vectors_nearest(H00, canceled, p);

    const double da = std::pow(p.d, -p.alpha);
    sir.assign(p.k, std::numeric_limits<double>::infinity());
    std::vector<double> I(p.k, 0.0);

    if (p.k == 1) {
        // Unit combiner Gram: coefficients are plain CN(0,1).
        for (std::size_t n = ccount; n < ppp.count; ++n) {
            const double dn = std::pow(ppp.distances[n], -p.alpha);
            I[0] += dn * std::norm(rng.cgaussian());
        }
    } else {
        arma::cx_mat G(p.k, p.k);
        for (std::size_t l = 0; l < p.k; ++l)
            for (std::size_t r = 0; r < p.k; ++r)
                G(l, r) = arma::accu(qs[l] % arma::conj(qs[r]));
        arma::cx_mat L;
        if (!arma::chol(L, G, "lower"))
            throw std::runtime_error("estimate_outage: combiner Gram not PD");
        std::vector<std::complex<double>> gbuf(p.k);
        for (std::size_t n = ccount; n < ppp.count; ++n) {
            const double dn = std::pow(ppp.distances[n], -p.alpha);
            add_interference_chol(L.memptr(), p.k, dn, rng, gbuf, I.data());
        }
    }

    for (std::size_t l = 0; l < p.k; ++l) {
        const double s = std::norm(arma::accu(qs[l] % H00.col(l)));
        if (I[l] > 0.0)
            sir[l] = da * s / I[l];
    }
}

void trial_csit_sufficient(const SystemParams& p, double lambda, double mean_nodes,
                           Rng& rng, std::vector<double>& sir) {
    const auto ppp = sample_interferers(lambda, mean_nodes, rng);
    const std::size_t ccount = std::min(p.N / p.k - 1, ppp.count);
    const std::size_t nu = p.N - p.k * ccount;

    const arma::cx_mat Hown = sample_complex_gaussian(p.N, p.N, rng);
    const ChannelDecomposition dec = decompose(Hown, p.k);

    const arma::cx_mat B = ccount > 0
                               ? sample_complex_gaussian(p.N, p.k * ccount, rng)
                               : arma::cx_mat(p.N, 0);
    const arma::cx_mat Nb = null_space_cols(B, p.N, nu);
    const arma::cx_mat M = Nb.t() * dec.U_k();
    arma::cx_mat Qm, A;
    arma::qr_econ(Qm, A, M);
    // Receiver Gram W W^H = (A^H A)^-1; row phases drop out of it.
    const arma::cx_mat Ainv =
        arma::solve(arma::trimatu(A), arma::eye<arma::cx_mat>(p.k, p.k));
    const arma::cx_mat G = Ainv * Ainv.t();

    const double da = std::pow(p.d, -p.alpha);
    sir.assign(p.k, std::numeric_limits<double>::infinity());
    std::vector<double> I(p.k, 0.0);

    if (p.k == 1) {
        const double g11 = G(0, 0).real();
        for (std::size_t n = ccount; n < ppp.count; ++n) {
            const double dn = std::pow(ppp.distances[n], -p.alpha);
            I[0] += dn * g11 * std::norm(rng.cgaussian());
        }
    } else {
        arma::cx_mat L;
        if (!arma::chol(L, G, "lower"))
            throw std::runtime_error("estimate_outage: receiver Gram not PD");
        std::vector<std::complex<double>> gbuf(p.k);
        for (std::size_t n = ccount; n < ppp.count; ++n) {
            const double dn = std::pow(ppp.distances[n], -p.alpha);
            add_interference_chol(L.memptr(), p.k, dn, rng, gbuf, I.data());
        }
    }

    for (std::size_t l = 0; l < p.k; ++l) {
        if (I[l] > 0.0)
            sir[l] = da * dec.eigenvalues(l) / I[l];
    }
}

void trial_explicit(const SystemParams& p, double lambda, const SimOptions& opts,
                    Rng& rng, std::vector<double>& sir) {
    const auto ppp = sample_interferers(lambda, opts.mean_nodes, rng);
    const ChannelSet cs = sample_channel_set(p, ppp.count, rng);
    SirSample s;
    switch (p.mode) {
        case Mode::NoCsitNearest: s = sir_no_csit_nearest(p, ppp, cs); break;
        case Mode::NoCsitCmsir:
            s = sir_cmsir(p, ppp, cs, opts.window, opts.subset_limit);
            break;
        case Mode::CsitBfNearest: s = sir_csit_bf(p, ppp, cs); break;
    }
    sir = std::move(s.per_stream_sir);
}

void trial_fast(const SystemParams& p, double lambda, double mean_nodes, Rng& rng,
                std::vector<double>& sir) {
    const auto ppp = sample_interferers(lambda, mean_nodes, rng);
    sir = fast_sir(p, ppp, rng).per_stream_sir;
}

} // namespace

OutageEstimate estimate_outage(const SystemParams& p, double lambda,
                               std::size_t trials, std::uint64_t seed,
                               const SimOptions& opts) {
    validate(p);
    if (trials < 100)
        throw std::invalid_argument("estimate_outage: trials must be >= 100");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("estimate_outage: lambda must be positive");
    if (!(opts.mean_nodes > 0.0))
        throw std::invalid_argument("estimate_outage: mean_nodes must be positive");
    const SimPath path = resolve_path(p, opts.path);

    std::size_t nw = opts.workers;
    if (nw == 0) {
        nw = std::max(1u, std::thread::hardware_concurrency());
    }
    nw = std::min(nw, trials);

    std::atomic<std::size_t> next{0};
    std::vector<std::vector<std::uint64_t>> tallies(
        nw, std::vector<std::uint64_t>(p.k, 0));
    std::vector<std::string> failures(nw);

    auto work = [&](std::size_t wi) {
        try {
            std::vector<double> sir;
            for (;;) {
                const std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= trials)
                    break;
                Rng rng = Rng::for_trial(seed, t);
                switch (path) {
                    case SimPath::Explicit:
                        trial_explicit(p, lambda, opts, rng, sir);
                        break;
                    case SimPath::Fast:
                        trial_fast(p, lambda, opts.mean_nodes, rng, sir);
                        break;
                    default:
                        if (p.mode == Mode::CsitBfNearest)
                            trial_csit_sufficient(p, lambda, opts.mean_nodes, rng, sir);
                        else
                            trial_no_csit_sufficient(p, lambda, opts.mean_nodes, rng,
                                                     sir);
                        break;
                }
                for (std::size_t l = 0; l < p.k; ++l)
                    if (sir[l] <= p.beta)
                        ++tallies[wi][l];
            }
        } catch (const std::exception& e) {
            failures[wi] = e.what();
            next.store(trials, std::memory_order_relaxed); // stop the pool
        }
    };

    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (std::size_t wi = 0; wi < nw; ++wi)
            pool.emplace_back(work, wi);
        for (auto& th : pool)
            th.join();
    }
    for (const auto& f : failures)
        if (!f.empty())
            throw std::runtime_error(f);

    OutageEstimate est;
    est.trials = trials;
    est.lambda = lambda;
    est.seed = seed;
    est.per_stream_p.assign(p.k, 0.0);
    for (std::size_t l = 0; l < p.k; ++l) {
        std::uint64_t total = 0;
        for (std::size_t wi = 0; wi < nw; ++wi)
            total += tallies[wi][l];
        est.per_stream_p[l] = static_cast<double>(total) / static_cast<double>(trials);
    }
    const std::size_t outage_stream = p.mode == Mode::CsitBfNearest ? p.k - 1 : 0;
    est.p_hat = est.per_stream_p[outage_stream];
    const double T = static_cast<double>(trials);
    est.ci95_half_width =
        1.96 * std::max(std::sqrt(est.p_hat * (1.0 - est.p_hat) / T), 1.0 / T);
    return est;
}

namespace {

// Starting intensity for the bracket hunt: invert the closed-form outage
// upper bound at epsilon where it exists, otherwise one interferer expected
// within the link distance.
double guess_lambda(const SystemParams& p, double epsilon) {
    constexpr double kPi = 3.14159265358979323846;
    const double fallback = 1.0 / (kPi * p.d * p.d);
    if (p.mode == Mode::CsitBfNearest)
        return fallback;
    const double a2 = 0.5 * p.alpha;
    const double c = static_cast<double>(p.m / p.k);
    if (!(c > a2 - 1.0) || !(p.beta > 0.0))
        return fallback;
    const double dab = std::pow(p.d, p.alpha) * p.beta;
    const double k = static_cast<double>(p.k);
    const double tail = std::pow(c + 1.0, 1.0 - a2) / (a2 - 1.0);
    double pl; // (pi * lambda)^(alpha/2) at the bound's epsilon crossing
    if (p.N > p.k + p.m) {
        const double K = k * dab * tail / (static_cast<double>(p.N - p.m - p.k));
        pl = epsilon / K;
    } else {
        pl = -std::log1p(-epsilon) / (dab * k * tail);
    }
    const double lam = std::pow(pl, 1.0 / a2) / kPi;
    return std::isfinite(lam) && lam > 0.0 ? lam : fallback;
}

} // namespace

TcResult find_lambda_star(const SystemParams& p, double epsilon,
                          std::size_t trials, double tol_rel, std::uint64_t seed,
                          const TcOptions& topts) {
    validate(p);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("find_lambda_star: epsilon must be in (0,1)");
    if (trials < 100 || topts.trials_final < 100)
        throw std::invalid_argument("find_lambda_star: trials must be >= 100");
    if (!(tol_rel > 0.0))
        throw std::invalid_argument("find_lambda_star: tol_rel must be positive");

    std::size_t evals = 0;
    auto eval = [&](double lam) {
        ++evals;
        return estimate_outage(p, lam, trials, seed, topts.sim);
    };

    const double lam0 = guess_lambda(p, epsilon);
    const OutageEstimate e0 = eval(lam0);

    // Geometric bracket expansion; with common random numbers the empirical
    // outage is monotone in lambda, so any decrease beyond the combined CIs
    // indicates a broken sampler rather than noise.
    double lo = lam0, hi = lam0;
    bool found = false;
    if (e0.p_hat <= epsilon) {
        double prev_p = e0.p_hat, prev_ci = e0.ci95_half_width, cur = lam0;
        for (int i = 0; i < 20; ++i) {
            cur *= 4.0;
            const OutageEstimate e = eval(cur);
            if (e.p_hat + 2.0 * (e.ci95_half_width + prev_ci) < prev_p)
                throw std::runtime_error(
                    "find_lambda_star: outage decreased with growing lambda "
                    "beyond CI; sampler inconsistent");
            if (e.p_hat > epsilon) {
                hi = cur;
                found = true;
                break;
            }
            lo = cur;
            prev_p = e.p_hat;
            prev_ci = e.ci95_half_width;
        }
        if (!found)
            throw std::runtime_error(
                "find_lambda_star: bracket-not-found; outage stays below epsilon "
                "over the searched intensity range");
    } else {
        double prev_p = e0.p_hat, prev_ci = e0.ci95_half_width, cur = lam0;
        for (int i = 0; i < 20; ++i) {
            cur /= 4.0;
            const OutageEstimate e = eval(cur);
            if (e.p_hat > prev_p + 2.0 * (e.ci95_half_width + prev_ci))
                throw std::runtime_error(
                    "find_lambda_star: outage increased with shrinking lambda "
                    "beyond CI; sampler inconsistent");
            if (e.p_hat <= epsilon) {
                lo = cur;
                found = true;
                break;
            }
            hi = cur;
            prev_p = e.p_hat;
            prev_ci = e.ci95_half_width;
        }
        if (!found)
            throw std::runtime_error(
                "find_lambda_star: bracket-not-found; outage exceeds epsilon "
                "over the searched intensity range");
    }

    std::size_t iters = 0;
    while (hi / lo > 1.0 + tol_rel) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi))
            break; // bracket at floating-point resolution
        const OutageEstimate em = eval(mid);
        if (em.p_hat <= epsilon)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }

    TcResult r;
    r.lambda_star = std::sqrt(lo * hi);
    r.capacity = static_cast<double>(p.k) * r.lambda_star * (1.0 - epsilon) * p.R;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.iterations = iters;
    r.seed = seed;
    const OutageEstimate ef =
        estimate_outage(p, r.lambda_star, topts.trials_final, seed, topts.sim);
    ++evals;
    r.evals = evals;
    r.achieved_pout = ef.p_hat;
    r.achieved_ci = ef.ci95_half_width;
    return r;
}

namespace {

std::uint64_t moments_seed(std::size_t N, std::size_t k) {
    std::uint64_t s = 0x74786361705F6D6FULL; // fixed tag, independent of rows
    s ^= splitmix64_next(s) + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(N);
    s ^= splitmix64_next(s) + 0xBF58476D1CE4E5B9ULL * static_cast<std::uint64_t>(k);
    return splitmix64_next(s);
}

std::string fmt_g12(double v) {
    if (std::isnan(v))
        return {};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string sweep_csv_header() {
    return "mode,N,k,m,alpha,beta,d,epsilon,lambda,trials,seed,pout_hat,ci95,"
           "pout_lb,pout_ub,valid,tc,tc_lb,tc_ub,error";
}

std::string sweep_row_csv(const SweepRow& r) {
    std::ostringstream os;
    os << r.mode << ',' << r.N << ',' << r.k << ',' << r.m << ','
       << fmt_g12(r.alpha) << ',' << fmt_g12(r.beta) << ',' << fmt_g12(r.d) << ','
       << fmt_g12(r.epsilon) << ',' << fmt_g12(r.lambda) << ',' << r.trials << ','
       << r.seed << ',' << fmt_g12(r.pout_hat) << ',' << fmt_g12(r.ci95) << ','
       << fmt_g12(r.pout_lb) << ',' << fmt_g12(r.pout_ub) << ','
       << (r.valid ? '1' : '0') << ',' << fmt_g12(r.tc) << ',' << fmt_g12(r.tc_lb)
       << ',' << fmt_g12(r.tc_ub) << ',' << csv_escape(r.error);
    return os.str();
}

std::vector<SweepRow> sweep(const std::vector<SweepPoint>& points,
                            const std::string& output_path,
                            const SimOptions& opts) {
    std::map<std::pair<std::size_t, std::size_t>, EigenMoments> mom_cache;
    auto moments_for = [&](const SystemParams& pp) -> const EigenMoments& {
        const auto key = std::make_pair(pp.N, pp.k);
        auto it = mom_cache.find(key);
        if (it == mom_cache.end()) {
            Rng mrng(moments_seed(pp.N, pp.k));
            it = mom_cache
                     .emplace(key, wishart_eigen_moments(pp.N, pp.k, 100000, mrng))
                     .first;
        }
        return it->second;
    };

    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    for (const auto& pt : points) {
        SweepRow row;
        row.mode = mode_name(pt.params.mode);
        row.N = pt.params.N;
        row.k = pt.params.k;
        row.m = pt.params.m;
        row.alpha = pt.params.alpha;
        row.beta = pt.params.beta;
        row.d = pt.params.d;
        row.epsilon = pt.params.epsilon;
        row.lambda = pt.lambda.value_or(kNaN);
        row.trials = pt.trials;
        row.seed = pt.seed;
        row.pout_hat = row.ci95 = row.pout_lb = row.pout_ub = kNaN;
        row.tc = row.tc_lb = row.tc_ub = kNaN;

        try {
            validate(pt.params, true);
            if (pt.find_tc) {
                TcOptions topts;
                topts.trials_final = pt.trials_final;
                topts.sim = opts;
                const TcResult tc = find_lambda_star(pt.params, pt.params.epsilon,
                                                     pt.trials, pt.tol_rel, pt.seed,
                                                     topts);
                row.lambda = tc.lambda_star;
                row.trials = pt.trials_final;
                row.pout_hat = tc.achieved_pout;
                row.ci95 = tc.achieved_ci;
                row.tc = tc.capacity;
            } else {
                if (!pt.lambda)
                    throw std::invalid_argument(
                        "sweep: lambda is required unless find_tc is set");
                const OutageEstimate est = estimate_outage(
                    pt.params, *pt.lambda, pt.trials, pt.seed, opts);
                row.pout_hat = est.p_hat;
                row.ci95 = est.ci95_half_width;
            }
            // Bounds are best-effort: a CSIT row whose eigenvalue moments do
            // not exist (k = N) still reports its simulation.
            try {
                PoutBounds pb;
                TcBounds tb;
                if (pt.params.mode == Mode::CsitBfNearest) {
                    const EigenMoments& mm = moments_for(pt.params);
                    pb = pout_bounds_csit(pt.params, row.lambda, mm);
                    tb = tc_bounds_csit(pt.params, mm);
                } else if (pt.params.mode == Mode::NoCsitCmsir) {
                    pb = pout_bounds_cmsir(pt.params, row.lambda);
                    tb = tc_bounds_no_csit(pt.params);
                } else {
                    pb = pout_bounds_no_csit(pt.params, row.lambda);
                    tb = tc_bounds_no_csit(pt.params);
                }
                row.pout_lb = pb.lower;
                row.pout_ub = pb.valid ? pb.upper : kNaN;
                row.valid = pb.valid;
                row.tc_lb = tb.lower;
                row.tc_ub = tb.upper;
            } catch (const std::exception&) {
                row.valid = false;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }

    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out)
            throw std::runtime_error("sweep: cannot write output file " + output_path);
        out << sweep_csv_header() << '\n';
        for (const auto& r : rows)
            out << sweep_row_csv(r) << '\n';
        if (!out)
            throw std::runtime_error("sweep: write failed for " + output_path);
    }
    return rows;
}

} // namespace txcap
