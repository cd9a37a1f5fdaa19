// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "txcap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace txcap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

PoutBounds finish(double lower_raw, double upper_raw, bool valid) {
    PoutBounds b;
    b.lower_raw = lower_raw;
    b.upper_raw = upper_raw;
    b.valid = valid;
    b.lower = std::clamp(lower_raw, 0.0, 1.0);
    b.upper = valid ? std::clamp(upper_raw, 0.0, 1.0) : 1.0;
    return b;
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("bounds: lambda must be > 0");
}

void check_moments(const SystemParams& p, const EigenMoments& mom) {
    if (mom.N != p.N || mom.k != p.k)
        throw std::invalid_argument(
            "bounds: eigenvalue moments were measured for a different (N, k)");
    if (!(mom.mean_gamma_k > 0.0) || std::isnan(mom.mean_inv_gamma_k) ||
        !(mom.mean_inv_gamma_k > 0.0))
        throw std::invalid_argument("bounds: eigenvalue moments are incomplete");
}

} // namespace

double gamma_ratio_bound(double c, double alpha) {
    return std::pow(c + 0.125 + 0.25 * alpha, 0.5 * alpha - 1.0);
}

double gamma_ratio_exact(double c, double alpha) {
    return static_cast<double>(
        std::exp(std::lgammal(static_cast<long double>(c) + 0.5L * alpha) -
                 std::lgammal(static_cast<long double>(c) + 1.0L)));
}

PoutBounds pout_bounds_no_csit(const SystemParams& p, double lambda) {
    validate(p);
    if (p.mode == Mode::CsitBfNearest)
        throw std::invalid_argument("pout_bounds_no_csit: wrong mode");
    check_lambda(lambda);

    const double N = static_cast<double>(p.N);
    const double k = static_cast<double>(p.k);
    const double m = static_cast<double>(p.m);
    const double c = static_cast<double>(p.m / p.k);
    const double a2 = 0.5 * p.alpha;
    const double pl = std::pow(kPi * lambda, a2);
    const double dab = std::pow(p.d, p.alpha) * p.beta;

    double lower_raw;
    if (p.k > 1) {
        lower_raw = 1.0 - (N - m - k + 1.0) / ((k - 1.0) * dab * pl) *
                              std::pow(c + 0.625 + 0.25 * p.alpha, a2);
    } else {
        lower_raw = 1.0 - (N - m) / (dab * pl) *
                              std::pow(m + 1.625 + 0.25 * p.alpha, a2);
    }

    // The interference tail moment exists only for floor(m/k) > alpha/2 - 1;
    // otherwise the Markov step has nothing to bound with.
    const bool valid = c > a2 - 1.0;
    double upper_raw;
    if (!valid) {
        upper_raw = kInf;
    } else if (p.N > p.k + p.m) {
        upper_raw = k * dab * pl / (N - m - k) / (a2 - 1.0) *
                    std::pow(c + 1.0, 1.0 - a2);
    } else {
        upper_raw =
            1.0 - std::exp(-dab * pl * k / (a2 - 1.0) * std::pow(c + 1.0, 1.0 - a2));
    }
    return finish(lower_raw, upper_raw, valid);
}

PoutBounds pout_bounds_cmsir(const SystemParams& p, double lambda) {
    if (p.mode != Mode::NoCsitCmsir)
        throw std::invalid_argument("pout_bounds_cmsir: wrong mode");
    SystemParams q = p;
    q.mode = Mode::NoCsitNearest;
    // Max-SIR selection can only reduce outage, and no tighter closed form
    // exists, so the nearest-set bounds apply unchanged.
    return pout_bounds_no_csit(q, lambda);
}

PoutBounds pout_bounds_csit(const SystemParams& p, double lambda,
                            const EigenMoments& moments) {
    validate(p);
    if (p.mode != Mode::CsitBfNearest)
        throw std::invalid_argument("pout_bounds_csit: wrong mode");
    check_lambda(lambda);
    check_moments(p, moments);

    const double k = static_cast<double>(p.k);
    const double c = static_cast<double>(p.N / p.k - 1);
    const double floor_nk = static_cast<double>(p.N / p.k);
    const double a2 = 0.5 * p.alpha;
    const double pl = std::pow(kPi * lambda, a2);
    const double dab = std::pow(p.d, p.alpha) * p.beta;

    double lower_raw;
    if (p.k > 1) {
        lower_raw = 1.0 - moments.mean_gamma_k / ((k - 1.0) * dab * pl) *
                              std::pow(c + 0.625 + 0.25 * p.alpha, a2);
    } else {
        lower_raw = 1.0 - moments.mean_gamma_k / (dab * pl) *
                              std::pow(c + 1.625 + 0.25 * p.alpha, a2);
    }

    const bool valid = c > a2 - 1.0;
    const double upper_raw =
        valid ? pl * k * dab * moments.mean_inv_gamma_k / (a2 - 1.0) *
                    std::pow(floor_nk, 1.0 - a2)
              : kInf;
    return finish(lower_raw, upper_raw, valid);
}

TcBounds tc_bounds_no_csit(const SystemParams& p) {
    validate(p, true);
    if (p.mode == Mode::CsitBfNearest)
        throw std::invalid_argument("tc_bounds_no_csit: wrong mode");

    const double N = static_cast<double>(p.N);
    const double k = static_cast<double>(p.k);
    const double m = static_cast<double>(p.m);
    const double c = static_cast<double>(p.m / p.k);
    const double a2 = 0.5 * p.alpha;
    const double ia = 2.0 / p.alpha;
    const double dab = std::pow(p.d, p.alpha) * p.beta;
    const double one_eps = 1.0 - p.epsilon;

    TcBounds b;
    if (p.k > 1) {
        b.upper = k * p.R * std::pow(one_eps, 1.0 - ia) / kPi *
                  std::pow((N - m - k + 1.0) / ((k - 1.0) * dab), ia) *
                  (c + 0.625 + 0.25 * p.alpha);
    } else {
        b.upper = p.R * std::pow(one_eps, 1.0 - ia) / kPi *
                  std::pow((N - m) / dab, ia) *
                  (m + 1.625 + 0.25 * p.alpha + 1.0);
    }

    b.valid = c > a2 - 1.0;
    if (b.valid) {
        const double tail = std::pow(c + 1.0, 1.0 - a2) / (a2 - 1.0);
        double lam_term;
        if (p.N == p.k + p.m)
            lam_term = std::pow(-std::log(one_eps) / (k * dab), ia);
        else
            lam_term = std::pow((N - k - m) * p.epsilon / (k * dab), ia);
        b.lower = k * p.R * one_eps / kPi * lam_term * std::pow(tail, -ia);
    } else {
        b.lower = 0.0;
    }
    return b;
}

TcBounds tc_bounds_csit(const SystemParams& p, const EigenMoments& moments) {
    validate(p, true);
    if (p.mode != Mode::CsitBfNearest)
        throw std::invalid_argument("tc_bounds_csit: wrong mode");
    check_moments(p, moments);

    const double N = static_cast<double>(p.N);
    const double k = static_cast<double>(p.k);
    const double c = static_cast<double>(p.N / p.k - 1);
    const double floor_nk = static_cast<double>(p.N / p.k);
    const double a2 = 0.5 * p.alpha;
    const double ia = 2.0 / p.alpha;
    const double dab = std::pow(p.d, p.alpha) * p.beta;
    const double one_eps = 1.0 - p.epsilon;

    TcBounds b;
    if (p.k > 1) {
        b.upper = std::pow(one_eps, 1.0 - ia) * k * p.R / kPi *
                  std::pow(moments.mean_gamma_k / ((k - 1.0) * dab), ia) *
                  (floor_nk + 0.375 + 0.25 * p.alpha);
    } else {
        b.upper = std::pow(one_eps, 1.0 - ia) * p.R / kPi *
                  std::pow(moments.mean_gamma_k / dab, ia) *
                  (N + 0.625 + 0.25 * p.alpha);
    }

    b.valid = c > a2 - 1.0;
    if (b.valid) {
        const double tail = std::pow(floor_nk, 1.0 - a2) / (a2 - 1.0);
        b.lower = one_eps * p.R * std::pow(k, 1.0 - ia) / kPi *
                  std::pow(p.epsilon / (dab * moments.mean_inv_gamma_k * tail), ia);
    } else {
        b.lower = 0.0;
    }
    return b;
}

std::size_t design_m_rule(std::size_t N, std::size_t k, double alpha) {
    if (N < 1 || k < 1 || k > N)
        throw std::invalid_argument("design_m_rule: need 1 <= k <= N");
    if (!(alpha > 2.0))
        throw std::invalid_argument("design_m_rule: alpha must be > 2");
    const double theta = 1.0 - 2.0 / alpha;
    const double cap = static_cast<double>(N - k) / static_cast<double>(k);
    return static_cast<std::size_t>(
        std::floor(std::min(theta * static_cast<double>(N), cap)));
}

DesignChoice optimal_design(std::size_t N, double alpha, Mode mode,
                            const SystemParams& env) {
    if (N < 1)
        throw std::invalid_argument("optimal_design: N must be >= 1");
    if (!(alpha > 2.0))
        throw std::invalid_argument("optimal_design: alpha must be > 2");

    if (mode == Mode::CsitBfNearest)
        return DesignChoice{1, N - 1};

    // Single-stream with the cancelation split near (1 - 2/alpha) N wins the
    // capacity lower bound; compare the two integers straddling it.
    const double theta = 1.0 - 2.0 / alpha;
    const std::size_t m0 =
        static_cast<std::size_t>(std::floor(theta * static_cast<double>(N)));

    DesignChoice best{1, 0};
    double best_tc = -1.0;
    for (std::size_t mm : {m0, m0 + 1}) {
        if (mm > N - 1)
            continue;
        SystemParams p = env;
        p.N = N;
        p.k = 1;
        p.m = mm;
        p.alpha = alpha;
        p.mode = mode;
        const double tc = tc_bounds_no_csit(p).lower;
        if (tc > best_tc) {
            best_tc = tc;
            best = DesignChoice{1, mm};
        }
    }
    return best;
}

} // namespace txcap
