// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "txcap/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace txcap {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// Ziggurat tables for the standard normal (Marsaglia & Tsang 2000), ported to
// 53-bit integer magnitudes. kn: box acceptance thresholds, wn: scale factors,
// fn: density values at the box edges.
struct ZigTables {
    std::uint64_t kn[128];
    double wn[128];
    double fn[128];

    ZigTables() {
        const double m1 = 9007199254740992.0; // 2^53
        double dn = 3.442619855899;
        double tn = dn;
        const double vn = 9.91256303526217e-3;

        double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint64_t>((dn / q) * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; i--) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint64_t>((dn / tn) * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

const ZigTables& zig() {
    static const ZigTables tables;
    return tables;
}

constexpr double kTailR = 3.442619855899;

} // namespace

Rng::Rng(std::uint64_t seed) {
    // xoshiro256++ state must not be all zero; splitmix64 expansion is the
    // recommended initialization and guarantees that almost surely.
    std::uint64_t sm = seed;
    for (auto& word : s_)
        word = splitmix64_next(sm);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0)
        s_[0] = 0x9E3779B97F4A7C15ULL;
}

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t sm = seed;
    std::uint64_t a = splitmix64_next(sm);
    sm = a ^ (trial * 0xD2B74407B1CE6E93ULL + 0x8CB92BA72F3D8DD7ULL);
    return Rng(splitmix64_next(sm));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() {
    return -std::log(uniform());
}

double Rng::normal() {
    const ZigTables& t = zig();
    for (;;) {
        const std::uint64_t u = next_u64();
        const int iz = static_cast<int>(u & 127);
        // Signed 53-bit magnitude; bits 7..9 are discarded so the box index
        // and the magnitude stay independent.
        const std::int64_t hz =
            static_cast<std::int64_t>(u >> 10) - static_cast<std::int64_t>(1ULL << 53);
        const std::int64_t az = hz < 0 ? -hz : hz;
        if (static_cast<std::uint64_t>(az) < t.kn[iz])
            return static_cast<double>(hz) * t.wn[iz];

        if (iz == 0) {
            // Tail beyond R, sampled exactly by Marsaglia's method.
            double x, y;
            do {
                x = -std::log(uniform()) / kTailR;
                y = -std::log(uniform());
            } while (y + y < x * x);
            return hz > 0 ? kTailR + x : -(kTailR + x);
        }

        const double x = static_cast<double>(hz) * t.wn[iz];
        if (t.fn[iz] + uniform() * (t.fn[iz - 1] - t.fn[iz]) < std::exp(-0.5 * x * x))
            return x;
        // Rejected in the wedge: resample from scratch.
    }
}

std::complex<double> Rng::cgaussian() {
    const double re = normal();
    const double im = normal();
    return {re * 0.7071067811865476, im * 0.7071067811865476};
}

double Rng::gamma(double shape) {
    if (!(shape >= 1.0))
        throw std::invalid_argument("Rng::gamma requires shape >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0))
        throw std::invalid_argument("Rng::poisson requires mean >= 0");
    if (mean == 0.0)
        return 0;
    if (mean < 10.0) {
        // Product-of-uniforms inversion; exact for small means.
        const double limit = std::exp(-mean);
        std::uint64_t n = 0;
        double prod = uniform();
        while (prod > limit) {
            ++n;
            prod *= uniform();
        }
        return n;
    }
    // PTRS transformed rejection (Hormann 1993), exact for mean >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r)
            return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * log_mean - mean - std::lgamma(kf + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

} // namespace txcap
