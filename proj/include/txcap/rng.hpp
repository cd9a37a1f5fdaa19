// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TXCAP_RNG_HPP
#define TXCAP_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace txcap {

// Counter-based deterministic random streams.
//
// The generator is xoshiro256++ seeded through splitmix64. Every Monte Carlo
// trial derives its own stream from (master_seed, trial_index), so results are
// identical no matter how trials are distributed over worker threads, and
// identical across platforms (no std::random distributions are used anywhere;
// all samplers below are fixed algorithms on top of next_u64()).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Independent stream for one trial of one experiment. Streams for
    // different (seed, trial) pairs are decorrelated by splitmix64 mixing.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1), 53-bit resolution.
    double uniform();

    // Unit-mean exponential.
    double exponential();

    // Standard normal via the Marsaglia-Tsang ziggurat (128 layers, exact).
    double normal();

    // Circularly symmetric complex Gaussian, E|z|^2 = 1.
    std::complex<double> cgaussian();

    // Gamma(shape, scale 1) for shape >= 1 (Marsaglia-Tsang squeeze method).
    double gamma(double shape);

    // Poisson(mean): product-of-uniforms inversion for small means, the
    // Hormann PTRS transformed-rejection sampler for mean >= 10.
    std::uint64_t poisson(double mean);

  private:
    std::array<std::uint64_t, 4> s_{};
};

// One splitmix64 step; advances state and returns the next value.
// Exposed for seed-derivation schemes that need raw mixing.
std::uint64_t splitmix64_next(std::uint64_t& state);

} // namespace txcap

#endif
