// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TXCAP_PARAMS_HPP
#define TXCAP_PARAMS_HPP

#include <cstddef>
#include <optional>
#include <string>

namespace txcap {

// Transmit/receive strategy.
//  - NoCsitNearest: k streams, partial ZF canceling the floor(m/k) nearest
//    interferers, remaining receive dimensions collect signal power.
//  - NoCsitCmsir:   same receiver family, but the canceled subset is chosen
//    per stream to maximize SIR (constrained max-SIR search).
//  - CsitBfNearest: multi-mode beamforming on the own channel's top-k right
//    singular vectors plus cancelation of the floor(N/k)-1 nearest
//    interferers.
enum class Mode { NoCsitNearest, NoCsitCmsir, CsitBfNearest };

const char* mode_name(Mode mode);                 // "no-csit" | "cmsir" | "csit"
std::optional<Mode> mode_from_name(const std::string& name);

struct SystemParams {
    std::size_t N = 1;     // antennas per node
    std::size_t k = 1;     // data streams, 1..N
    std::size_t m = 0;     // SRDOF spent on cancelation (no-CSIT modes), 0..N-k
    double alpha = 3.0;    // path-loss exponent, > 2
    double beta = 1.0;     // SIR threshold, linear, >= 0
    double d = 1.0;        // typical link distance, meters
    double epsilon = 0.1;  // outage constraint, (0,1)
    double R = 1.0;        // per-stream rate, bits/s/Hz
    Mode mode = Mode::NoCsitNearest;
    // Transmit power cancels out of every SIR in the interference-limited
    // regime; carried for documentation only.
    std::optional<double> tx_power;
};

// Interferers a receiver can cancel: floor(m/k) without CSIT,
// floor(N/k) - 1 with CSIT beamforming.
std::size_t cancelable_count(const SystemParams& p);

// Throws std::invalid_argument naming the offending field. epsilon is only
// checked when `check_epsilon` is set (it is unused by plain simulation).
// The closed-form bounds additionally require cancelable_count > alpha/2 - 1;
// that is reported through the bounds' validity flag, not here, because the
// simulator runs fine without it.
void validate(const SystemParams& p, bool check_epsilon = false);

} // namespace txcap

#endif
