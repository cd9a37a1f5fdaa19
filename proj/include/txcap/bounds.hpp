// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <optional>

#include "txcap/channel.hpp"
#include "txcap/params.hpp"

namespace txcap {

// Closed-form outage probability bounds. `lower_raw`/`upper_raw` keep the
// unclamped analytic values; `lower`/`upper` are clamped to [0,1]. `valid`
// is false when the tail-moment condition floor(m/k) > alpha/2 - 1 (or its
// CSIT analogue with floor(N/k) - 1) fails, in which case the upper bound
// diverges and only the lower bound carries information.
struct PoutBounds {
    double lower = 0.0;
    double upper = 1.0;
    double lower_raw = 0.0;
    double upper_raw = 1.0;
    bool valid = true;
};

// Transmission capacity bounds at a target outage epsilon, in units of
// streams per unit area times the rate factor R*(1-epsilon).
struct TcBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool valid = true;
};

// Gamma-ratio machinery shared by every bound: an upper estimate of
// Gamma(c + alpha/2) / Gamma(c + 1) and its exact value.
double gamma_ratio_bound(double c, double alpha);
double gamma_ratio_exact(double c, double alpha);

// Outage bounds for the nearest-c canceler without transmit CSI.
PoutBounds pout_bounds_no_csit(const SystemParams& p, double lambda);

// The max-SIR canceler shares the nearest-c bounds: its outage is no worse,
// and no tighter closed form is available, so this is a pass-through.
PoutBounds pout_bounds_cmsir(const SystemParams& p, double lambda);

// Outage bounds under transmit beamforming with CSI. The eigenvalue moments
// must match (N, k); anything else is rejected.
PoutBounds pout_bounds_csit(const SystemParams& p, double lambda,
                            const EigenMoments& moments);

// Transmission capacity bounds (epsilon taken from p).
TcBounds tc_bounds_no_csit(const SystemParams& p);
TcBounds tc_bounds_csit(const SystemParams& p, const EigenMoments& moments);

// Design rule m(N, k, alpha): cancel the nearer of (1 - 2/alpha) N and
// (N - k)/k interferers, floored.
std::size_t design_m_rule(std::size_t N, std::size_t k, double alpha);

// Best (k, m) by the capacity lower bound. Without transmit CSI the stream
// count stays at 1 and m is chosen near (1 - 2/alpha) N; with CSI all
// receive DOF go to cancelation: (1, N - 1).
struct DesignChoice {
    std::size_t k = 1;
    std::size_t m = 0;
};
DesignChoice optimal_design(std::size_t N, double alpha, Mode mode,
                            const SystemParams& env = SystemParams{});

} // namespace txcap
