// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "txcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace txcap {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double disk_radius(double intensity, double mean_nodes) {
    if (!(intensity > 0.0))
        throw std::invalid_argument("disk_radius: intensity must be > 0");
    if (!(mean_nodes > 0.0))
        throw std::invalid_argument("disk_radius: mean_nodes must be > 0");
    return std::sqrt(mean_nodes / (kPi * intensity));
}

PointProcessSample sample_interferers(double intensity, double mean_nodes, Rng& rng) {
    const double radius = disk_radius(intensity, mean_nodes);

    PointProcessSample out;
    out.intensity = intensity;
    out.disk_radius = radius;

    const std::uint64_t n = rng.poisson(mean_nodes);
    out.distances.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        // Uniform position on the disk has squared distance uniform in
        // (0, radius^2]; angles never matter for the typical receiver.
        out.distances[i] = radius * std::sqrt(rng.uniform());
    }
    std::sort(out.distances.begin(), out.distances.end());
    out.count = out.distances.size();
    return out;
}

} // namespace txcap
