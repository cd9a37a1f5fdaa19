// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TXCAP_GEOMETRY_HPP
#define TXCAP_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "txcap/rng.hpp"

namespace txcap {

// One realization of the interferer field: a Poisson number of transmitters
// dropped uniformly on a disk centered at the typical receiver, reduced to
// their sorted distances (only distances enter the SIR).
struct PointProcessSample {
    double intensity = 0.0;            // transmitters per unit area
    double disk_radius = 0.0;          // meters
    std::vector<double> distances;     // ascending, each in (0, disk_radius]
    std::size_t count = 0;             // == distances.size()
};

// Disk radius such that the expected node count on the disk matches
// mean_nodes: sqrt(mean_nodes / (pi * intensity)). Throws std::invalid_argument
// on non-positive inputs.
double disk_radius(double intensity, double mean_nodes);

// Samples one PointProcessSample. The draw sequence is fixed: one Poisson
// count (driven by mean_nodes only), then one uniform per point. Distances are
// disk_radius * sqrt(u), so for a fixed seed the whole field scales exactly as
// intensity^(-1/2) when the intensity changes; common-random-number sweeps
// over the intensity are therefore monotone realization by realization.
PointProcessSample sample_interferers(double intensity, double mean_nodes, Rng& rng);

} // namespace txcap

#endif
