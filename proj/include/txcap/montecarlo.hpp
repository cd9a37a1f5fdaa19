// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "txcap/params.hpp"

namespace txcap {

struct OutageEstimate {
    double p_hat = 0.0;
    double ci95_half_width = 0.0;
    std::size_t trials = 0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> per_stream_p; // one entry per stream
};

// How a trial turns randomness into SIR samples.
//   Explicit   - materialize every channel matrix and run the full receiver.
//   Sufficient - same joint law, but non-canceled interferers enter through
//                the exact Gaussian of their combined coefficients (a k x k
//                Cholesky factor) instead of an N x k matrix each.
//   Fast       - per-stream marginal law only (gamma/Haar identities).
//   Auto       - Sufficient, except CMSIR which needs Explicit.
enum class SimPath { Auto, Explicit, Sufficient, Fast };

struct SimOptions {
    double mean_nodes = 200.0;   // Poisson mean inside the sampling disk
    std::size_t workers = 0;     // 0 = hardware concurrency
    SimPath path = SimPath::Auto;
    std::size_t window = 0;      // CMSIR search window; 0 = floor(m/k) + 4
    std::size_t subset_limit = 5000;
};

// Estimate the outage probability at intensity lambda. Trial t draws all of
// its randomness from a sub-stream derived from (seed, t), so the result is
// independent of execution order and worker count. The outage stream is 1
// without transmit CSI and k (the weakest beam) with it; per_stream_p records
// every stream.
OutageEstimate estimate_outage(const SystemParams& p, double lambda,
                               std::size_t trials, std::uint64_t seed,
                               const SimOptions& opts = {});

struct TcResult {
    double lambda_star = 0.0;
    double capacity = 0.0; // k * lambda_star * (1 - epsilon) * R
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t iterations = 0; // bisection steps
    std::size_t evals = 0;      // total outage evaluations
    double achieved_pout = 0.0; // re-estimated at lambda_star, trials_final
    double achieved_ci = 0.0;
    std::uint64_t seed = 0;
};

struct TcOptions {
    std::size_t trials_final = 100000;
    SimOptions sim;
};

// Largest intensity with outage <= epsilon: geometric bracket expansion (x4,
// at most 20 steps) followed by bisection on log(lambda) until the bracket
// ratio falls below 1 + tol_rel. Every evaluation reuses the same master
// seed (common random numbers), which makes the empirical outage a
// nondecreasing step function of lambda, so the bisection is well posed.
// Throws a runtime error when no bracket exists in the searched range.
TcResult find_lambda_star(const SystemParams& p, double epsilon,
                          std::size_t trials, double tol_rel, std::uint64_t seed,
                          const TcOptions& topts = {});

// One requested experiment in a sweep. With `find_tc` set the row searches
// for lambda* and reports capacity; otherwise `lambda` must be given and the
// row estimates outage at that intensity.
struct SweepPoint {
    SystemParams params;
    std::optional<double> lambda;
    bool find_tc = false;
    std::size_t trials = 20000;
    std::size_t trials_final = 100000;
    double tol_rel = 0.02;
    std::uint64_t seed = 1;
};

// One result row, mirroring the CSV schema. NaN fields serialize as empty.
struct SweepRow {
    std::string mode;
    std::size_t N = 0, k = 0, m = 0;
    double alpha = 0, beta = 0, d = 0, epsilon = 0;
    double lambda = 0; // absolute intensity used (lambda* for find_tc rows)
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double pout_hat, ci95, pout_lb, pout_ub; // NaN when unavailable
    bool valid = false;                      // bounds validity flag
    double tc, tc_lb, tc_ub;                 // NaN when unavailable
    std::string error;                       // empty on success
};

// Run every point in order; failures land in the row's `error` column and do
// not stop the sweep. When output_path is non-empty the rows are also written
// there as CSV. Rows are fully deterministic given the per-point seeds.
std::vector<SweepRow> sweep(const std::vector<SweepPoint>& points,
                            const std::string& output_path = {},
                            const SimOptions& opts = {});

// CSV serialization shared by the sweep and the CLI.
std::string sweep_csv_header();
std::string sweep_row_csv(const SweepRow& row);

} // namespace txcap
