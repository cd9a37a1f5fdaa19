// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Receive-side processing for one network-and-channel realization.
//
// Conventions. The receiver applies a row vector to the received signal, so
// signal and interference coefficients are BILINEAR products q^T x (plain
// transpose, no conjugation), matching the combiner output q^T y. The ZF
// vectors returned here are therefore orthogonal to the canceled directions
// in the bilinear sense: q^T h_blocked = 0. Circular symmetry makes the two
// conventions statistically identical; fixing one keeps all residual tests
// exact.

#ifndef TXCAP_RECEIVER_HPP
#define TXCAP_RECEIVER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <armadillo>

#include "txcap/channel.hpp"
#include "txcap/geometry.hpp"
#include "txcap/params.hpp"
#include "txcap/rng.hpp"

namespace txcap {

// Channel draws for one realization, index-aligned with the sorted distances
// of a PointProcessSample.
//
// H00 is the typical link's effective N x k channel. In CSIT mode it already
// includes the own precoder V_k (H00 = H * V_k) and own_decomposition carries
// the full SVD of the raw N x N channel. Interferer matrices are the
// effective N x k blocks seen by the typical receiver; in CSIT mode the
// interferer's precoder is already absorbed (an i.i.d. CN(0,1) channel right-
// multiplied by an independent isometry is again i.i.d. CN(0,1), exactly).
struct ChannelSet {
    arma::cx_mat H00;
    std::vector<arma::cx_mat> interferer_channels;
    std::optional<ChannelDecomposition> own_decomposition;
};

// Draws a ChannelSet for `n_interferers` interferers. Draw order: own channel
// first, then interferers in distance order. With materialize_precoders set
// (CSIT mode only), each interferer's own N x N channel is drawn and its V_k
// applied explicitly instead of sampling the effective block directly; the
// two constructions have identical law and the flag exists so tests can
// verify that.
ChannelSet sample_channel_set(const SystemParams& p, std::size_t n_interferers,
                              Rng& rng, bool materialize_precoders = false);

// Per-stream SIR values for one realization.
struct SirSample {
    std::vector<double> per_stream_sir;              // length k, possibly +inf
    std::vector<std::size_t> canceled_set;           // size min(c, count)
    // CMSIR only: the per-stream subsets (canceled_set mirrors stream 1).
    std::vector<std::vector<std::size_t>> per_stream_canceled;
};

// Partial ZF combiners against the nearest canceled interferers.
// q_l has unit norm, is orthogonal (bilinear, <= 1e-10) to the other k-1
// columns of H00 and to all k columns of each of the min(c, available)
// nearest interferers, and maximizes |q^T H00(l)| within that null space.
// Throws when k*c + k - 1 > N - 1 (not enough receive dimensions).
std::vector<arma::cx_vec> zf_vectors_nearest(
    const arma::cx_mat& H00, const std::vector<arma::cx_mat>& interferers,
    const SystemParams& p);

// SIR with the c = floor(m/k) nearest interferers canceled:
//   SIR_l = d^-alpha |q_l^T H00(l)|^2 /
//           sum_{non-canceled n} d_n^-alpha sum_j |q_l^T H0n(j)|^2 .
// All interferers canceled => +inf.
SirSample sir_no_csit_nearest(const SystemParams& p, const PointProcessSample& ppp,
                              const ChannelSet& channels);

// Constrained max-SIR cancelation: per stream, searches subsets of size c
// drawn from the `window` nearest interferers (window = 0 selects the default
// c + 4), evaluating the full out-of-subset interference each time.
// Exhaustive when C(window, c) <= subset_limit, otherwise greedy
// best-single-swap from the nearest-c set. The nearest-c subset is always a
// candidate, so the result dominates sir_no_csit_nearest stream by stream.
// Ties prefer the lexicographically smallest subset. Throws when an explicit
// window is smaller than c.
SirSample sir_cmsir(const SystemParams& p, const PointProcessSample& ppp,
                    const ChannelSet& channels, std::size_t window = 0,
                    std::size_t subset_limit = 5000);

// Multi-mode beamforming with cancelation of the floor(N/k)-1 nearest
// interferers:
//   SIR_l = d^-alpha gamma_l / sum_{non-canceled n} d_n^-alpha mu_n^l,
// where the receiver is W = (S0 U_k)^-1 S0 for an orthonormal S0 in the null
// space of the canceled effective blocks, chosen so that own-stream cross
// talk cancels exactly: W U_k D_k = D_k.
SirSample sir_csit_bf(const SystemParams& p, const PointProcessSample& ppp,
                      const ChannelSet& channels);

// Diagnostic byproducts of the CSIT chain, for distributional tests.
// mu(l, j) is the j-th non-canceled interferer's coefficient under the
// row-normalized receiver (rows of W scaled to unit norm); scaling rows
// leaves every SIR unchanged because the signal picks up the matching factor
// g_l = 1 / ||w_l||^2, and makes mu's marginal law pinned (mean k).
struct CsitBfDetail {
    SirSample sir;
    arma::vec gammas;           // gamma_1 >= ... >= gamma_k
    arma::vec g;                // per-stream signal factors, each in (0, 1]
    arma::mat mu;               // k x (#non-canceled)
    double cross_talk_residual; // ||W U_k D_k - D_k||_F / ||D_k||_F, literal W
};
CsitBfDetail sir_csit_bf_detail(const SystemParams& p, const PointProcessSample& ppp,
                                const ChannelSet& channels);

// Distribution-level shortcut: draws per-stream SIR directly from the same
// marginal law as the full-matrix chain (nearest-cancelation modes only;
// CMSIR couples channels to geometry and is rejected). Orders of magnitude
// faster; statistical equivalence is pinned by KS tests.
SirSample fast_sir(const SystemParams& p, const PointProcessSample& ppp, Rng& rng);

} // namespace txcap

#endif
