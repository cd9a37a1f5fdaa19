// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TXCAP_CHANNEL_HPP
#define TXCAP_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include <armadillo>

#include "txcap/rng.hpp"

namespace txcap {

// i.i.d. CN(0,1) matrix: real and imaginary parts independent N(0, 1/2),
// E|h|^2 = 1. Entries are drawn in column-major order (the storage order),
// which pins the draw sequence for reproducibility.
arma::cx_mat sample_complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

// Full SVD of a channel plus the rank-k views used by multi-mode beamforming.
// H = U * diag(sv) * V^H exactly (up to numerical residual); eigenvalues are
// the descending spectrum of H H^H, zero-padded to the row count.
struct ChannelDecomposition {
    arma::cx_mat U; // rows x min(rows,cols), orthonormal columns
    arma::vec sv;   // singular values, descending
    arma::cx_mat V; // cols x min(rows,cols), orthonormal columns
    std::size_t k = 0;
    arma::vec eigenvalues; // gamma_1 >= ... >= gamma_rows >= 0 of H H^H

    arma::cx_mat U_k() const { return U.cols(0, k - 1); }
    arma::mat D_k() const { return arma::diagmat(sv.subvec(0, k - 1)); }
    arma::cx_mat V_k() const { return V.cols(0, k - 1); }
};

// Decomposes H keeping k stream directions. Throws std::invalid_argument when
// k is out of range.
ChannelDecomposition decompose(const arma::cx_mat& H, std::size_t k);

// Orthonormal basis, as matrix COLUMNS, of a subspace orthogonal (in the
// Hermitian inner product) to every column of `blockers`; `blockers` may have
// zero columns. Returns dim columns taken deterministically from the full
// orthogonal complement. Throws when rank(blockers) > n_rows - dim.
arma::cx_mat null_space_cols(const arma::cx_mat& blockers, std::size_t n_rows,
                             std::size_t dim);

// Same subspace presented as orthonormal ROWS S (out_rows x N) with
// S * blocker = 0 for every blocker column; this is the receiver-side
// projection basis. Blockers are passed as a list of length-N vectors.
arma::cx_mat null_space_basis(const std::vector<arma::cx_vec>& blockers,
                              std::size_t n, std::size_t out_rows);

// Monte Carlo moments of the k-th descending eigenvalue of H H^H for square
// N x N i.i.d. CN(0,1) H.
struct EigenMoments {
    std::size_t N = 0;
    std::size_t k = 0;
    double mean_gamma_k = 0.0;
    double mean_inv_gamma_k = 0.0;
    std::size_t samples = 0;
    double ci_gamma = 0.0;     // 95% half width
    double ci_inv_gamma = 0.0; // 95% half width
};

// Estimates E{gamma_k} and (optionally) E{1/gamma_k} over `samples` draws.
//
// The reciprocal moment of the SMALLEST eigenvalue diverges: for square
// complex Wishart matrices P(gamma_N > x) = exp(-N x), so E{1/gamma_N} is
// infinite for every N (the N = 1 exponential case included). Requesting the
// inverse moment with k == N is therefore rejected; pass
// include_inverse = false to retrieve the plain mean alone, in which case
// mean_inv_gamma_k is left NaN.
EigenMoments wishart_eigen_moments(std::size_t N, std::size_t k, std::size_t samples,
                                   Rng& rng, bool include_inverse = true);

} // namespace txcap

#endif
