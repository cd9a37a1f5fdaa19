// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "txcap/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace txcap {

arma::cx_mat sample_complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("sample_complex_gaussian: dimensions must be >= 1");
    arma::cx_mat out(rows, cols);
    std::complex<double>* p = out.memptr();
    const std::size_t n = rows * cols;
    for (std::size_t i = 0; i < n; ++i)
        p[i] = rng.cgaussian();
    return out;
}

ChannelDecomposition decompose(const arma::cx_mat& H, std::size_t k) {
    const std::size_t r = std::min(H.n_rows, H.n_cols);
    if (k < 1 || k > r)
        throw std::invalid_argument("decompose: k must be in 1..min(rows, cols)");

    ChannelDecomposition d;
    d.k = k;
    if (!arma::svd(d.U, d.sv, d.V, H, "std"))
        throw std::runtime_error("decompose: SVD failed to converge");

    d.eigenvalues.zeros(H.n_rows);
    for (std::size_t i = 0; i < r; ++i)
        d.eigenvalues(i) = d.sv(i) * d.sv(i);
    return d;
}

arma::cx_mat null_space_cols(const arma::cx_mat& blockers, std::size_t n_rows,
                             std::size_t dim) {
    if (dim < 1 || dim > n_rows)
        throw std::invalid_argument("null_space_cols: dim must be in 1..n_rows");
    if (blockers.n_cols == 0)
        return arma::cx_mat(arma::eye<arma::cx_mat>(n_rows, dim));
    if (blockers.n_rows != n_rows)
        throw std::invalid_argument("null_space_cols: blocker row count mismatch");

    // Rank via singular values with a relative threshold; random continuous
    // blockers are full rank almost surely, the threshold only guards
    // hand-crafted degenerate inputs.
    arma::cx_mat U;
    arma::vec sv;
    arma::cx_mat V;
    if (!arma::svd(U, sv, V, blockers, "std"))
        throw std::runtime_error("null_space_cols: SVD failed to converge");
    std::size_t rank = 0;
    const double tol = 1e-10 * (sv.n_elem ? sv(0) : 0.0);
    for (std::size_t i = 0; i < sv.n_elem; ++i)
        if (sv(i) > tol)
            ++rank;

    if (rank > n_rows - dim)
        throw std::invalid_argument(
            "null_space_cols: blockers leave fewer than the requested dimensions "
            "(cancelation demands exceed the antenna count)");

    // Columns rank..n_rows-1 of the full U span the orthogonal complement of
    // the blocker range; take the first `dim` of them (unique when the
    // complement has exactly `dim` dimensions, deterministic otherwise).
    return U.cols(rank, rank + dim - 1);
}

arma::cx_mat null_space_basis(const std::vector<arma::cx_vec>& blockers,
                              std::size_t n, std::size_t out_rows) {
    arma::cx_mat B(n, blockers.size());
    for (std::size_t j = 0; j < blockers.size(); ++j) {
        if (blockers[j].n_elem != n)
            throw std::invalid_argument("null_space_basis: blocker length mismatch");
        B.col(j) = blockers[j];
    }
    // Rows are Hermitian transposes of complement basis vectors, so the plain
    // matrix product (row times blocker column) vanishes.
    return null_space_cols(B, n, out_rows).t();
}

EigenMoments wishart_eigen_moments(std::size_t N, std::size_t k, std::size_t samples,
                                   Rng& rng, bool include_inverse) {
    if (N < 1 || k < 1 || k > N)
        throw std::invalid_argument("wishart_eigen_moments: need 1 <= k <= N");
    if (samples < 1000)
        throw std::invalid_argument("wishart_eigen_moments: need samples >= 1000");
    if (include_inverse && k == N)
        throw std::invalid_argument(
            "wishart_eigen_moments: E{1/gamma_k} diverges for k == N "
            "(P(gamma_N > x) = exp(-N x)); request the mean alone");

    // Streaming mean/variance (Welford) for gamma_k and 1/gamma_k.
    double mean_g = 0.0, m2_g = 0.0;
    double mean_i = 0.0, m2_i = 0.0;
    arma::vec sv;
    for (std::size_t t = 0; t < samples; ++t) {
        const arma::cx_mat H = sample_complex_gaussian(N, N, rng);
        if (!arma::svd(sv, H))
            throw std::runtime_error("wishart_eigen_moments: SVD failed");
        const double gk = sv(k - 1) * sv(k - 1);
        const double n1 = static_cast<double>(t + 1);

        const double dg = gk - mean_g;
        mean_g += dg / n1;
        m2_g += dg * (gk - mean_g);

        if (include_inverse) {
            const double ig = 1.0 / gk;
            const double di = ig - mean_i;
            mean_i += di / n1;
            m2_i += di * (ig - mean_i);
        }
    }

    const double n = static_cast<double>(samples);
    EigenMoments out;
    out.N = N;
    out.k = k;
    out.samples = samples;
    out.mean_gamma_k = mean_g;
    out.ci_gamma = 1.96 * std::sqrt(m2_g / (n - 1.0) / n);
    if (include_inverse) {
        out.mean_inv_gamma_k = mean_i;
        out.ci_inv_gamma = 1.96 * std::sqrt(m2_i / (n - 1.0) / n);
    } else {
        out.mean_inv_gamma_k = std::nan("");
        out.ci_inv_gamma = std::nan("");
    }
    return out;
}

} // namespace txcap
