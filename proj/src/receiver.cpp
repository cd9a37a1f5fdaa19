// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the txcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "txcap/receiver.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace txcap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::NoCsitNearest: return "no-csit";
        case Mode::NoCsitCmsir: return "cmsir";
        case Mode::CsitBfNearest: return "csit";
    }
    return "?";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "no-csit")
        return Mode::NoCsitNearest;
    if (name == "cmsir")
        return Mode::NoCsitCmsir;
    if (name == "csit")
        return Mode::CsitBfNearest;
    return std::nullopt;
}

std::size_t cancelable_count(const SystemParams& p) {
    if (p.mode == Mode::CsitBfNearest)
        return p.N / p.k - 1;
    return p.m / p.k;
}

void validate(const SystemParams& p, bool check_epsilon) {
    if (p.N < 1)
        throw std::invalid_argument("params: N must be >= 1");
    if (p.k < 1 || p.k > p.N)
        throw std::invalid_argument("params: k must be in 1..N");
    if (!(p.alpha > 2.0))
        throw std::invalid_argument("params: alpha must be > 2");
    if (p.mode != Mode::CsitBfNearest && p.m > p.N - p.k)
        throw std::invalid_argument("params: m must be <= N - k");
    if (!(p.beta >= 0.0))
        throw std::invalid_argument("params: beta must be >= 0");
    if (!(p.d > 0.0))
        throw std::invalid_argument("params: d must be > 0");
    if (!(p.R > 0.0))
        throw std::invalid_argument("params: R must be > 0");
    if (check_epsilon && !(p.epsilon > 0.0 && p.epsilon < 1.0))
        throw std::invalid_argument("params: epsilon must be in (0,1)");
}

ChannelSet sample_channel_set(const SystemParams& p, std::size_t n_interferers,
                              Rng& rng, bool materialize_precoders) {
    validate(p);
    ChannelSet cs;
    cs.interferer_channels.reserve(n_interferers);
    if (p.mode == Mode::CsitBfNearest) {
        const arma::cx_mat Hown = sample_complex_gaussian(p.N, p.N, rng);
        cs.own_decomposition = decompose(Hown, p.k);
        cs.H00 = Hown * cs.own_decomposition->V_k();
        for (std::size_t n = 0; n < n_interferers; ++n) {
            if (materialize_precoders) {
                const arma::cx_mat H0n = sample_complex_gaussian(p.N, p.N, rng);
                const arma::cx_mat Hnn = sample_complex_gaussian(p.N, p.N, rng);
                cs.interferer_channels.push_back(H0n * decompose(Hnn, p.k).V_k());
            } else {
                cs.interferer_channels.push_back(sample_complex_gaussian(p.N, p.k, rng));
            }
        }
    } else {
        cs.H00 = sample_complex_gaussian(p.N, p.k, rng);
        for (std::size_t n = 0; n < n_interferers; ++n)
            cs.interferer_channels.push_back(sample_complex_gaussian(p.N, p.k, rng));
    }
    return cs;
}

namespace {

// One partial ZF combiner: unit vector maximizing |q^T H00(l)| subject to
// q^T x = 0 for the other own columns and every column of icols. Assumes the
// blocker set is full rank (true almost surely for continuous inputs).
arma::cx_vec zf_one(const arma::cx_mat& H00, std::size_t l, const arma::cx_mat& icols) {
    const std::size_t N = H00.n_rows;
    const std::size_t k = H00.n_cols;
    const std::size_t nb = (k - 1) + icols.n_cols;
    if (nb > N - 1)
        throw std::invalid_argument(
            "zf_vectors: cancelation demands exceed the receive dimensions");

    const arma::cx_vec h = H00.col(l);
    arma::cx_vec v;
    if (nb == 0) {
        v = h; // matched filter
    } else {
        arma::cx_mat B(N, nb);
        std::size_t col = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != l)
                B.col(col++) = H00.col(j);
        if (icols.n_cols > 0)
            B.cols(col, nb - 1) = icols;
        arma::cx_mat Q, Rr;
        arma::qr_econ(Q, Rr, B);
        v = h - Q * (Q.t() * h);
    }
    const double nv = arma::norm(v);
    if (!(nv > 1e-12 * arma::norm(h)))
        throw std::runtime_error("zf_vectors: degenerate projection");
    // conj() converts the Hermitian-orthogonal residual into a bilinear
    // zero: q^T b = conj(v)^T b = conj(v^H b) = 0.
    return arma::cx_vec(arma::conj(v) / nv);
}

arma::cx_mat stack_blocks(const std::vector<arma::cx_mat>& channels,
                          const std::vector<std::size_t>& which, std::size_t N,
                          std::size_t k) {
    arma::cx_mat out(N, k * which.size());
    for (std::size_t j = 0; j < which.size(); ++j)
        out.cols(j * k, j * k + k - 1) = channels[which[j]];
    return out;
}

arma::cx_mat stack_all(const std::vector<arma::cx_mat>& channels, std::size_t N,
                       std::size_t k) {
    arma::cx_mat out(N, k * channels.size());
    for (std::size_t n = 0; n < channels.size(); ++n)
        out.cols(n * k, n * k + k - 1) = channels[n];
    return out;
}

arma::vec path_gains(const std::vector<double>& distances, double alpha) {
    arma::vec g(distances.size());
    for (std::size_t n = 0; n < distances.size(); ++n)
        g(n) = std::pow(distances[n], -alpha);
    return g;
}

// Aggregate interference per stream from the coefficient matrix
// C = row_op * [H_1 | H_2 | ...]: I_l = sum over non-canceled n of
// gains(n) * sum_j |C(l, n*k + j)|^2. `canceled` must be sorted ascending.
arma::vec interference_from_coeffs(const arma::cx_mat& C, const arma::vec& gains,
                                   std::size_t k,
                                   const std::vector<std::size_t>& canceled) {
    const std::size_t rows = C.n_rows;
    const std::size_t count = gains.n_elem;
    arma::vec I(rows, arma::fill::zeros);
    std::size_t ci = 0;
    for (std::size_t n = 0; n < count; ++n) {
        if (ci < canceled.size() && canceled[ci] == n) {
            ++ci;
            continue;
        }
        const double dn = gains(n);
        for (std::size_t j = 0; j < k; ++j) {
            const std::complex<double>* col = C.colptr(n * k + j);
            for (std::size_t l = 0; l < rows; ++l)
                I(l) += dn * std::norm(col[l]);
        }
    }
    return I;
}

double signal_power(const arma::cx_vec& q, const arma::cx_vec& h) {
    return std::norm(arma::accu(q % h)); // |q^T h|^2
}

void check_channel_set(const SystemParams& p, const PointProcessSample& ppp,
                       const ChannelSet& cs) {
    if (cs.interferer_channels.size() != ppp.count)
        throw std::invalid_argument(
            "channel set is not index-aligned with the point process sample");
    if (cs.H00.n_rows != p.N || cs.H00.n_cols != p.k)
        throw std::invalid_argument("channel set H00 has the wrong shape");
}

std::vector<std::size_t> iota_vec(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

} // namespace

std::vector<arma::cx_vec> zf_vectors_nearest(
    const arma::cx_mat& H00, const std::vector<arma::cx_mat>& interferers,
    const SystemParams& p) {
    if (p.mode == Mode::CsitBfNearest)
        throw std::invalid_argument("zf_vectors_nearest: CSIT mode uses sir_csit_bf");
    if (H00.n_rows != p.N || H00.n_cols != p.k)
        throw std::invalid_argument("zf_vectors_nearest: H00 has the wrong shape");

    const std::size_t ccount = std::min(cancelable_count(p), interferers.size());
    const arma::cx_mat icols = stack_blocks(interferers, iota_vec(ccount), p.N, p.k);

    std::vector<arma::cx_vec> qs;
    qs.reserve(p.k);
    for (std::size_t l = 0; l < p.k; ++l)
        qs.push_back(zf_one(H00, l, icols));
    return qs;
}

SirSample sir_no_csit_nearest(const SystemParams& p, const PointProcessSample& ppp,
                              const ChannelSet& cs) {
    if (p.mode != Mode::NoCsitNearest)
        throw std::invalid_argument("sir_no_csit_nearest: wrong mode");
    check_channel_set(p, ppp, cs);

    const auto qs = zf_vectors_nearest(cs.H00, cs.interferer_channels, p);
    const std::size_t ccount = std::min(cancelable_count(p), ppp.count);

    SirSample out;
    out.canceled_set = iota_vec(ccount);

    arma::cx_mat rows(p.k, p.N);
    for (std::size_t l = 0; l < p.k; ++l)
        rows.row(l) = arma::strans(qs[l]);
    const arma::cx_mat Hstack = stack_all(cs.interferer_channels, p.N, p.k);
    const arma::vec gains = path_gains(ppp.distances, p.alpha);
    const arma::cx_mat C = rows * Hstack;
    const arma::vec I = interference_from_coeffs(C, gains, p.k, out.canceled_set);

    const double da = std::pow(p.d, -p.alpha);
    out.per_stream_sir.resize(p.k);
    for (std::size_t l = 0; l < p.k; ++l) {
        const double s = signal_power(qs[l], cs.H00.col(l));
        out.per_stream_sir[l] = I(l) > 0.0 ? da * s / I(l) : kInf;
    }
    return out;
}

namespace {

// Number of c-subsets of a w-set, saturating at cap + 1.
std::size_t binom_capped(std::size_t w, std::size_t c, std::size_t cap) {
    if (c > w)
        return 0;
    c = std::min(c, w - c);
    unsigned long long acc = 1;
    for (std::size_t i = 1; i <= c; ++i) {
        // Exact at every step: the prefix product is itself a binomial.
        acc = acc * (w - c + i) / i;
        if (acc > cap)
            return cap + 1;
    }
    return static_cast<std::size_t>(acc);
}

// Lexicographic enumeration of size-c subsets of {0..w-1}.
template <typename F>
void for_each_subset(std::size_t w, std::size_t c, F&& f) {
    if (c > w)
        return;
    std::vector<std::size_t> idx(c);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
        f(idx);
        std::size_t i = c;
        while (i > 0 && idx[i - 1] == w - c + (i - 1))
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < c; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

struct CmsirEval {
    double sir;
    std::vector<std::size_t> subset;
};

double cmsir_sir_one(const SystemParams& p, const ChannelSet& cs,
                     const arma::cx_mat& Hstack, const arma::vec& gains,
                     std::size_t l, const std::vector<std::size_t>& subset) {
    const arma::cx_mat icols = stack_blocks(cs.interferer_channels, subset, p.N, p.k);
    const arma::cx_vec q = zf_one(cs.H00, l, icols);
    const arma::cx_mat C = arma::strans(q) * Hstack; // 1 x k*count
    const double I = interference_from_coeffs(C, gains, p.k, subset)(0);
    const double s = signal_power(q, cs.H00.col(l));
    return I > 0.0 ? std::pow(p.d, -p.alpha) * s / I : kInf;
}

} // namespace

SirSample sir_cmsir(const SystemParams& p, const PointProcessSample& ppp,
                    const ChannelSet& cs, std::size_t window,
                    std::size_t subset_limit) {
    if (p.mode != Mode::NoCsitCmsir)
        throw std::invalid_argument("sir_cmsir: wrong mode");
    check_channel_set(p, ppp, cs);

    const std::size_t c = cancelable_count(p);
    if (window == 0)
        window = c + 4;
    if (window < c)
        throw std::invalid_argument("sir_cmsir: window must be >= floor(m/k)");

    SirSample out;
    if (ppp.count <= c) {
        // Everything cancelable: unique subset, no interference left.
        out.canceled_set = iota_vec(ppp.count);
        out.per_stream_sir.assign(p.k, kInf);
        out.per_stream_canceled.assign(p.k, out.canceled_set);
        return out;
    }

    const std::size_t w = std::min(window, ppp.count);
    const bool exhaustive = binom_capped(w, c, subset_limit) <= subset_limit;

    const arma::cx_mat Hstack = stack_all(cs.interferer_channels, p.N, p.k);
    const arma::vec gains = path_gains(ppp.distances, p.alpha);

    out.per_stream_sir.resize(p.k);
    out.per_stream_canceled.resize(p.k);

    for (std::size_t l = 0; l < p.k; ++l) {
        CmsirEval best{-1.0, {}};
        if (exhaustive) {
            for_each_subset(w, c, [&](const std::vector<std::size_t>& s) {
                const double sir = cmsir_sir_one(p, cs, Hstack, gains, l, s);
                // Lexicographic enumeration + strict improvement = ties keep
                // the lexicographically smallest subset.
                if (sir > best.sir) {
                    best.sir = sir;
                    best.subset = s;
                }
            });
        } else {
            // Greedy best-single-swap from the nearest-c set. Only strictly
            // improving moves are accepted, so the loop terminates; within a
            // sweep, equal-SIR improvements prefer the lexicographically
            // smaller subset.
            std::vector<std::size_t> cur = iota_vec(c);
            best = {cmsir_sir_one(p, cs, Hstack, gains, l, cur), cur};
            for (;;) {
                CmsirEval sweep = best;
                std::vector<bool> in_cur(w, false);
                for (std::size_t i : best.subset)
                    in_cur[i] = true;
                for (std::size_t drop = 0; drop < c; ++drop) {
                    for (std::size_t add = 0; add < w; ++add) {
                        if (in_cur[add])
                            continue;
                        std::vector<std::size_t> cand = best.subset;
                        cand[drop] = add;
                        std::sort(cand.begin(), cand.end());
                        const double sir = cmsir_sir_one(p, cs, Hstack, gains, l, cand);
                        if (sir > sweep.sir ||
                            (sir == sweep.sir && sweep.subset != best.subset &&
                             cand < sweep.subset)) {
                            sweep = {sir, cand};
                        }
                    }
                }
                if (sweep.sir > best.sir)
                    best = sweep;
                else
                    break;
            }
        }
        out.per_stream_sir[l] = best.sir;
        out.per_stream_canceled[l] = best.subset;
    }
    out.canceled_set = out.per_stream_canceled[0];
    return out;
}

CsitBfDetail sir_csit_bf_detail(const SystemParams& p, const PointProcessSample& ppp,
                                const ChannelSet& cs) {
    if (p.mode != Mode::CsitBfNearest)
        throw std::invalid_argument("sir_csit_bf: wrong mode");
    check_channel_set(p, ppp, cs);
    if (!cs.own_decomposition)
        throw std::invalid_argument("sir_csit_bf: missing own-channel decomposition");

    const std::size_t c = cancelable_count(p);
    const std::size_t ccount = std::min(c, ppp.count);
    const std::size_t nu = p.N - p.k * ccount;

    const arma::cx_mat Uk = cs.own_decomposition->U_k();
    const arma::mat Dk = cs.own_decomposition->D_k();

    // Orthonormal basis of the null space of the canceled effective blocks.
    const arma::cx_mat B =
        stack_blocks(cs.interferer_channels, iota_vec(ccount), p.N, p.k);
    const arma::cx_mat Nb = null_space_cols(B, p.N, nu);

    // S0 = orthonormalized projection of the beam directions onto the null
    // space, phase-fixed so that A = S0 U_k is the QR R-factor with a real
    // positive diagonal; the receiver W = A^-1 S0 is one triangular solve.
    const arma::cx_mat M = Nb.t() * Uk; // nu x k
    arma::cx_mat Qm, A;
    arma::qr_econ(Qm, A, M);
    for (std::size_t j = 0; j < p.k; ++j) {
        const std::complex<double> rjj = A(j, j);
        const double mag = std::abs(rjj);
        if (!(mag > 1e-14))
            throw std::runtime_error("sir_csit_bf: degenerate beam projection");
        const std::complex<double> ph = rjj / mag;
        Qm.col(j) *= ph;
        A.row(j) *= std::conj(ph);
    }
    const arma::cx_mat S0 = arma::cx_mat(Nb * Qm).t(); // k x N
    const arma::cx_mat W = arma::solve(arma::trimatu(A), S0);

    CsitBfDetail det;
    const arma::cx_mat DkC(Dk, arma::mat(p.k, p.k, arma::fill::zeros));
    det.cross_talk_residual =
        arma::norm(W * Uk * DkC - DkC, "fro") / arma::norm(Dk, "fro");
    det.gammas = cs.own_decomposition->eigenvalues.subvec(0, p.k - 1);

    const arma::vec w2 = arma::sum(arma::square(arma::abs(W)), 1); // ||w_l||^2
    det.g = 1.0 / w2;

    // Interference under the literal receiver. The row-normalized mu used in
    // distributional tests rescales row l by g_l; the signal picks up the
    // same factor, so the SIR is unchanged (checked to 1e-12 in tests).
    const arma::cx_mat Hstack = stack_all(cs.interferer_channels, p.N, p.k);
    const arma::vec gains = path_gains(ppp.distances, p.alpha);
    const arma::cx_mat C = W * Hstack;
    det.sir.canceled_set = iota_vec(ccount);
    const arma::vec I =
        interference_from_coeffs(C, gains, p.k, det.sir.canceled_set);

    const std::size_t m_int = ppp.count - ccount;
    det.mu.set_size(p.k, m_int);
    for (std::size_t j = 0; j < m_int; ++j) {
        const std::size_t n = ccount + j;
        arma::vec mu_lit(p.k, arma::fill::zeros);
        for (std::size_t jj = 0; jj < p.k; ++jj) {
            const std::complex<double>* col = C.colptr(n * p.k + jj);
            for (std::size_t l = 0; l < p.k; ++l)
                mu_lit(l) += std::norm(col[l]);
        }
        det.mu.col(j) = mu_lit % det.g; // normalized-receiver coefficients
    }

    const double da = std::pow(p.d, -p.alpha);
    det.sir.per_stream_sir.resize(p.k);
    for (std::size_t l = 0; l < p.k; ++l)
        det.sir.per_stream_sir[l] = I(l) > 0.0 ? da * det.gammas(l) / I(l) : kInf;
    return det;
}

SirSample sir_csit_bf(const SystemParams& p, const PointProcessSample& ppp,
                      const ChannelSet& cs) {
    return sir_csit_bf_detail(p, ppp, cs).sir;
}

SirSample fast_sir(const SystemParams& p, const PointProcessSample& ppp, Rng& rng) {
    validate(p);
    if (p.mode == Mode::NoCsitCmsir)
        throw std::invalid_argument(
            "fast_sir: CMSIR couples channels to geometry; use the full path");

    const double da = std::pow(p.d, -p.alpha);
    SirSample out;

    if (p.mode == Mode::NoCsitNearest) {
        const std::size_t ccount = std::min(cancelable_count(p), ppp.count);
        out.canceled_set = iota_vec(ccount);
        // Signal DOF per the floor convention: N - k*floor(m/k) - k + 1,
        // enlarged when the realization has fewer interferers than the
        // cancelation budget.
        const double dof = static_cast<double>(p.N - p.k * ccount - p.k + 1);
        arma::vec s(p.k);
        for (std::size_t l = 0; l < p.k; ++l)
            s(l) = rng.gamma(dof);
        arma::vec I(p.k, arma::fill::zeros);
        const double kk = static_cast<double>(p.k);
        for (std::size_t n = ccount; n < ppp.count; ++n) {
            const double dn = std::pow(ppp.distances[n], -p.alpha);
            for (std::size_t l = 0; l < p.k; ++l)
                I(l) += dn * rng.gamma(kk);
        }
        out.per_stream_sir.resize(p.k);
        for (std::size_t l = 0; l < p.k; ++l)
            out.per_stream_sir[l] = I(l) > 0.0 ? da * s(l) / I(l) : kInf;
        return out;
    }

    // CSIT: gamma from a fresh Wishart spectrum; signal deflation factors g_l
    // from the corner of a Haar frame (the law of the projection chain);
    // interference coefficients are Gamma(k,1) per interferer and stream.
    const std::size_t ccount = std::min(cancelable_count(p), ppp.count);
    const std::size_t nu = p.N - p.k * ccount;
    out.canceled_set = iota_vec(ccount);

    const arma::cx_mat H = sample_complex_gaussian(p.N, p.N, rng);
    arma::vec sv;
    if (!arma::svd(sv, H))
        throw std::runtime_error("fast_sir: SVD failed");

    arma::cx_mat G = sample_complex_gaussian(p.N, p.k, rng);
    arma::cx_mat Qh, Rh;
    arma::qr_econ(Qh, Rh, G); // Haar N x k frame (column phases immaterial)
    const arma::cx_mat M = Qh.rows(0, nu - 1);
    arma::cx_mat Qm, A;
    arma::qr_econ(Qm, A, M);
    // g_l = 1 / [(A^H A)^-1]_ll = 1 / ||row l of A^-1||^2.
    const arma::cx_mat Ainv =
        arma::solve(arma::trimatu(A), arma::eye<arma::cx_mat>(p.k, p.k));
    const arma::vec ginv = arma::sum(arma::square(arma::abs(Ainv)), 1);

    arma::vec I(p.k, arma::fill::zeros);
    const double kk = static_cast<double>(p.k);
    for (std::size_t n = ccount; n < ppp.count; ++n) {
        const double dn = std::pow(ppp.distances[n], -p.alpha);
        for (std::size_t l = 0; l < p.k; ++l)
            I(l) += dn * rng.gamma(kk);
    }
    out.per_stream_sir.resize(p.k);
    for (std::size_t l = 0; l < p.k; ++l) {
        const double gamma_l = sv(l) * sv(l);
        const double g_l = 1.0 / ginv(l);
        out.per_stream_sir[l] = I(l) > 0.0 ? da * gamma_l * g_l / I(l) : kInf;
    }
    return out;
}

} // namespace txcap
