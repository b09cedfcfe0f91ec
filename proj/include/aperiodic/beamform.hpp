// SPDX-License-Identifier: Apache-2.0
//
// aperiodic-mimo: Monte-Carlo MU-MIMO evaluation and aperiodic array synthesis
// Copyright (C) 2026 The aperiodic-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef APERIODIC_BEAMFORM_HPP
#define APERIODIC_BEAMFORM_HPP

#include "channel.hpp"
#include "errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace aperiodic
{
    inline constexpr double default_condition_limit = 1e12;

    // Linear precoder W (M x K) with power normalization beta = 1 / tr(W W^dagger).
    struct Precoder
    {
        Eigen::MatrixXcd W;
        double beta = 0.0;

        // sqrt(beta) W: excitations for unit-power transmission.
        Eigen::MatrixXcd normalized() const { return std::sqrt(beta) * W; }
    };

    inline double power_normalization(const Eigen::MatrixXcd &W)
    {
        const double tr = W.squaredNorm(); // tr(W W^dagger)
        if (!(tr > 0.0))
            throw InvalidArgument("power_normalization: precoder has zero power");
        return 1.0 / tr;
    }

    namespace detail
    {
        // Condition number of a Hermitian positive semi-definite matrix.
        inline double hermitian_condition(const Eigen::MatrixXcd &A)
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(A, Eigen::EigenvaluesOnly);
            const auto &ev = eig.eigenvalues();
            const double hi = ev.maxCoeff();
            const double lo = ev.minCoeff();
            if (!(lo > 0.0))
                return std::numeric_limits<double>::infinity();
            return hi / lo;
        }

        struct ZfSolution
        {
            Precoder precoder;
            Eigen::MatrixXcd gram_inverse; // (H H^dagger)^{-1}
            double condition = 0.0;
        };

        inline ZfSolution zf_solve(const ChannelMatrix &H, double condition_limit)
        {
            const auto &h = H.entries;
            if (h.rows() < 1 || h.rows() > h.cols())
                throw InvalidArgument("zf_precoder: channel must be K x M with 1 <= K <= M");

            const Eigen::MatrixXcd gram = h * h.adjoint();
            const double cond = hermitian_condition(gram);
            if (!(cond <= condition_limit))
                throw SingularChannel("H H^dagger condition number " + std::to_string(cond) + " exceeds limit", cond);

            // H^dagger = Q R with R the Cholesky factor of H H^dagger, so that
            // W = Q R^{-dagger} and (H H^dagger)^{-1} = R^{-1} R^{-dagger}. Working on
            // H^dagger avoids squaring the condition number of the solve.
            const auto K = h.rows();
            const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(h.adjoint());
            const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(h.cols(), K);
            const Eigen::MatrixXcd R = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();
            const Eigen::MatrixXcd r_inv_adj =
                R.adjoint().triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(K, K));

            ZfSolution out;
            out.gram_inverse = r_inv_adj.adjoint() * r_inv_adj;
            out.precoder.W = Q * r_inv_adj;
            // one step of iterative refinement on the right inverse
            const Eigen::MatrixXcd residual = Eigen::MatrixXcd::Identity(K, K) - h * out.precoder.W;
            out.precoder.W += out.precoder.W * residual;
            out.precoder.beta = power_normalization(out.precoder.W);
            out.condition = cond;
            return out;
        }
    } // namespace detail

    // W = H^dagger (H H^dagger)^{-1}. Throws SingularChannel when cond(H H^dagger)
    // exceeds condition_limit.
    inline Precoder zf_precoder(const ChannelMatrix &H, double condition_limit = default_condition_limit)
    {
        return detail::zf_solve(H, condition_limit).precoder;
    }

    // Per-user downlink SINR for an arbitrary precoder:
    //
    //   SINR_k = b s |H_k W_k|^2 / (b s sum_{j != k} |H_k W_j|^2 + 1)
    inline std::vector<double> downlink_sinr(const ChannelMatrix &H, const Precoder &P, double snr)
    {
        const auto &h = H.entries;
        if (P.W.rows() != h.cols() || P.W.cols() != h.rows())
            throw InvalidArgument("downlink_sinr: precoder must be M x K for a K x M channel");
        if (!(snr > 0.0))
            throw InvalidArgument("downlink_sinr: snr must be > 0");

        const Eigen::MatrixXcd HW = h * P.W;
        const double gain = P.beta * snr;
        const auto K = h.rows();
        std::vector<double> sinr(static_cast<std::size_t>(K));
        for (Eigen::Index k = 0; k < K; ++k)
        {
            double interference = 0.0;
            for (Eigen::Index j = 0; j < K; ++j)
                if (j != k)
                    interference += std::norm(HW(k, j));
            sinr[static_cast<std::size_t>(k)] = gain * std::norm(HW(k, k)) / (gain * interference + 1.0);
        }
        return sinr;
    }

    // SINR_k = snr / [(G^dagger G)^{-1}]_kk given (G^dagger G)^{-1}.
    inline std::vector<double> uplink_sinr_from_gram_inverse(const Eigen::MatrixXcd &gram_inverse, double snr)
    {
        std::vector<double> sinr(static_cast<std::size_t>(gram_inverse.rows()));
        for (Eigen::Index k = 0; k < gram_inverse.rows(); ++k)
            sinr[static_cast<std::size_t>(k)] = snr / gram_inverse(k, k).real();
        return sinr;
    }

    // Uplink ZF receiver over G = H^T (reciprocity):  SINR_k = snr / [(G^dagger G)^{-1}]_kk
    inline std::vector<double> uplink_zf_sinr(const ChannelMatrix &H, double snr,
                                              double condition_limit = default_condition_limit)
    {
        if (!(snr > 0.0))
            throw InvalidArgument("uplink_zf_sinr: snr must be > 0");
        if (H.entries.rows() < 1 || H.entries.rows() > H.entries.cols())
            throw InvalidArgument("uplink_zf_sinr: channel must be K x M with 1 <= K <= M");

        const Eigen::MatrixXcd G = H.entries.transpose();
        const Eigen::MatrixXcd gram = G.adjoint() * G;
        const double cond = detail::hermitian_condition(gram);
        if (!(cond <= condition_limit))
            throw SingularChannel("G^dagger G condition number " + std::to_string(cond) + " exceeds limit", cond);
        // G = Q R gives G^dagger G = R^dagger R and (G^dagger G)^{-1} = R^{-1} R^{-dagger}
        const auto K = G.cols();
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
        const Eigen::MatrixXcd R = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();
        const Eigen::MatrixXcd r_inv = R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(K, K));
        return uplink_sinr_from_gram_inverse(r_inv * r_inv.adjoint(), snr);
    }

} // namespace aperiodic

#endif
