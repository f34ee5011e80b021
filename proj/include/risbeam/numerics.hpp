// SPDX-License-Identifier: Apache-2.0
//
// risbeam - link-level simulator for RIS-aided mmWave/THz MIMO systems
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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace risbeam {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Singular values below zero_threshold_rel * s_max count as zero when
// allocating power. Cascaded channels here are near rank-1, so numerically
// rank-deficient inputs are the common case, not an anomaly.
constexpr double waterfill_zero_threshold_rel = 1e-12;

// Thin SVD, A = u * diag(s) * v^H with s sorted descending.
struct SvdResult
{
    CMat u;
    RVec s;
    CMat v;
};

// Outcome of waterfilling a total power budget over eigenchannels.
// levels[l] is the linear power (mW) on the l-th input channel and
// water_level is the common level mu: levels[l] = mu - noise/s_l^2 on
// every active channel.
struct PowerAllocation
{
    std::vector<double> levels;
    double water_level = 0.0;
};

// Thin SVD of a complex dense matrix. Throws std::invalid_argument on
// non-finite input and std::runtime_error if the decomposition fails.
SvdResult svd(const CMat &a);

// Singular values only, descending. Computed from the Gram matrix of the
// smaller side, which is considerably faster than a full decomposition and
// accurate for everything the capacity expressions need.
RVec singular_values(const CMat &a);

// Water-filling power allocation over the first max_streams singular values.
// Solved exactly over active sets (sort + prefix sums), so the KKT conditions
// hold to floating-point accuracy:
//   levels[l] > 0  =>  levels[l] = water_level - noise_var / s_l^2
//   levels[l] = 0  =>  water_level <= noise_var / s_l^2
//   sum(levels) == total_power
// Throws if every usable singular value is zero.
PowerAllocation waterfill(const RVec &singular_values, double noise_var, double total_power,
                          int max_streams);

// Achievable rate log2 det(I + R^-1 W^H H F F^H H^H W) in bits/s/Hz, where
// R = noise_var * W^H W is the post-combining noise covariance. Evaluated as
// a Cholesky log-det ratio so the result is real and non-negative by
// construction. Throws if the combiner has linearly dependent columns.
double log_det_rate(const CMat &w, const CMat &h, const CMat &f, double noise_var);

} // namespace risbeam
