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

#include "risbeam/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "risbeam/channel.hpp"

namespace risbeam {

BeamformerSet optimal_beamformers(const CMat &h, int n_streams, double total_power,
                                  double noise_var)
{
    if (n_streams < 1 || n_streams > std::min(h.rows(), h.cols()))
        throw std::invalid_argument("optimal_beamformers: n_streams must lie in [1, min(rows, cols)]");
    if (!(total_power > 0.0))
        throw std::invalid_argument("optimal_beamformers: total_power must be positive");
    if (h.isZero(0.0))
        throw std::invalid_argument("optimal_beamformers: channel is identically zero");

    const SvdResult dec = svd(h);
    const PowerAllocation alloc =
        waterfill(dec.s.head(n_streams), noise_var, total_power, n_streams);

    BeamformerSet out;
    out.combiner = dec.u.leftCols(n_streams);
    out.precoder = dec.v.leftCols(n_streams);
    for (int l = 0; l < n_streams; ++l)
        out.precoder.col(l) *= std::sqrt(alloc.levels[static_cast<std::size_t>(l)]);
    // Waterfilled levels sum to the budget up to rounding; shave any
    // overshoot so the power inequality holds exactly at any magnitude.
    const double used = out.precoder.squaredNorm();
    if (used > total_power)
        out.precoder *= std::sqrt(total_power / used) * (1.0 - 1e-13);
    return out;
}

double channel_capacity(const CMat &h, int n_streams, double total_power, double noise_var)
{
    if (n_streams < 1 || n_streams > std::min(h.rows(), h.cols()))
        throw std::invalid_argument("channel_capacity: n_streams must lie in [1, min(rows, cols)]");
    return capacity_from_singular_values(singular_values(h), n_streams, total_power, noise_var);
}

double capacity_from_singular_values(const RVec &s, int n_streams, double total_power,
                                     double noise_var)
{
    if (n_streams < 1 || n_streams > s.size())
        throw std::invalid_argument(
            "capacity_from_singular_values: n_streams must lie in [1, size]");
    if (total_power < 0.0)
        throw std::invalid_argument("capacity_from_singular_values: total_power must be non-negative");
    if (!(noise_var > 0.0))
        throw std::invalid_argument("capacity_from_singular_values: noise variance must be positive");
    if (total_power == 0.0 || s.head(n_streams).maxCoeff() <= 0.0)
        return 0.0; // no power or no usable eigenchannel, no rate

    const PowerAllocation alloc = waterfill(s.head(n_streams), noise_var, total_power, n_streams);
    double c = 0.0;
    for (int l = 0; l < n_streams; ++l)
        c += std::log2(1.0 + alloc.levels[static_cast<std::size_t>(l)] * s(l) * s(l) / noise_var);
    return c;
}

CVec random_ris(Philox &rng, int m)
{
    if (m < 1)
        throw std::invalid_argument("random_ris: element count must be at least 1");

    CVec v(m);
    for (int i = 0; i < m; ++i)
        v(i) = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    return v;
}

std::pair<std::pair<int, int>, double> exhaustive_best_pair(const CMat &h_ts, const CMat &h_sr,
                                                            const PilotSuite &suite,
                                                            int n_streams, double total_power,
                                                            double noise_var)
{
    if (suite.n_pairs_ts < 1 || suite.n_pairs_sr < 1)
        throw std::invalid_argument("exhaustive_best_pair: suite holds no surface vectors");
    if (suite.phase_vectors.size() !=
        static_cast<std::size_t>(suite.n_pairs_ts) * suite.n_pairs_sr)
        throw std::invalid_argument("exhaustive_best_pair: suite phase vectors are incomplete");

    std::pair<int, int> best{0, 0};
    double best_cap = -1.0;
    for (int i = 0; i < suite.n_pairs_ts; ++i) {
        for (int j = 0; j < suite.n_pairs_sr; ++j) {
            const CMat h_tot = cascade(h_sr, suite.phase_vector(i, j), h_ts);
            const double c = channel_capacity(h_tot, n_streams, total_power, noise_var);
            // Row-major scan plus strict improvement keeps ties lexicographic
            if (c > best_cap) {
                best_cap = c;
                best = {i, j};
            }
        }
    }
    return {best, best_cap};
}

} // namespace risbeam
