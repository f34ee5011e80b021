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

#include <algorithm>
#include <vector>

#include "risbeam/numerics.hpp"
#include "risbeam/rng.hpp"

namespace testutil {

inline risbeam::CMat random_cmat(risbeam::Philox &rng, int rows, int cols)
{
    risbeam::CMat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            m(r, c) = rng.cgaussian(1.0);
    return m;
}

inline risbeam::CVec random_unit_cvec(risbeam::Philox &rng, int n)
{
    risbeam::CVec v(n);
    for (int i = 0; i < n; ++i)
        v(i) = rng.cgaussian(1.0);
    return v / v.norm();
}

// Independent waterfilling oracle: bisect on the water level until the
// allocated power matches the budget. Slow but obviously correct.
inline std::vector<double> waterfill_bisect(const risbeam::RVec &s, double noise_var,
                                            double total_power, int max_streams)
{
    const double s_max = s.head(max_streams).maxCoeff();
    const double threshold = 1e-12 * s_max;

    std::vector<double> inv_gain(static_cast<std::size_t>(max_streams), -1.0);
    double hi = total_power;
    for (int l = 0; l < max_streams; ++l) {
        if (s(l) > threshold) {
            inv_gain[static_cast<std::size_t>(l)] = noise_var / (s(l) * s(l));
            hi = std::max(hi, total_power + inv_gain[static_cast<std::size_t>(l)]);
        }
    }

    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        double used = 0.0;
        for (int l = 0; l < max_streams; ++l)
            if (inv_gain[static_cast<std::size_t>(l)] >= 0.0)
                used += std::max(0.0, mid - inv_gain[static_cast<std::size_t>(l)]);
        (used < total_power ? lo : hi) = mid;
    }

    const double level = 0.5 * (lo + hi);
    std::vector<double> out(static_cast<std::size_t>(max_streams), 0.0);
    for (int l = 0; l < max_streams; ++l)
        if (inv_gain[static_cast<std::size_t>(l)] >= 0.0)
            out[static_cast<std::size_t>(l)] =
                std::max(0.0, level - inv_gain[static_cast<std::size_t>(l)]);
    return out;
}

} // namespace testutil
