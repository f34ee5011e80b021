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

#include <utility>

#include "risbeam/numerics.hpp"
#include "risbeam/pilots.hpp"
#include "risbeam/rng.hpp"

namespace risbeam {

// Data-phase transceiver setting: digital combiner and precoder plus the
// surface configuration. The precoder carries the power allocation, so
// ||precoder||_F^2 <= total power; surface entries are pure phase shifts.
struct BeamformerSet
{
    CMat combiner;   // N_r x N_s
    CMat precoder;   // N_t x N_s, columns scaled by sqrt of per-stream power
    CVec ris_phases; // length M, unit modulus (empty until a pair is chosen)
};

// Achieved rate with specific beamformers next to the ceiling for the same
// channel. spectral_efficiency <= capacity up to numerical slack.
struct RateReport
{
    double spectral_efficiency = 0.0; // bits/s/Hz with the given W, F
    double capacity = 0.0;            // bits/s/Hz ceiling over all beamformers
    PowerAllocation per_stream_power;
};

// Combiner and precoder that attain channel capacity: leading singular
// vectors of h, precoder columns scaled by the waterfilling powers.
// The ris_phases field is left empty; callers set it separately.
// Throws if h is identically zero (no singular direction to align with).
BeamformerSet optimal_beamformers(const CMat &h, int n_streams, double total_power,
                                  double noise_var);

// Rate ceiling sum_l log2(1 + P_l * s_l^2 / noise_var) over the strongest
// n_streams eigenchannels, with P_l from waterfilling. Zero channel or zero
// power gives 0 rather than an error.
double channel_capacity(const CMat &h, int n_streams, double total_power, double noise_var);

// Same ceiling from precomputed singular values (descending). Lets sweeps
// reuse one decomposition across many power levels.
double capacity_from_singular_values(const RVec &s, int n_streams, double total_power,
                                     double noise_var);

// Surface configuration with m i.i.d. phases uniform on [0, 2*pi)
CVec random_ris(Philox &rng, int m);

// Capacity-optimal path pair by brute force: evaluates the true cascaded
// channel capacity for every surface vector in the suite and returns the
// argmax pair with its capacity. Ties go to the lexicographically smaller
// pair. Uses the true channels, so this is an oracle, not an estimator.
std::pair<std::pair<int, int>, double> exhaustive_best_pair(const CMat &h_ts, const CMat &h_sr,
                                                            const PilotSuite &suite,
                                                            int n_streams, double total_power,
                                                            double noise_var);

} // namespace risbeam
