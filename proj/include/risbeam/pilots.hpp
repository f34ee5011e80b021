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

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "risbeam/channel.hpp"
#include "risbeam/numerics.hpp"
#include "risbeam/rng.hpp"

namespace risbeam {

// Array layouts of the three nodes
struct SystemGeometry
{
    UpaGeometry tx;  // transmitter panel (N_t elements)
    UpaGeometry rx;  // receiver panel (N_r elements)
    UpaGeometry ris; // reflecting surface (M elements)
};

// Sounding configuration: combiner/precoder steered at the strongest known
// paths, a unitary pilot symbol block, and one unit-modulus surface vector
// per (TS path, SR path) pair. The pair (i, j) steers the surface so the
// i-th TX-side path couples into the j-th RX-side path.
struct PilotSuite
{
    CMat combiner;               // W_p : N_r x N_s, receive steering columns
    CMat precoder;               // F_p : N_t x N_s, transmit steering columns, scaled
    CMat symbols;                // S_p : N_s x N_s, unitary DFT block
    double precoder_scale = 1.0; // sqrt(total_power / n_streams), undone by equalize()
    int n_pairs_ts = 0;          // TS-side path count covered
    int n_pairs_sr = 0;          // SR-side path count covered
    std::vector<CVec> phase_vectors; // flattened (i, j) -> i * n_pairs_sr + j
    int schedule_len = 0;        // pilot slots T = n_pairs_ts * n_pairs_sr * n_streams

    int pair_index(int i, int j) const { return i * n_pairs_sr + j; }
    const CVec &phase_vector(int i, int j) const;
};

// Everything the estimator extracts from one full pilot schedule
struct EstimationResult
{
    int n_pairs_ts = 0;
    int n_pairs_sr = 0;
    std::vector<CMat> equalized;                        // per pair, N_s x N_s
    std::vector<std::vector<std::pair<int, int>>> topk; // per pair, descending magnitude
    std::vector<std::complex<double>> gain_estimates;   // per pair, peak equalized entry
    std::pair<int, int> selected_pair{0, 0};            // argmax of |gain_estimates|
    CMat h_est;                                         // low-rank estimate for selected pair

    int pair_index(int i, int j) const { return i * n_pairs_sr + j; }
};

// Surface vector that couples one TX-side path into one RX-side path:
// entrywise M * conj(a_r_ts_i) .* a_t_sr_j. Both inputs must be steering
// vectors of the surface panel, so every output entry has unit modulus.
CVec ris_pilot_vector(const CVec &a_r_ts_i, const CVec &a_t_sr_j);

// Build the full sounding configuration for the strongest n_streams paths of
// each hop. Requires n_streams <= min(paths_ts.size(), paths_sr.size()).
PilotSuite build_pilot_suite(const PathSet &paths_ts, const PathSet &paths_sr,
                             const SystemGeometry &geoms, int n_streams, double total_power);

// Received pilot block for one surface setting:
//   Y = W_p^H * H_SR * diag(v_ij) * H_TS * F_p * S_p + W_p^H * N
// with N entries i.i.d. CN(0, noise_var). noise_var = 0 gives the exact
// noiseless block without consuming random draws.
CMat simulate_pilot_rx(const CMat &h_ts, const CMat &h_sr, const PilotSuite &suite,
                       std::pair<int, int> pair, double noise_var, Philox &rng);

// Equalized observation Y * S_p^-1, divided by the precoder power scale so
// the noiseless large-array limit of the peak entry is the raw product of
// the two path gains.
CMat equalize(const CMat &y, const PilotSuite &suite);

// Positions of the k largest-magnitude entries, descending; ties broken by
// smaller row, then smaller column. Requires 1 <= k <= min(rows, cols).
std::vector<std::pair<int, int>> top_k_entries(const CMat &y_eq, int k);

// Low-rank channel estimate from sampled equalized entries: each index pair
// (r, c) contributes y_eq(r, c) * a_r(SR path r) * a_t(TS path c)^H.
CMat rank_approx(const CMat &y_eq, const std::vector<std::pair<int, int>> &indices,
                 const PathSet &paths_ts, const PathSet &paths_sr,
                 const SystemGeometry &geoms, int n_rank);

// Pair whose equalized observation has the largest peak magnitude; ties go
// to the smaller TS index, then the smaller SR index.
std::pair<int, int> select_pair(const std::vector<CMat> &equalized_by_pair, int n_pairs_ts,
                                int n_pairs_sr);

// Full estimation pass over every pair: simulate, equalize, rank, select.
// Pilot noise is drawn from an independent substream per pair, so pairs can
// be processed in any order (or in parallel) without changing the result.
EstimationResult run_estimation(const CMat &h_ts, const CMat &h_sr, const PilotSuite &suite,
                                const PathSet &paths_ts, const PathSet &paths_sr,
                                const SystemGeometry &geoms, int k, int n_rank,
                                double noise_var, std::uint64_t seed, std::uint64_t trial);

} // namespace risbeam
