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

#include "risbeam/pilots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risbeam {

const CVec &PilotSuite::phase_vector(int i, int j) const
{
    if (i < 0 || i >= n_pairs_ts || j < 0 || j >= n_pairs_sr)
        throw std::invalid_argument("phase_vector: pair index out of range");
    return phase_vectors[static_cast<std::size_t>(pair_index(i, j))];
}

CVec ris_pilot_vector(const CVec &a_r_ts_i, const CVec &a_t_sr_j)
{
    if (a_r_ts_i.size() != a_t_sr_j.size())
        throw std::invalid_argument("ris_pilot_vector: steering vectors must have equal length");
    if (a_r_ts_i.size() == 0)
        throw std::invalid_argument("ris_pilot_vector: steering vectors must be non-empty");

    const double m = static_cast<double>(a_r_ts_i.size());
    return m * a_r_ts_i.conjugate().cwiseProduct(a_t_sr_j);
}

PilotSuite build_pilot_suite(const PathSet &paths_ts, const PathSet &paths_sr,
                             const SystemGeometry &geoms, int n_streams, double total_power)
{
    const int n_ts = paths_ts.size();
    const int n_sr = paths_sr.size();
    if (n_streams < 1)
        throw std::invalid_argument("build_pilot_suite: n_streams must be at least 1");
    if (n_streams > std::min(n_ts, n_sr))
        throw std::invalid_argument(
            "build_pilot_suite: n_streams exceeds the path count of one of the hops");
    if (!(total_power > 0.0))
        throw std::invalid_argument("build_pilot_suite: total_power must be positive");

    PilotSuite suite;
    suite.n_pairs_ts = n_ts;
    suite.n_pairs_sr = n_sr;
    suite.precoder_scale = std::sqrt(total_power / static_cast<double>(n_streams));
    suite.schedule_len = n_ts * n_sr * n_streams;

    // Receive steering at the paths arriving from the surface; transmit
    // steering at the paths departing toward it. Paths are stored strongest
    // first, so the leading n_streams columns cover the dominant couplings.
    suite.combiner.resize(geoms.rx.total(), n_streams);
    suite.precoder.resize(geoms.tx.total(), n_streams);
    for (int l = 0; l < n_streams; ++l) {
        suite.combiner.col(l) = upa_response(geoms.rx, paths_sr.aoa_az(l), paths_sr.aoa_el(l));
        suite.precoder.col(l) =
            suite.precoder_scale * upa_response(geoms.tx, paths_ts.aod_az(l), paths_ts.aod_el(l));
    }
    // Steering norms round to 1 +- O(eps); shave the overshoot so the power
    // inequality holds exactly at any budget magnitude.
    const double used = suite.precoder.squaredNorm();
    if (used > total_power)
        suite.precoder *= std::sqrt(total_power / used) * (1.0 - 1e-13);

    const double n = static_cast<double>(n_streams);
    suite.symbols.resize(n_streams, n_streams);
    for (int r = 0; r < n_streams; ++r)
        for (int c = 0; c < n_streams; ++c)
            suite.symbols(r, c) = std::polar(1.0 / std::sqrt(n),
                                             -2.0 * std::numbers::pi * r * c / n);

    suite.phase_vectors.reserve(static_cast<std::size_t>(n_ts) * n_sr);
    for (int i = 0; i < n_ts; ++i) {
        const CVec arr = upa_response(geoms.ris, paths_ts.aoa_az(i), paths_ts.aoa_el(i));
        for (int j = 0; j < n_sr; ++j) {
            const CVec dep = upa_response(geoms.ris, paths_sr.aod_az(j), paths_sr.aod_el(j));
            suite.phase_vectors.push_back(ris_pilot_vector(arr, dep));
        }
    }
    return suite;
}

CMat simulate_pilot_rx(const CMat &h_ts, const CMat &h_sr, const PilotSuite &suite,
                       std::pair<int, int> pair, double noise_var, Philox &rng)
{
    if (h_sr.cols() != h_ts.rows())
        throw std::invalid_argument("simulate_pilot_rx: hop dimensions do not cascade");
    if (suite.combiner.rows() != h_sr.rows())
        throw std::invalid_argument("simulate_pilot_rx: combiner does not match receiver size");
    if (suite.precoder.rows() != h_ts.cols())
        throw std::invalid_argument("simulate_pilot_rx: precoder does not match transmitter size");
    if (noise_var < 0.0)
        throw std::invalid_argument("simulate_pilot_rx: noise_var must be non-negative");

    const CVec &phases = suite.phase_vector(pair.first, pair.second);
    if (phases.size() != h_sr.cols())
        throw std::invalid_argument("simulate_pilot_rx: surface vector does not match surface size");

    CMat y = suite.combiner.adjoint() *
             (h_sr * (phases.asDiagonal() * (h_ts * (suite.precoder * suite.symbols))));

    if (noise_var > 0.0) {
        CMat noise(h_sr.rows(), suite.symbols.cols());
        for (Eigen::Index c = 0; c < noise.cols(); ++c)
            for (Eigen::Index r = 0; r < noise.rows(); ++r)
                noise(r, c) = rng.cgaussian(noise_var);
        y.noalias() += suite.combiner.adjoint() * noise;
    }
    return y;
}

CMat equalize(const CMat &y, const PilotSuite &suite)
{
    if (y.cols() != suite.symbols.rows())
        throw std::invalid_argument("equalize: observation width does not match symbol block");
    if (!(suite.precoder_scale > 0.0))
        throw std::invalid_argument("equalize: precoder scale must be positive");

    Eigen::FullPivLU<CMat> lu(suite.symbols);
    if (!lu.isInvertible())
        throw std::invalid_argument("equalize: symbol block is singular");

    return y * lu.inverse() / suite.precoder_scale;
}

std::vector<std::pair<int, int>> top_k_entries(const CMat &y_eq, int k)
{
    const int rows = static_cast<int>(y_eq.rows());
    const int cols = static_cast<int>(y_eq.cols());
    if (k < 1 || k > std::min(rows, cols))
        throw std::invalid_argument("top_k_entries: k must lie in [1, min(rows, cols)]");

    struct Entry
    {
        double mag;
        int r;
        int c;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            entries.push_back({std::abs(y_eq(r, c)), r, c});

    // Descending magnitude; exact ties resolved by row, then column
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        if (a.mag != b.mag)
            return a.mag > b.mag;
        if (a.r != b.r)
            return a.r < b.r;
        return a.c < b.c;
    });

    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int z = 0; z < k; ++z)
        out.emplace_back(entries[static_cast<std::size_t>(z)].r,
                         entries[static_cast<std::size_t>(z)].c);
    return out;
}

CMat rank_approx(const CMat &y_eq, const std::vector<std::pair<int, int>> &indices,
                 const PathSet &paths_ts, const PathSet &paths_sr,
                 const SystemGeometry &geoms, int n_rank)
{
    if (n_rank < 1 || static_cast<std::size_t>(n_rank) > indices.size())
        throw std::invalid_argument("rank_approx: n_rank must lie in [1, indices.size()]");

    CMat h = CMat::Zero(geoms.rx.total(), geoms.tx.total());
    for (int z = 0; z < n_rank; ++z) {
        const auto [r, c] = indices[static_cast<std::size_t>(z)];
        if (r < 0 || r >= y_eq.rows() || c < 0 || c >= y_eq.cols())
            throw std::invalid_argument("rank_approx: index outside the equalized block");
        if (r >= paths_sr.size() || c >= paths_ts.size())
            throw std::invalid_argument("rank_approx: index outside the path sets");

        // Row r picked the r-th arrival at the receiver, column c the c-th
        // departure at the transmitter; the entry is the coupling gain.
        const CVec ar = upa_response(geoms.rx, paths_sr.aoa_az(r), paths_sr.aoa_el(r));
        const CVec at = upa_response(geoms.tx, paths_ts.aod_az(c), paths_ts.aod_el(c));
        h.noalias() += y_eq(r, c) * ar * at.adjoint();
    }
    return h;
}

std::pair<int, int> select_pair(const std::vector<CMat> &equalized_by_pair, int n_pairs_ts,
                                int n_pairs_sr)
{
    if (n_pairs_ts < 1 || n_pairs_sr < 1)
        throw std::invalid_argument("select_pair: pair grid must be non-empty");
    if (equalized_by_pair.size() != static_cast<std::size_t>(n_pairs_ts) * n_pairs_sr)
        throw std::invalid_argument("select_pair: observation count does not match pair grid");

    std::pair<int, int> best{0, 0};
    double best_mag = -1.0;
    for (int i = 0; i < n_pairs_ts; ++i) {
        for (int j = 0; j < n_pairs_sr; ++j) {
            const CMat &eq = equalized_by_pair[static_cast<std::size_t>(i * n_pairs_sr + j)];
            const auto peak = top_k_entries(eq, 1).front();
            const double mag = std::abs(eq(peak.first, peak.second));
            // Strict improvement only: ties keep the lexicographically
            // earliest pair because the scan is row-major
            if (mag > best_mag) {
                best_mag = mag;
                best = {i, j};
            }
        }
    }
    return best;
}

EstimationResult run_estimation(const CMat &h_ts, const CMat &h_sr, const PilotSuite &suite,
                                const PathSet &paths_ts, const PathSet &paths_sr,
                                const SystemGeometry &geoms, int k, int n_rank,
                                double noise_var, std::uint64_t seed, std::uint64_t trial)
{
    if (n_rank > k)
        throw std::invalid_argument("run_estimation: n_rank cannot exceed k");

    EstimationResult res;
    res.n_pairs_ts = suite.n_pairs_ts;
    res.n_pairs_sr = suite.n_pairs_sr;
    const std::size_t n_pairs = static_cast<std::size_t>(suite.n_pairs_ts) * suite.n_pairs_sr;
    res.equalized.reserve(n_pairs);
    res.topk.reserve(n_pairs);
    res.gain_estimates.reserve(n_pairs);

    for (int i = 0; i < suite.n_pairs_ts; ++i) {
        for (int j = 0; j < suite.n_pairs_sr; ++j) {
            // One noise substream per pair: the schedule order never matters
            Philox rng = substream(seed, trial, StreamPurpose::pilot_noise,
                                   static_cast<std::uint64_t>(suite.pair_index(i, j)));
            const CMat y = simulate_pilot_rx(h_ts, h_sr, suite, {i, j}, noise_var, rng);
            CMat eq = equalize(y, suite);
            auto idx = top_k_entries(eq, k);
            res.gain_estimates.push_back(eq(idx.front().first, idx.front().second));
            res.equalized.push_back(std::move(eq));
            res.topk.push_back(std::move(idx));
        }
    }

    res.selected_pair = select_pair(res.equalized, suite.n_pairs_ts, suite.n_pairs_sr);
    const std::size_t sel =
        static_cast<std::size_t>(res.pair_index(res.selected_pair.first, res.selected_pair.second));
    res.h_est = rank_approx(res.equalized[sel], res.topk[sel], paths_ts, paths_sr, geoms, n_rank);
    return res;
}

} // namespace risbeam
