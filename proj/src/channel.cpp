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

#include "risbeam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace risbeam {

CVec upa_response(const UpaGeometry &geom, double azimuth, double elevation)
{
    if (geom.horiz < 1 || geom.vert < 1)
        throw std::invalid_argument("upa_response: geometry must have at least one element");
    if (geom.spacing_over_lambda <= 0.0)
        throw std::invalid_argument("upa_response: element spacing must be positive");
    if (!std::isfinite(azimuth) || !std::isfinite(elevation))
        throw std::invalid_argument("upa_response: angles must be finite");

    const int m = geom.total();
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    const double k = 2.0 * M_PI * geom.spacing_over_lambda;
    const double ph = k * std::sin(azimuth) * std::sin(elevation); // per horizontal step
    const double pv = k * std::cos(elevation);                     // per vertical step

    CVec a(m);
    for (int iv = 0; iv < geom.vert; ++iv)
        for (int ih = 0; ih < geom.horiz; ++ih)
        {
            const double phase = ih * ph + iv * pv;
            a(iv * geom.horiz + ih) = std::polar(scale, phase);
        }
    return a;
}

double path_loss_db(const PathLossModel &model, double distance_m, double shadow_draw)
{
    if (distance_m <= 0.0)
        throw std::invalid_argument("path_loss_db: distance must be positive");
    return model.alpha_db + 10.0 * model.beta * std::log10(distance_m) + shadow_draw;
}

PathSet sample_paths(Philox &rng, const LinkConfig &link)
{
    if (link.n_path < 1)
        throw std::invalid_argument("sample_paths: link needs at least one path");
    if (link.distance_m <= 0.0)
        throw std::invalid_argument("sample_paths: link distance must be positive");

    const int n = link.n_path;
    const double rows = static_cast<double>(link.rx_geometry.total());
    const double cols = static_cast<double>(link.tx_geometry.total());
    const double gamma_sq = rows * cols / static_cast<double>(n);

    // One shadowing draw per link, scaled by each regime's sigma
    const double z = rng.gaussian();

    CVec gains(n);
    for (int q = 0; q < n; ++q)
    {
        const PathLossModel &model = (q == 0) ? link.los_model : link.nlos_model;
        const double pl = path_loss_db(model, link.distance_m, model.shadow_sigma_db * z);
        const double variance = gamma_sq * std::pow(10.0, -0.1 * pl);
        gains(q) = rng.cgaussian(variance);
    }

    RVec aoa_az(n), aoa_el(n), aod_az(n), aod_el(n);
    for (int q = 0; q < n; ++q)
    {
        aoa_az(q) = rng.uniform(0.0, 2.0 * M_PI);
        aoa_el(q) = rng.uniform(0.0, M_PI);
        aod_az(q) = rng.uniform(0.0, 2.0 * M_PI);
        aod_el(q) = rng.uniform(0.0, M_PI);
    }

    // Descending magnitude order, angles carried along (stable on ties)
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(gains(a)) > std::abs(gains(b)); });

    PathSet out;
    out.gains.resize(n);
    out.aoa_az.resize(n);
    out.aoa_el.resize(n);
    out.aod_az.resize(n);
    out.aod_el.resize(n);
    for (int q = 0; q < n; ++q)
    {
        const int src = order[static_cast<std::size_t>(q)];
        out.gains(q) = gains(src);
        out.aoa_az(q) = aoa_az(src);
        out.aoa_el(q) = aoa_el(src);
        out.aod_az(q) = aod_az(src);
        out.aod_el(q) = aod_el(src);
    }
    return out;
}

CMat assemble_channel(const PathSet &paths, const UpaGeometry &rx_geom,
                      const UpaGeometry &tx_geom)
{
    if (paths.size() < 1)
        throw std::invalid_argument("assemble_channel: empty path set");

    CMat h = CMat::Zero(rx_geom.total(), tx_geom.total());
    for (int q = 0; q < paths.size(); ++q)
    {
        const CVec ar = upa_response(rx_geom, paths.aoa_az(q), paths.aoa_el(q));
        const CVec at = upa_response(tx_geom, paths.aod_az(q), paths.aod_el(q));
        h.noalias() += paths.gains(q) * ar * at.adjoint();
    }
    return h;
}

CMat cascade(const CMat &h_sr, const CVec &ris_phases, const CMat &h_ts)
{
    if (h_sr.cols() != ris_phases.size() || ris_phases.size() != h_ts.rows())
        throw std::invalid_argument("cascade: surface dimension mismatch between hops");
    for (Eigen::Index m = 0; m < ris_phases.size(); ++m)
        if (std::abs(std::abs(ris_phases(m)) - 1.0) > 1e-12)
            throw std::invalid_argument(
                "cascade: RIS phase entries must be unit modulus (pure phase shifts)");

    return h_sr * ris_phases.asDiagonal() * h_ts;
}

const BandPreset &band_preset(const std::string &key)
{
    // 28 GHz and 142 GHz measurement-based log-distance parameters
    static const BandPreset mmwave28{{61.4, 2.0, 5.8}, {72.0, 2.92, 8.7}};
    static const BandPreset thz142{{75.44, 2.1, 2.8}, {75.44, 3.1, 8.3}};

    if (key == "mmwave28")
        return mmwave28;
    if (key == "thz142")
        return thz142;
    throw std::invalid_argument("unknown band '" + key + "' (valid bands: mmwave28, thz142)");
}

} // namespace risbeam
