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

#include <string>

#include "risbeam/numerics.hpp"
#include "risbeam/rng.hpp"

namespace risbeam {

// Uniform planar array (or reflector panel) layout. Element spacing is given
// relative to the carrier wavelength; absolute wavelength never enters.
struct UpaGeometry
{
    int horiz = 1;
    int vert = 1;
    double spacing_over_lambda = 0.5;

    int total() const { return horiz * vert; }
};

// Log-distance path loss with optional log-normal shadowing:
//   PL(d) [dB] = alpha + 10 * beta * log10(d) + xi,   xi ~ N(0, sigma^2)
struct PathLossModel
{
    double alpha_db = 0.0;
    double beta = 2.0;
    double shadow_sigma_db = 0.0;
};

// Per-band LOS/NLOS path loss parameter pair
struct BandPreset
{
    PathLossModel los;
    PathLossModel nlos;
};

// Sampling configuration for one hop (TX-to-surface or surface-to-RX)
struct LinkConfig
{
    int n_path = 1;
    double distance_m = 1.0;
    PathLossModel los_model;
    PathLossModel nlos_model;
    UpaGeometry rx_geometry;
    UpaGeometry tx_geometry;
};

// One multipath realization: complex gains sorted by descending magnitude,
// with the arrival/departure angles (radians) carried along in the same order.
struct PathSet
{
    CVec gains;
    RVec aoa_az, aoa_el; // arrival azimuth [0, 2pi), elevation [0, pi)
    RVec aod_az, aod_el; // departure, same ranges

    int size() const { return static_cast<int>(gains.size()); }
};

// Unit-norm UPA steering vector for a plane wave from (azimuth, elevation).
// Element (i_h, i_v) sits at flat index i_v * horiz + i_h and carries phase
// 2*pi*(d/lambda) * (i_h*sin(az)*sin(el) + i_v*cos(el)).
CVec upa_response(const UpaGeometry &geom, double azimuth, double elevation);

// Path loss in dB at distance_m; shadow_draw is a pre-sampled value of the
// shadowing term xi (pass 0 to disable shadowing).
double path_loss_db(const PathLossModel &model, double distance_m, double shadow_draw);

// Draw a multipath realization for one link. Path 0 is assigned the LOS
// model and the rest the NLOS model before the magnitude sort; a single
// shadowing draw per link is scaled by each regime's sigma. Gain variance is
// gamma^2 * 10^(-PL/10) with gamma^2 = rx_total * tx_total / n_path.
PathSet sample_paths(Philox &rng, const LinkConfig &link);

// Assemble the channel matrix sum_q gain_q * a_r(aoa_q) * a_t(aod_q)^H
CMat assemble_channel(const PathSet &paths, const UpaGeometry &rx_geom,
                      const UpaGeometry &tx_geom);

// Total two-hop channel H_SR * diag(ris_phases) * H_TS. Every phase entry
// must have unit modulus (within 1e-12); anything else is rejected.
CMat cascade(const CMat &h_sr, const CVec &ris_phases, const CMat &h_ts);

// Path loss presets by band key ("mmwave28" or "thz142").
// Throws std::invalid_argument for unknown keys, naming the valid ones.
const BandPreset &band_preset(const std::string &key);

} // namespace risbeam
