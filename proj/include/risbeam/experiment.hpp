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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "risbeam/channel.hpp"

namespace risbeam {

enum class Band { mmwave28, thz142 };

enum class Method { proposed, random_ris, exhaustive_oracle };

std::string band_name(Band band);
Band parse_band(const std::string &name); // throws naming the valid bands
std::string method_name(Method method);

// Full description of one Monte Carlo sweep. Defaults reproduce the
// headline configuration: 8x8 panels at both ends, a 16x16 surface, four
// paths per hop, four streams, rank-1 reconstruction.
struct ExperimentConfig
{
    Band band = Band::mmwave28;
    UpaGeometry tx{8, 8};
    UpaGeometry rx{8, 8};
    UpaGeometry ris{16, 16};
    int n_path_ts = 4;
    int n_path_sr = 4;
    int n_streams = 4;
    int n_rank = 1;
    int k = 4; // entries sampled from the equalized block
    double d_ts_m = 35.0;
    double d_sr_m = 15.0;
    double noise_dbm = -91.0;
    std::vector<double> ptx_dbm_sweep{20.0, 25.0, 30.0, 35.0, 40.0};
    int trials = 10000;
    std::uint64_t seed = 1;
    bool shadowing = true;    // log-normal shadowing in the path loss draws
    bool pilot_noise = true;  // false runs the noiseless-estimation variant
    int threads = 1;          // worker pool size; never affects the results
    std::string debug_log;    // optional per-trial CSV dump, empty disables
};

// Aggregated outcome for one (sweep point, method) cell
struct ExperimentRecord
{
    double ptx_dbm = 0.0;
    Method method = Method::proposed;
    double mean_capacity = 0.0;
    double mean_spectral_efficiency = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument naming the offending field
void validate_config(const ExperimentConfig &config);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Flat key = value file, '#' starts a comment; unknown keys are rejected.
// Values not present keep their defaults.
ExperimentConfig load_config(const std::string &path);

// Monte Carlo sweep over ptx_dbm_sweep. Per trial: sample both hops, draw a
// random surface baseline, precompute the cascaded channel of every path
// pair, then per sweep point evaluate the estimator-driven method, the
// random-phase baseline, and the exhaustive pair oracle. Channel draws are
// shared across sweep points, so curves differ only through transmit power.
// Records are ordered by sweep point, then method enum order. Identical
// config gives identical records regardless of the worker pool size.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig &config);

// CSV persistence: header ptx_dbm,method,mean_capacity,
// mean_spectral_efficiency,trials,seed with 6-significant-digit floats.
void write_records(const std::vector<ExperimentRecord> &records, const std::string &path);

// Reduced-scale invariant suite for the `validate` subcommand; prints one
// pass/fail line per check and returns true when all pass.
bool run_validation(std::ostream &out);

// Single-realization estimator-vs-oracle comparison for the `oracle`
// subcommand: prints both selected pairs and their capacities.
void oracle_report(const ExperimentConfig &config, std::ostream &out);

} // namespace risbeam
