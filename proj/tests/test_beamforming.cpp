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

#include <cmath>
#include <complex>

#include <doctest.h>

#include "helpers.hpp"
#include "risbeam/beamforming.hpp"
#include "risbeam/channel.hpp"
#include "risbeam/pilots.hpp"
#include "risbeam/rng.hpp"

using risbeam::CMat;
using risbeam::CVec;
using risbeam::LinkConfig;
using risbeam::PathSet;
using risbeam::Philox;
using risbeam::RVec;
using risbeam::StreamPurpose;
using risbeam::SystemGeometry;
using risbeam::UpaGeometry;

TEST_SUITE("beamforming") {

TEST_CASE("rank one channel has a closed form")
{
    Philox rng(40, 0);
    const CVec u = testutil::random_unit_cvec(rng, 6);
    const CVec v = testutil::random_unit_cvec(rng, 5);
    const double s0 = 2.5, power = 4.0, noise = 0.5;
    const CMat h = s0 * u * v.adjoint();

    const auto bf = risbeam::optimal_beamformers(h, 1, power, noise);
    CHECK(std::abs(std::abs(u.dot(bf.combiner.col(0))) - 1.0) < 1e-10); // parallel to u
    CHECK(std::abs(std::abs(v.dot(bf.precoder.col(0))) - std::sqrt(power)) < 1e-10);
    CHECK(bf.precoder.squaredNorm() == doctest::Approx(power).epsilon(1e-9));

    const double se = risbeam::log_det_rate(bf.combiner, h, bf.precoder, noise);
    const double expected = std::log2(1.0 + power * s0 * s0 / noise);
    CHECK(se == doctest::Approx(expected).epsilon(1e-10));
    CHECK(risbeam::channel_capacity(h, 1, power, noise) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("diagonal channel powers follow the waterfilling oracle")
{
    CMat h = CMat::Zero(2, 2);
    h(0, 0) = 3.0;
    h(1, 1) = 2.0;
    const double power = 5.0, noise = 1.0;
    const auto bf = risbeam::optimal_beamformers(h, 2, power, noise);

    RVec s(2);
    s << 3.0, 2.0;
    const auto oracle = testutil::waterfill_bisect(s, noise, power, 2);
    // Columns may come out in any phase; compare squared norms to P_l
    for (int l = 0; l < 2; ++l)
        CHECK(bf.precoder.col(l).squaredNorm() ==
              doctest::Approx(oracle[static_cast<std::size_t>(l)]).epsilon(1e-8));
}

TEST_CASE("optimal beamformers attain capacity")
{
    Philox rng(41, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat h = testutil::random_cmat(rng, 8, 6);
        const double power = rng.uniform(0.5, 20.0);
        const double noise = rng.uniform(0.05, 2.0);
        const auto bf = risbeam::optimal_beamformers(h, 3, power, noise);
        const double se = risbeam::log_det_rate(bf.combiner, h, bf.precoder, noise);
        const double cap = risbeam::channel_capacity(h, 3, power, noise);
        CHECK(se == doctest::Approx(cap).epsilon(1e-8));
    }
}

TEST_CASE("optimal beamformers use the full power budget")
{
    Philox rng(42, 2);
    const CMat h = testutil::random_cmat(rng, 5, 5);
    const auto bf = risbeam::optimal_beamformers(h, 4, 7.5, 0.3);
    CHECK(bf.precoder.squaredNorm() == doctest::Approx(7.5).epsilon(1e-9));
    CHECK(bf.ris_phases.size() == 0); // surface setting is chosen elsewhere
}

TEST_CASE("optimal beamformers reject a zero channel")
{
    CHECK_THROWS_AS((void)risbeam::optimal_beamformers(CMat::Zero(3, 3), 2, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("capacity of the zero channel is zero")
{
    CHECK(risbeam::channel_capacity(CMat::Zero(4, 4), 2, 10.0, 1.0) == 0.0);
}

TEST_CASE("scalar capacity is the Shannon formula")
{
    CMat h(1, 1);
    h(0, 0) = std::complex<double>(0.3, 0.4);
    const double power = 6.0, noise = 0.25;
    const double expected = std::log2(1.0 + power * std::norm(h(0, 0)) / noise);
    CHECK(risbeam::channel_capacity(h, 1, power, noise) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("capacity matches the bisection oracle and grows with power")
{
    RVec s(3);
    s << 3.0, 2.0, 1.0;
    const double noise = 1.0, power = 5.0;
    const auto oracle = testutil::waterfill_bisect(s, noise, power, 3);
    double expected = 0.0;
    for (int l = 0; l < 3; ++l)
        expected +=
            std::log2(1.0 + oracle[static_cast<std::size_t>(l)] * s(l) * s(l) / noise);

    CMat h = CMat::Zero(3, 3);
    h(0, 0) = 3.0;
    h(1, 1) = 2.0;
    h(2, 2) = 1.0;
    const double cap = risbeam::channel_capacity(h, 3, power, noise);
    CHECK(cap == doctest::Approx(expected).epsilon(1e-8));
    CHECK(risbeam::channel_capacity(h, 3, 2.0 * power, noise) > cap);
}

TEST_CASE("capacity from precomputed singular values matches the matrix path")
{
    Philox rng(43, 3);
    const CMat h = testutil::random_cmat(rng, 6, 4);
    const RVec s = risbeam::singular_values(h);
    CHECK(risbeam::capacity_from_singular_values(s, 3, 2.0, 0.4) ==
          doctest::Approx(risbeam::channel_capacity(h, 3, 2.0, 0.4)).epsilon(1e-12));
}

TEST_CASE("random surface phases are unit modulus and reproducible")
{
    Philox a = risbeam::substream(3, 5, StreamPurpose::ris_phases);
    const CVec v = risbeam::random_ris(a, 64);
    REQUIRE(v.size() == 64);
    for (int m = 0; m < 64; ++m)
        CHECK(std::abs(std::abs(v(m)) - 1.0) < 1e-12);

    Philox b = risbeam::substream(3, 5, StreamPurpose::ris_phases);
    const CVec w = risbeam::random_ris(b, 64);
    CHECK((v - w).norm() == 0.0);

    Philox c = risbeam::substream(3, 6, StreamPurpose::ris_phases);
    CHECK((risbeam::random_ris(c, 64) - v).norm() > 0.0);
}

TEST_CASE("exhaustive search with one pair returns it")
{
    const auto &preset = risbeam::band_preset("mmwave28");
    const UpaGeometry tx{2, 2}, rx{2, 2}, ris{4, 4};
    const LinkConfig lts{1, 35.0, preset.los, preset.nlos, ris, tx};
    const LinkConfig lsr{1, 15.0, preset.los, preset.nlos, rx, ris};
    Philox rts = risbeam::substream(50, 0, StreamPurpose::paths_ts);
    Philox rsr = risbeam::substream(50, 0, StreamPurpose::paths_sr);
    const PathSet pts = risbeam::sample_paths(rts, lts);
    const PathSet psr = risbeam::sample_paths(rsr, lsr);
    const CMat h_ts = risbeam::assemble_channel(pts, ris, tx);
    const CMat h_sr = risbeam::assemble_channel(psr, rx, ris);
    const SystemGeometry geoms{tx, rx, ris};
    const auto suite = risbeam::build_pilot_suite(pts, psr, geoms, 1, 2.0);

    const auto [pair, cap] = risbeam::exhaustive_best_pair(h_ts, h_sr, suite, 1, 2.0, 0.1);
    CHECK(pair == std::make_pair(0, 0));
    CHECK(cap > 0.0);
}

TEST_CASE("exhaustive search dominates every pair")
{
    const auto &preset = risbeam::band_preset("mmwave28");
    const UpaGeometry tx{4, 4}, rx{4, 4}, ris{8, 8};
    const LinkConfig lts{4, 35.0, preset.los, preset.nlos, ris, tx};
    const LinkConfig lsr{4, 15.0, preset.los, preset.nlos, rx, ris};
    Philox rts = risbeam::substream(51, 0, StreamPurpose::paths_ts);
    Philox rsr = risbeam::substream(51, 0, StreamPurpose::paths_sr);
    const PathSet pts = risbeam::sample_paths(rts, lts);
    const PathSet psr = risbeam::sample_paths(rsr, lsr);
    const CMat h_ts = risbeam::assemble_channel(pts, ris, tx);
    const CMat h_sr = risbeam::assemble_channel(psr, rx, ris);
    const SystemGeometry geoms{tx, rx, ris};
    const auto suite = risbeam::build_pilot_suite(pts, psr, geoms, 4, 2.0);

    const double power = 2.0, noise = 1e-6;
    const auto [pair, cap] = risbeam::exhaustive_best_pair(h_ts, h_sr, suite, 4, power, noise);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double c = risbeam::channel_capacity(
                risbeam::cascade(h_sr, suite.phase_vector(i, j), h_ts), 4, power, noise);
            CHECK(cap >= c - 1e-12);
        }
    }
    const double best = risbeam::channel_capacity(
        risbeam::cascade(h_sr, suite.phase_vector(pair.first, pair.second), h_ts), 4, power,
        noise);
    CHECK(cap == doctest::Approx(best).epsilon(1e-12));
}

} // TEST_SUITE
