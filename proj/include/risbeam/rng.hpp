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

#include <array>
#include <complex>
#include <cstdint>

namespace risbeam {

// Counter-based pseudo-random generator (Philox 4x64, 10 rounds).
//
// A generator is identified by its 128-bit key alone; the counter starts at
// zero and advances as values are drawn. Streams with distinct keys are
// statistically independent, which makes per-trial substreams trivial: derive
// a fresh key from (seed, trial, purpose) and the draw order of other streams
// can never affect the result. Output matches the reference Philox 4x64-10
// (same round constants and permutation as numpy's bit generator).
class Philox
{
  public:
    Philox(std::uint64_t key0, std::uint64_t key1) : key_{key0, key1} {}

    // One keyed block: 256 bits of output for an explicit counter
    static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4> &counter,
                                              const std::array<std::uint64_t, 2> &key);

    // Next raw 64-bit value of this stream
    std::uint64_t next_u64();

    // Uniform double in [0, 1), 53-bit resolution
    double uniform();

    // Uniform double in [lo, hi)
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller (pairs are cached)
    double gaussian();

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance,
    // i.e. real and imaginary parts i.i.d. N(0, variance / 2)
    std::complex<double> cgaussian(double variance);

  private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> buffer_{};
    int buffer_pos_ = 4; // empty
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Purpose tags for substream derivation. Values are stable identifiers that
// end up in the stream key; changing them changes every sampled realization.
enum class StreamPurpose : std::uint64_t
{
    paths_ts = 0,        // multipath draw for the TX-to-surface link
    paths_sr = 1,        // multipath draw for the surface-to-RX link
    ris_phases = 2,      // random-phase baseline
    generic = 3,         // free stream for tests and tools
    pilot_noise = 16,    // base tag; add the flattened pair index
};

// Derive the generator for (seed, trial, purpose). `offset` distinguishes
// multiple streams of one purpose, e.g. the per-pair pilot noise blocks.
Philox substream(std::uint64_t seed, std::uint64_t trial, StreamPurpose purpose,
                 std::uint64_t offset = 0);

} // namespace risbeam
