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

#include "risbeam/rng.hpp"

#include <cmath>

namespace risbeam {

namespace {

// Philox 4x64 round constants (multipliers and Weyl key increments)
constexpr std::uint64_t PHILOX_M0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t PHILOX_M1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t PHILOX_W0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t PHILOX_W1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t &hi, std::uint64_t &lo)
{
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace

std::array<std::uint64_t, 4> Philox::block(const std::array<std::uint64_t, 4> &counter,
                                           const std::array<std::uint64_t, 2> &key)
{
    std::array<std::uint64_t, 4> c = counter;
    std::array<std::uint64_t, 2> k = key;
    for (int round = 0; round < 10; ++round)
    {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(PHILOX_M0, c[0], hi0, lo0);
        mulhilo(PHILOX_M1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += PHILOX_W0;
        k[1] += PHILOX_W1;
    }
    return c;
}

void Philox::refill()
{
    buffer_ = block(counter_, key_);
    buffer_pos_ = 0;
    // 256-bit counter increment
    if (++counter_[0] == 0)
        if (++counter_[1] == 0)
            if (++counter_[2] == 0)
                ++counter_[3];
}

std::uint64_t Philox::next_u64()
{
    if (buffer_pos_ >= 4)
        refill();
    return buffer_[buffer_pos_++];
}

double Philox::uniform()
{
    // top 53 bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

double Philox::gaussian()
{
    if (have_spare_)
    {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 is drawn from (0, 1] so the log never sees zero
    const double u1 = static_cast<double>((next_u64() >> 11) + 1ULL) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> Philox::cgaussian(double variance)
{
    const double s = std::sqrt(0.5 * variance);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

Philox substream(std::uint64_t seed, std::uint64_t trial, StreamPurpose purpose,
                 std::uint64_t offset)
{
    // key0 carries the user seed, key1 the (trial, purpose) coordinates.
    // Purpose tags live in the low byte; trials occupy the rest.
    const std::uint64_t tag = static_cast<std::uint64_t>(purpose) + offset;
    return Philox(seed, (trial << 8) | (tag & 0xFF));
}

} // namespace risbeam
