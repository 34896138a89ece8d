// SPDX-License-Identifier: Apache-2.0
//
// irspilot: pilot power allocation and link-level simulation for multi-IRS links
// Copyright (C) 2026 The irspilot Authors
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

#include "irspilot/rng.hpp"

#include <cmath>
#include <numbers>

namespace irspilot
{
    namespace
    {
        constexpr std::uint32_t philox_m0 = 0xD2511F53u;
        constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
        constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
        constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) noexcept
        {
            const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
            hi = static_cast<std::uint32_t>(product >> 32);
            lo = static_cast<std::uint32_t>(product);
        }

        constexpr double two_pow_minus_53 = 1.0 / 9007199254740992.0;

        inline std::uint64_t join(std::uint32_t hi, std::uint32_t lo) noexcept
        {
            return (static_cast<std::uint64_t>(hi) << 32) | lo;
        }
    }

    Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(philox_m0, ctr[0], hi0, lo0);
            mulhilo(philox_m1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += philox_w0;
            key[1] += philox_w1;
        }
        return ctr;
    }

    RandomStream::RandomStream(const StreamKey &key) noexcept
        : key_{static_cast<std::uint32_t>(key.master_seed), static_cast<std::uint32_t>(key.master_seed >> 32)},
          tag_((static_cast<std::uint32_t>(key.stream_id) << 16) | static_cast<std::uint32_t>(key.purpose)),
          trial_(key.trial)
    {
    }

    Philox4x32::Counter RandomStream::next_raw() noexcept
    {
        const Philox4x32::Counter ctr = {next_block_++, tag_, static_cast<std::uint32_t>(trial_),
                                         static_cast<std::uint32_t>(trial_ >> 32)};
        return Philox4x32::block(ctr, key_);
    }

    double RandomStream::uniform() noexcept
    {
        if (buffered_ == 0)
        {
            buffer_ = next_raw();
            buffered_ = 2;
        }
        const int word = 2 - buffered_--;
        const std::uint64_t bits = join(buffer_[2 * word], buffer_[2 * word + 1]);
        return static_cast<double>(bits >> 11) * two_pow_minus_53;
    }

    std::complex<double> RandomStream::complex_normal(double variance) noexcept
    {
        const auto r = next_raw();
        // u1 in (0, 1] keeps the log finite.
        const double u1 = static_cast<double>((join(r[0], r[1]) >> 11) + 1) * two_pow_minus_53;
        const double u2 = static_cast<double>(join(r[2], r[3]) >> 11) * two_pow_minus_53;
        const double radius = std::sqrt(-variance * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    std::complex<double> RandomStream::unit_phase() noexcept
    {
        const auto r = next_raw();
        const double u = static_cast<double>(join(r[0], r[1]) >> 11) * two_pow_minus_53;
        const double angle = 2.0 * std::numbers::pi * u;
        return {std::cos(angle), std::sin(angle)};
    }
}
