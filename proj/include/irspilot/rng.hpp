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

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace irspilot
{
    // Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
    // the output block is a pure function of (counter, key).
    class Philox4x32
    {
    public:
        using Counter = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        static Counter block(Counter counter, Key key) noexcept;
    };

    // What a random stream is used for. Distinct purposes never share counters.
    enum class StreamPurpose : std::uint16_t
    {
        channel_user_leg = 0, // IRS-user NLoS component (and the cascaded channel)
        estimation_noise = 1,
        random_phase = 2,
        channel_bs_leg = 3, // BS-IRS NLoS component, only drawn for finite K_bi
        placement = 4       // random IRS geometry in experiment presets
    };

    // Identifies one independent stream: (master seed, trial, stream id, purpose).
    // The stream id is normally the global IRS index, so switching an IRS off never
    // changes the draws of another.
    struct StreamKey
    {
        std::uint64_t master_seed = 0;
        std::uint64_t trial = 0;
        std::uint16_t stream_id = 0;
        StreamPurpose purpose = StreamPurpose::channel_user_leg;
    };

    // Sequential view over a Philox stream. Element i of the stream is always block i,
    // independent of how many values were drawn before it by other streams.
    class RandomStream
    {
    public:
        explicit RandomStream(const StreamKey &key) noexcept;

        // Uniform on [0, 1) with 53 random bits.
        double uniform() noexcept;

        // CN(0, variance): real and imaginary parts each N(0, variance / 2).
        // Consumes exactly one Philox block (Box-Muller on two 53-bit uniforms).
        std::complex<double> complex_normal(double variance) noexcept;

        // Random point on the unit circle; consumes one block.
        std::complex<double> unit_phase() noexcept;

        std::uint32_t position() const noexcept { return next_block_; }

    private:
        Philox4x32::Counter next_raw() noexcept;

        Philox4x32::Key key_;
        std::uint32_t tag_;
        std::uint64_t trial_;
        std::uint32_t next_block_ = 0;

        std::array<std::uint32_t, 4> buffer_{};
        int buffered_ = 0; // 64-bit words left in buffer_ for uniform()
    };
}
