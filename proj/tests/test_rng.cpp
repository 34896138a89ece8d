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

#include <catch_amalgamated.hpp>

#include "irspilot/rng.hpp"

#include <cmath>
#include <set>

using namespace irspilot;
using Catch::Matchers::WithinAbs;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;

    CHECK(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are deterministic and separated by every key field")
{
    StreamKey base{42, 7, 3, StreamPurpose::estimation_noise};
    RandomStream a(base), b(base);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.uniform() == b.uniform());

    auto first = [](StreamKey k)
    {
        RandomStream s(k);
        return s.uniform();
    };
    std::set<double> seen{first(base)};
    auto other = base;
    other.master_seed = 43;
    seen.insert(first(other));
    other = base;
    other.trial = 8;
    seen.insert(first(other));
    other = base;
    other.stream_id = 4;
    seen.insert(first(other));
    other = base;
    other.purpose = StreamPurpose::random_phase;
    seen.insert(first(other));
    CHECK(seen.size() == 5);
}

TEST_CASE("uniform draws lie in [0, 1) with mean 1/2")
{
    RandomStream s({1, 0, 0, StreamPurpose::placement});
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // Standard error of the mean is sqrt(1/12 / n).
    CHECK_THAT(sum / n, WithinAbs(0.5, 4.0 * std::sqrt(1.0 / 12.0 / n)));
}

TEST_CASE("complex normal draws one block each and has the requested variance")
{
    RandomStream s({5, 2, 1, StreamPurpose::channel_user_leg});
    const int n = 200000;
    const double var = 3.0;
    double re2 = 0.0, im2 = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i)
    {
        REQUIRE(s.position() == static_cast<std::uint32_t>(i));
        const auto z = s.complex_normal(var);
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
    }
    // Var(x^2) = 2 sigma^4 for a real Gaussian of variance sigma^2 = var/2.
    const double tol = 4.0 * std::sqrt(2.0) * (var / 2.0) / std::sqrt(static_cast<double>(n));
    CHECK_THAT(re2 / n, WithinAbs(var / 2.0, tol));
    CHECK_THAT(im2 / n, WithinAbs(var / 2.0, tol));
    CHECK_THAT(cross / n, WithinAbs(0.0, tol));
}

TEST_CASE("unit_phase has modulus one")
{
    RandomStream s({9, 0, 0, StreamPurpose::random_phase});
    for (int i = 0; i < 1000; ++i)
        CHECK_THAT(std::abs(s.unit_phase()), WithinAbs(1.0, 1e-15));
}
