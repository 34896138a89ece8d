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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irspilot
{
    // Invalid arguments or broken invariants in user-supplied data.
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Model evaluated outside its domain (e.g. distance below the 1 m reference).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Malformed scenario / experiment text.
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(const std::string &msg, std::size_t line)
            : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // The refined allocation degenerates: radicand (1/beta_k) sum_j beta_j M_j - 1 <= 0.
    class DegenerateAllocation : public std::runtime_error
    {
    public:
        DegenerateAllocation(const std::string &msg, std::size_t irs)
            : std::runtime_error(msg), irs_(irs) {}
        std::size_t irs() const noexcept { return irs_; }

    private:
        std::size_t irs_;
    };

    class NoConvergence : public std::runtime_error
    {
    public:
        NoConvergence(const std::string &msg, double residual)
            : std::runtime_error(msg), residual_(residual) {}
        double residual() const noexcept { return residual_; }

    private:
        double residual_;
    };

    // Brute-force search requested on a problem that is too large.
    class Intractable : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
