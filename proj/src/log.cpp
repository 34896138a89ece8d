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

#include "irspilot/log.hpp"

#include <iostream>
#include <mutex>

namespace irspilot
{
    namespace
    {
        std::mutex sink_mutex;

        LogSink &sink_ref()
        {
            static LogSink sink = [](LogLevel level, std::string_view msg)
            {
                if (level == LogLevel::warning)
                    std::cerr << "irspilot warning: " << msg << '\n';
            };
            return sink;
        }
    }

    void set_log_sink(LogSink sink)
    {
        std::lock_guard lock(sink_mutex);
        sink_ref() = std::move(sink);
    }

    void log_message(LogLevel level, std::string_view message)
    {
        std::lock_guard lock(sink_mutex);
        if (auto &sink = sink_ref())
            sink(level, message);
    }
}
