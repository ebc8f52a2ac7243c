// Copyright 2026 The ragmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RAGMT_TIMEUTIL_H_
#define RAGMT_TIMEUTIL_H_

#include <chrono>
#include <functional>
#include <string>

namespace ragmt {

using TimePoint = std::chrono::system_clock::time_point;
using Clock = std::function<TimePoint()>;

// Wall clock, pinned to SOURCE_DATE_EPOCH (seconds since the epoch) when
// that variable is set.
Clock DefaultClock();

Clock FixedClock(TimePoint t);

// UTC, second precision: 2026-10-15T09:44:00Z
std::string FormatRfc3339(TimePoint t);

}  // namespace ragmt

#endif  // RAGMT_TIMEUTIL_H_
