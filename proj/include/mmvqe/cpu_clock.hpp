// Copyright 2026 The mmvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMVQE_CPU_CLOCK_HPP
#define MMVQE_CPU_CLOCK_HPP

#include <time.h>

#include <chrono>

namespace mmvqe {

/// CPU time consumed by the calling thread. Unlike a wall clock it does not
/// advance while the thread is descheduled, which keeps short timings stable
/// on shared machines.
struct ThreadCpuClock {
  using duration = std::chrono::nanoseconds;
  using rep = duration::rep;
  using period = duration::period;
  using time_point = std::chrono::time_point<ThreadCpuClock>;
  static constexpr bool is_steady = true;

  static time_point now() noexcept {
    timespec ts{};
    ::clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return time_point(std::chrono::seconds(ts.tv_sec) + std::chrono::nanoseconds(ts.tv_nsec));
  }
};

inline double seconds_since(ThreadCpuClock::time_point start) {
  return std::chrono::duration<double>(ThreadCpuClock::now() - start).count();
}

}  // namespace mmvqe

#endif  // MMVQE_CPU_CLOCK_HPP
