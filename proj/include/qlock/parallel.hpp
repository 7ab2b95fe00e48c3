// Copyright 2026 The qlock authors
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

#ifndef QLOCK_PARALLEL_HPP_
#define QLOCK_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace qlock {

// Thread count cap from QLOCK_THREADS (default: hardware concurrency).
int max_threads();

/* Runs fn(i) for i in [0, count). Tasks must write results into
   index-addressed slots; callers reduce sequentially afterwards so that
   reported sums do not depend on scheduling. */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace qlock

#endif  // QLOCK_PARALLEL_HPP_
