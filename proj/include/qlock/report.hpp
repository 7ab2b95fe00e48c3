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

#ifndef QLOCK_REPORT_HPP_
#define QLOCK_REPORT_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace qlock::report {

/* Experiment record. Serialization uses sorted keys and exact-round-trip
   number formatting, so re-running with identical parameters and seed
   reproduces the metrics block byte for byte; runtime_ms is the only
   field allowed to differ between runs. */
struct ExperimentReport {
  int schema_version = 1;
  std::string experiment;
  std::map<std::string, nlohmann::json> params;
  std::uint64_t rng_seed = 0;
  std::map<std::string, double> metrics;
  std::int64_t runtime_ms = 0;

  nlohmann::json to_json() const;
  std::string to_string() const;  // pretty, trailing newline
};

}  // namespace qlock::report

#endif  // QLOCK_REPORT_HPP_
