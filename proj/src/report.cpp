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

#include "qlock/report.hpp"

namespace qlock::report {

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["experiment"] = experiment;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["rng_seed"] = rng_seed;
  j["metrics"] = nlohmann::json::object();
  for (const auto& [k, v] : metrics) j["metrics"][k] = v;
  j["runtime_ms"] = runtime_ms;
  return j;
}

std::string ExperimentReport::to_string() const { return to_json().dump(2) + "\n"; }

}  // namespace qlock::report
