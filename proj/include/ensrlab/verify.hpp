// Copyright 2026 The ensrlab Authors
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

#ifndef ENSRLAB_VERIFY_HPP_
#define ENSRLAB_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ensrlab/rng.hpp"
#include "ensrlab/serialize.hpp"

namespace ensrlab {

// One verified claim: observed must stay within tolerance of expected (or
// below it, for violation-style observations where expected is 0).
struct ClaimCheck {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<ClaimCheck> claims;
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 0x243F6A8885A308D3ULL;
  double grid_resolution = 0.02;
  int restarts = 16;
  std::size_t bins = 128;
  int trials = 50;
  int threads = 0;
};

// Suites: bounds, convexity, biso, tensor, gaussian. "all" runs every one.
SuiteReport run_bounds_suite(const VerifyConfig& cfg);
SuiteReport run_convexity_suite(const VerifyConfig& cfg);
SuiteReport run_biso_suite(const VerifyConfig& cfg);
SuiteReport run_tensor_suite(const VerifyConfig& cfg);
SuiteReport run_gaussian_suite(const VerifyConfig& cfg);

std::vector<SuiteReport> run_suites(const std::string& which,
                                    const VerifyConfig& cfg);

Json suite_report_to_json(const SuiteReport& rep);
Json suites_to_json(const std::vector<SuiteReport>& reps,
                    const VerifyConfig& cfg);

// Deterministic random test fixtures shared with the unit suites.
JointDistribution random_joint(Rng& rng, std::size_t nx, std::size_t ny);
Channel random_channel(Rng& rng, const Alphabet& input, std::size_t z_size);

}  // namespace ensrlab

#endif  // ENSRLAB_VERIFY_HPP_
