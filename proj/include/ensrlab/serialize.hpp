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

#ifndef ENSRLAB_SERIALIZE_HPP_
#define ENSRLAB_SERIALIZE_HPP_

#include <string>

#include <json.hpp>

#include "ensrlab/biso.hpp"
#include "ensrlab/dependence.hpp"
#include "ensrlab/filter_search.hpp"
#include "ensrlab/gaussian.hpp"
#include "ensrlab/prob_core.hpp"

namespace ensrlab {

using Json = nlohmann::ordered_json;

// 12 significant digits, C locale; the CSV number format.
std::string format_double(double v);

// {"x_alphabet": [...], "y_alphabet": [...], "pmf": [[...], ...]} with the
// row index ranging over x.
JointDistribution joint_from_json(const Json& j);
Json joint_to_json(const JointDistribution& j);
JointDistribution load_joint(const std::string& path);

// {"input_alphabet": [...], "output_alphabet": [...], "rows": [[...], ...]}
// with rows indexed by the input.
Channel channel_from_json(const Json& j);
Json channel_to_json(const Channel& ch);

// The CLI accepts either a joint pmf file or a BISO channel spec (detected
// by its "kind" field), which is expanded to the induced (X, Y) joint.
JointDistribution load_joint_or_biso(const std::string& path);

// {"p":0.5,"kind":"bsc","alpha":0.1} | {"p":...,"kind":"bec","delta":...} |
// {"p":...,"kind":"custom","x_values":[...],"trans":[[...],[...]]}
BisoChannel biso_from_json(const Json& j);

// {"rho":0.8,"var_y":1.0[,"var_x":1.0]} or
// {"y":"gaussian","x":"y_plus_laplace","scale":1.0[,"var_y":1.0]}
struct GaussianCliSpec {
  bool transformed = false;
  GaussianPair pair;
  TransformedSpec transform;
};
GaussianCliSpec gaussian_spec_from_json(const Json& j);

Json spectral_report_to_json(const SpectralReport& rep);
Json filter_solution_to_json(const FilterSolution& s);
Json privacy_curve_to_json(const PrivacyCurve& curve);

// CSV columns: eps,value,erasure_bound,chord_bound,method,slack.
std::string privacy_curve_to_csv(const PrivacyCurve& curve,
                                 const JointDistribution& joint);
std::string p_error_report_to_csv(const PErrorReport& rep);
Json p_error_report_to_json(const PErrorReport& rep);

// eps grids: "start:stop:step" or a comma-separated list.
std::vector<double> parse_eps_grid(const std::string& text);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ensrlab

#endif  // ENSRLAB_SERIALIZE_HPP_
