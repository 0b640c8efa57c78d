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

#include "ensrlab/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ensrlab/error.hpp"

namespace ensrlab {

namespace {

std::vector<double> doubles_from(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError("missing array field '" + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ParseError("non-numeric entry in '" + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix matrix_from(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError("missing matrix field '" + key + "'");
  const auto& rows = j[key];
  if (rows.empty()) throw ParseError("empty matrix in '" + key + "'");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != m.cols())
      throw ParseError("ragged matrix in '" + key + "'");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!rows[r][c].is_number())
        throw ParseError("non-numeric entry in '" + key + "'");
      m(r, c) = rows[r][c].get<double>();
    }
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

double number_field(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError("missing numeric field '" + key + "'");
  return j[key].get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

JointDistribution joint_from_json(const Json& j) {
  return JointDistribution(Alphabet(doubles_from(j, "x_alphabet")),
                           Alphabet(doubles_from(j, "y_alphabet")),
                           matrix_from(j, "pmf"));
}

Json joint_to_json(const JointDistribution& j) {
  Json out;
  out["x_alphabet"] = j.row_alphabet().points();
  out["y_alphabet"] = j.col_alphabet().points();
  out["pmf"] = matrix_to_json(j.pmf());
  return out;
}

JointDistribution load_joint(const std::string& path) {
  return joint_from_json(load_json_file(path));
}

JointDistribution load_joint_or_biso(const std::string& path) {
  const Json j = load_json_file(path);
  if (j.contains("kind")) return induced_joint(biso_from_json(j));
  return joint_from_json(j);
}

Channel channel_from_json(const Json& j) {
  return Channel(Alphabet(doubles_from(j, "input_alphabet")),
                 Alphabet(doubles_from(j, "output_alphabet")),
                 matrix_from(j, "rows"));
}

Json channel_to_json(const Channel& ch) {
  Json out;
  out["input_alphabet"] = ch.input().points();
  out["output_alphabet"] = ch.output().points();
  out["rows"] = matrix_to_json(ch.matrix());
  return out;
}

BisoChannel biso_from_json(const Json& j) {
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("BISO spec needs a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  const double p = j.contains("p") ? number_field(j, "p") : 0.5;
  if (kind == "bsc") return make_bsc(number_field(j, "alpha"), p);
  if (kind == "bec") return make_bec(number_field(j, "delta"), p);
  if (kind == "custom")
    return build_biso(p, doubles_from(j, "x_values"), matrix_from(j, "trans"));
  throw ParseError("unknown BISO kind '" + kind + "'");
}

GaussianCliSpec gaussian_spec_from_json(const Json& j) {
  GaussianCliSpec spec;
  if (j.contains("rho")) {
    spec.transformed = false;
    spec.pair.rho = number_field(j, "rho");
    spec.pair.var_y = j.contains("var_y") ? number_field(j, "var_y") : 1.0;
    spec.pair.var_x = j.contains("var_x") ? number_field(j, "var_x") : 1.0;
    return spec;
  }
  if (j.contains("x")) {
    if (j["x"].get<std::string>() != "y_plus_laplace")
      throw ParseError("only the y_plus_laplace construction is supported");
    spec.transformed = true;
    spec.transform.y_kind = RefDist::kGaussian;
    spec.transform.var_y = j.contains("var_y") ? number_field(j, "var_y") : 1.0;
    spec.transform.laplace_scale = number_field(j, "scale");
    return spec;
  }
  throw ParseError("gaussian spec needs either 'rho' or 'x'");
}

Json spectral_report_to_json(const SpectralReport& rep) {
  Json out;
  out["rho_m"] = rep.rho_m;
  out["rho_m_sq"] = rep.rho_m * rep.rho_m;
  out["sigma_min"] = rep.sigma_min;
  out["singular_values"] = rep.singular_values;
  out["optimal_f"] = rep.optimal_f;
  out["optimal_g"] = rep.optimal_g;
  out["degenerate"] = rep.degenerate;
  out["sigma2_multiplicity"] = rep.sigma2_multiplicity;
  return out;
}

Json filter_solution_to_json(const FilterSolution& s) {
  Json out;
  out["ensr"] = s.ensr;
  out["privacy_strong"] = s.privacy_strong;
  out["privacy_weak"] = s.privacy_weak;
  out["method"] = to_string(s.method);
  out["restarts_used"] = s.restarts_used;
  out["eps"] = s.eps;
  out["slack"] = s.slack;
  out["clamped"] = s.clamped;
  out["filter"] = channel_to_json(s.filter);
  return out;
}

Json privacy_curve_to_json(const PrivacyCurve& curve) {
  Json out;
  out["kind"] = curve.kind == CurveKind::kMeps
                    ? "m_eps"
                    : (curve.kind == CurveKind::kWeps ? "w_eps" : "p_error");
  Json points = Json::array();
  for (const auto& p : curve.points) {
    Json entry;
    entry["eps"] = p.eps;
    entry["value"] = p.value;
    entry["solution"] = filter_solution_to_json(p.solution);
    points.push_back(std::move(entry));
  }
  out["points"] = std::move(points);
  return out;
}

std::string privacy_curve_to_csv(const PrivacyCurve& curve,
                                 const JointDistribution& joint) {
  const ConstraintKind kind = curve.kind == CurveKind::kWeps
                                  ? ConstraintKind::kWeak
                                  : ConstraintKind::kStrong;
  const double cap =
      kind == ConstraintKind::kStrong ? strong_cap(joint) : weak_cap(joint);
  std::ostringstream out;
  out << "eps,value,erasure_bound,chord_bound,method,slack\n";
  for (const auto& p : curve.points) {
    const double erasure = erasure_filter(joint, p.eps, kind).ensr;
    const double chord =
        cap > 0.0 ? 1.0 - std::min(p.eps, cap) / cap : 0.0;
    out << format_double(p.eps) << ',' << format_double(p.value) << ','
        << format_double(erasure) << ',' << format_double(chord) << ','
        << to_string(p.solution.method) << ','
        << format_double(p.solution.slack) << '\n';
  }
  return out.str();
}

std::string p_error_report_to_csv(const PErrorReport& rep) {
  std::ostringstream out;
  out << "eps,p_error,w_eps,lower_bound,upper_bound,sandwich_ok\n";
  for (const auto& p : rep.points) {
    out << format_double(p.eps) << ',' << format_double(p.p_error) << ','
        << format_double(p.w_eps) << ','
        << format_double(p.w_eps * rep.var_y) << ','
        << format_double(2.0 * p.w_eps * rep.var_y) << ','
        << (p.sandwich_ok ? "1" : "0") << '\n';
  }
  return out.str();
}

Json p_error_report_to_json(const PErrorReport& rep) {
  Json out;
  out["var_y"] = rep.var_y;
  out["sandwich_ok"] = rep.sandwich_ok;
  Json points = Json::array();
  for (const auto& p : rep.points) {
    Json entry;
    entry["eps"] = p.eps;
    entry["p_error"] = p.p_error;
    entry["w_eps"] = p.w_eps;
    entry["sandwich_ok"] = p.sandwich_ok;
    points.push_back(std::move(entry));
  }
  out["points"] = std::move(points);
  return out;
}

std::vector<double> parse_eps_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0, step = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
        step <= 0.0)
      throw ParseError("grid must be start:stop:step with positive step");
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ParseError("bad number in eps list: '" + item + "'");
      }
    }
  }
  if (out.empty()) throw ParseError("empty eps grid");
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    Json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

}  // namespace ensrlab
