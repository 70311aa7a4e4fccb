// Copyright 2026 The polyfair Authors.
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

#include "polyfair/json_io.hpp"

#include <cmath>
#include <sstream>

namespace polyfair {

namespace {

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorCode::kSchema, what);
}

double number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) schema(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(where + ": not finite");
  return x;
}

// "1,3" -> mask; labels ascending, unique, within 1..n.
SubsetMask parse_key(const std::string& key, int n) {
  if (key.empty()) return SubsetMask();
  std::vector<int> labels;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      schema("values: bad key \"" + key + "\"");
    }
    const int label = std::stoi(part);
    if (label < 1 || label > n) schema("values: label out of range in \"" + key + "\"");
    if (!labels.empty() && label <= labels.back()) {
      schema("values: key \"" + key + "\" is not strictly ascending");
    }
    labels.push_back(label);
  }
  if (key.back() == ',') schema("values: bad key \"" + key + "\"");
  return SubsetMask::of(labels);
}

std::string key_of(SubsetMask s) {
  std::string key;
  for (int label : s.labels()) {
    if (!key.empty()) key += ',';
    key += std::to_string(label);
  }
  return key;
}

ComplexMatrix parse_matrix(const nlohmann::json& v, const std::string& where) {
  if (!v.is_object() || !v.contains("re")) schema(where + ": expected {\"re\":..,\"im\":..}");
  auto grid = [&](const nlohmann::json& rows, const std::string& part) {
    if (!rows.is_array() || rows.empty()) schema(where + "." + part + ": expected a non-empty array");
    const std::size_t dim = rows.size();
    Eigen::MatrixXd out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (!rows[r].is_array() || rows[r].size() != dim) schema(where + "." + part + ": not square");
      for (std::size_t c = 0; c < dim; ++c) {
        out(r, c) = number(rows[r][c], where + "." + part);
      }
    }
    return out;
  };
  const Eigen::MatrixXd re = grid(v["re"], "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (v.contains("im")) {
    im = grid(v["im"], "im");
    if (im.rows() != re.rows()) schema(where + ": re and im differ in size");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

LogBase base_field(const nlohmann::json& doc) {
  if (!doc.contains("base")) return LogBase::kNatural;
  const auto& b = doc["base"];
  std::string text;
  if (b.is_string()) {
    text = b.get<std::string>();
  } else if (b.is_number_integer()) {
    text = std::to_string(b.get<long long>());
  } else {
    schema("base: expected \"e\" or \"2\"");
  }
  try {
    return parse_log_base(text);
  } catch (const Error&) {
    schema("base: expected \"e\" or \"2\"");
  }
}

}  // namespace

RankOracle OracleSpec::oracle() const {
  switch (kind) {
    case OracleKind::kTabular: return table->oracle(base);
    case OracleKind::kGaussianMac: return gaussian_mac_rank(*mac, base);
    case OracleKind::kLogdet: return logdet_rank(d, base);
  }
  throw Error(ErrorCode::kSchema, "unknown oracle kind");
}

OracleSpec parse_oracle_spec(const std::string& text, std::optional<LogBase> base_override) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchema,
                "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return oracle_spec_from_json(doc, base_override);
}

OracleSpec oracle_spec_from_json(const nlohmann::json& doc, std::optional<LogBase> base_override) {
  if (!doc.is_object()) schema("top level: expected an object");
  if (!doc.contains("type") || !doc["type"].is_string()) schema("type: missing");
  const std::string type = doc["type"].get<std::string>();
  OracleSpec spec;
  spec.base = base_override.value_or(base_field(doc));

  if (type == "tabular") {
    spec.kind = OracleKind::kTabular;
    if (!doc.contains("n") || !doc["n"].is_number_integer()) schema("n: expected an integer");
    const long long n = doc["n"].get<long long>();
    if (n < 1 || n > kMaxGroundSize) {
      schema("n: must lie in 1.." + std::to_string(kMaxGroundSize));
    }
    const GroundSet ground(static_cast<int>(n));
    if (!doc.contains("values") || !doc["values"].is_object()) schema("values: expected an object");
    std::vector<double> values(ground.subset_count(), 0.0);
    std::vector<bool> seen(ground.subset_count(), false);
    for (const auto& [key, v] : doc["values"].items()) {
      const SubsetMask s = parse_key(key, ground.size());
      const double x = number(v, "values[\"" + key + "\"]");
      if (s.empty()) {
        if (x != 0.0) schema("values: the empty set must be 0");
        continue;
      }
      if (seen[s.bits()]) schema("values: duplicate key for " + s.to_string());
      seen[s.bits()] = true;
      values[s.bits()] = x;
    }
    for (std::uint32_t bits = 1; bits < ground.subset_count(); ++bits) {
      if (!seen[bits]) schema("values: missing " + SubsetMask(bits).to_string());
    }
    spec.table.emplace(ground, std::move(values));
  } else if (type == "gaussian_mac") {
    spec.kind = OracleKind::kGaussianMac;
    if (!doc.contains("snr") || !doc["snr"].is_array() || doc["snr"].empty()) {
      schema("snr: expected a non-empty array");
    }
    if (doc["snr"].size() > static_cast<std::size_t>(kMaxGroundSize)) schema("snr: too many users");
    GaussianMacParams mac;
    for (const auto& v : doc["snr"]) {
      const double p = number(v, "snr");
      if (p < 0) schema("snr: must be nonnegative");
      mac.snrs.push_back(p);
    }
    spec.mac = std::move(mac);
  } else if (type == "logdet") {
    spec.kind = OracleKind::kLogdet;
    if (!doc.contains("D") || !doc["D"].is_array() || doc["D"].empty()) {
      schema("D: expected a non-empty array");
    }
    if (doc["D"].size() > static_cast<std::size_t>(kMaxGroundSize)) schema("D: too many users");
    for (std::size_t i = 0; i < doc["D"].size(); ++i) {
      const std::string where = "D[" + std::to_string(i) + "]";
      const ComplexMatrix m = parse_matrix(doc["D"][i], where);
      try {
        spec.d.emplace_back(m);
      } catch (const Error& e) {
        schema(where + ": " + e.what());
      }
      if (spec.d.back().dim() != spec.d.front().dim()) schema(where + ": dimension mismatch");
    }
  } else {
    schema("type: unknown \"" + type + "\"");
  }
  return spec;
}

Json to_json(const TabularRank& table) {
  Json values = Json::object();
  for (std::uint32_t bits = 1; bits < table.ground().subset_count(); ++bits) {
    values[key_of(SubsetMask(bits))] = table.values()[bits];
  }
  return {{"type", "tabular"}, {"n", table.ground().size()}, {"values", values}};
}

Json to_json(const std::vector<HermitianPSD>& d, LogBase base) {
  Json list = Json::array();
  for (const HermitianPSD& m : d) {
    Json re = Json::array(), im = Json::array();
    for (int r = 0; r < m.dim(); ++r) {
      Json re_row = Json::array(), im_row = Json::array();
      for (int c = 0; c < m.dim(); ++c) {
        re_row.push_back(m.matrix()(r, c).real());
        im_row.push_back(m.matrix()(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    list.push_back({{"re", re}, {"im", im}});
  }
  return {{"type", "logdet"}, {"base", to_string(base)}, {"D", list}};
}

Json to_json(const GaussianMacParams& mac) {
  return {{"type", "gaussian_mac"}, {"snr", mac.snrs}};
}

Json to_json(const OracleSpec& spec) {
  switch (spec.kind) {
    case OracleKind::kTabular: return to_json(*spec.table);
    case OracleKind::kGaussianMac: {
      Json out = to_json(*spec.mac);
      out["base"] = to_string(spec.base);
      return out;
    }
    case OracleKind::kLogdet: return to_json(spec.d, spec.base);
  }
  return nullptr;
}

Json labels_json(SubsetMask s) { return s.labels(); }

Json to_json(const Permutation& perm) { return perm.order(); }

Json to_json(const ValidationReport& report) {
  Json out;
  out["ok"] = report.ok();
  out["normalized_ok"] = report.normalized_ok;
  out["monotone_ok"] = report.monotone_ok;
  out["submodular_ok"] = report.submodular_ok;
  if (report.witness) {
    out["witness"] = {{"axiom", to_string(report.witness->axiom)},
                      {"S", labels_json(report.witness->first)},
                      {"T", labels_json(report.witness->second)}};
  } else {
    out["witness"] = nullptr;
  }
  out["tolerance_applied"] = report.tolerance;
  return out;
}

Json to_json(const CornerPoint& corner) {
  return {{"perm", to_json(corner.perm)}, {"rates", corner.rates}};
}

Json to_json(const FairDecomposition& dec) {
  Json blocks = Json::array();
  for (SubsetMask b : dec.blocks) blocks.push_back(labels_json(b));
  const LogBase base = dec.chain.empty() ? LogBase::kNatural : dec.chain.front().log_base();
  return {{"blocks", blocks},
          {"levels", dec.levels},
          {"x_star", dec.fair_point},
          {"sum_rate", dec.sum_rate},
          {"log_base", to_string(base)}};
}

Json to_json(const TimeShare& share) {
  Json atoms = Json::array();
  for (const TimeShareAtom& a : share.atoms) {
    atoms.push_back({{"perm", to_json(a.perm)}, {"lambda", a.lambda}});
  }
  return {{"target", share.target},
          {"atoms", atoms},
          {"iterations", share.iterations},
          {"corners_generated", share.corners_generated},
          {"reconstruction_error", share.reconstruction_error}};
}

Json to_json(const SplitSchedule& schedule) {
  Json order = Json::array();
  for (const BlockSchedule& b : schedule.blocks) {
    Json stages = Json::array();
    for (const VirtualUser& v : b.stages) {
      Json stage = {{"user", v.real_user}};
      stage["snr"] = v.split_snr ? Json(*v.split_snr) : Json(nullptr);
      stage["rate"] = v.achieved_rate;
      stages.push_back(stage);
    }
    order.push_back({{"block", b.block}, {"stages", stages}});
  }
  return {{"decode_order", order}, {"log_base", to_string(schedule.base)}};
}

Json to_json(const MembershipReport& report) {
  return {{"inside", report.inside},
          {"negative_coordinate", report.negative_coordinate},
          {"tightest", labels_json(report.tightest)},
          {"min_slack", report.min_slack},
          {"tolerance_applied", report.tolerance}};
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::string body;
  for (char c : text) body += (c == '[' || c == ']' || c == ',') ? ' ' : c;
  std::stringstream in(body);
  std::vector<std::string> parts;
  for (std::string p; in >> p;) parts.push_back(p);
  return parts;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& p : split_list(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size()) throw Error(ErrorCode::kInvalidParameter, "not an integer: " + p);
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& p : split_list(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidParameter, "not a number: " + p);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace polyfair
