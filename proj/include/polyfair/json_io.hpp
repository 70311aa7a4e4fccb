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

// JSON forms of oracles and results.

#ifndef POLYFAIR_JSON_IO_HPP_
#define POLYFAIR_JSON_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "polyfair/channels.hpp"
#include "polyfair/fairness.hpp"
#include "polyfair/polymatroid.hpp"
#include "polyfair/ratesplit.hpp"
#include "polyfair/setfn.hpp"
#include "polyfair/timeshare.hpp"

namespace polyfair {

using Json = nlohmann::ordered_json;

enum class OracleKind { kTabular, kGaussianMac, kLogdet };

struct OracleSpec {
  OracleKind kind = OracleKind::kTabular;
  LogBase base = LogBase::kNatural;
  std::optional<TabularRank> table;
  std::optional<GaussianMacParams> mac;
  std::vector<HermitianPSD> d;

  RankOracle oracle() const;
};

// Parses text; syntax errors throw kSchema with the byte offset, schema
// violations throw kSchema naming the offending field. `base_override`
// wins over a "base" field in the document.
OracleSpec parse_oracle_spec(const std::string& text,
                             std::optional<LogBase> base_override = std::nullopt);
OracleSpec oracle_spec_from_json(const nlohmann::json& doc,
                                 std::optional<LogBase> base_override = std::nullopt);

Json to_json(const OracleSpec& spec);
Json to_json(const TabularRank& table);
Json to_json(const std::vector<HermitianPSD>& d, LogBase base);
Json to_json(const GaussianMacParams& mac);

Json labels_json(SubsetMask s);
Json to_json(const Permutation& perm);
Json to_json(const ValidationReport& report);
Json to_json(const CornerPoint& corner);
Json to_json(const FairDecomposition& dec);
Json to_json(const TimeShare& share);
Json to_json(const SplitSchedule& schedule);
Json to_json(const MembershipReport& report);

// "[1,2]", "1,2" and "1 2" all parse to {1, 2}.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace polyfair

#endif  // POLYFAIR_JSON_IO_HPP_
