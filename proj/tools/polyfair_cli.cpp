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

// polyfair: command-line front end.
//
// Exit codes: 0 success, 1 malformed input or usage error, 2 the oracle is
// not a rank function (validate), 3 numerical non-convergence.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polyfair/channels.hpp"
#include "polyfair/fairness.hpp"
#include "polyfair/instances.hpp"
#include "polyfair/json_io.hpp"
#include "polyfair/polymatroid.hpp"
#include "polyfair/ratesplit.hpp"
#include "polyfair/timeshare.hpp"

namespace pf = polyfair;

namespace {

struct Options {
  std::string input;
  double tol = pf::kDefaultValidationTol;
  std::string log_base;
  std::string output = "json";
  std::string perm;
  std::string target;
  std::string point;
  std::string gen_kind;
  int gen_n = 3;
  int gen_m = 2;
  unsigned long long seed = 0;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pf::Error(pf::ErrorCode::kSchema, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int exit_code_for(pf::ErrorCode code) {
  switch (code) {
    case pf::ErrorCode::kConvergenceFailure:
    case pf::ErrorCode::kTimeShareNotConverged:
    case pf::ErrorCode::kSplitInfeasible:
      return 3;
    default:
      return 1;
  }
}

void emit(const pf::Json& out, const Options& opt) {
  std::cout << (opt.output == "pretty" ? out.dump(2) : out.dump()) << '\n';
}

pf::Json corner_json(const pf::CornerPoint& c) { return pf::to_json(c); }

// Runs one command against the parsed oracle; returns the exit code.
int run(const std::string& command, const Options& opt) {
  pf::Json out;
  out["command"] = command;

  if (command == "gen") {
    pf::Rng rng(opt.seed);
    if (opt.gen_kind == "tabular") {
      out["instance"] = pf::to_json(pf::random_submodular_table(opt.gen_n, rng));
    } else {
      if (opt.gen_n < 1 || opt.gen_n > pf::kMaxGroundSize || opt.gen_m < 1) {
        throw pf::Error(pf::ErrorCode::kSizeLimit, "--n or --m out of range");
      }
      const pf::LogBase base = opt.log_base.empty() ? pf::LogBase::kNatural
                                                    : pf::parse_log_base(opt.log_base);
      out["instance"] = pf::to_json(pf::random_logdet(opt.gen_n, opt.gen_m, rng), base);
    }
    emit(out["instance"], opt);
    return 0;
  }

  std::optional<pf::LogBase> override_base;
  if (!opt.log_base.empty()) override_base = pf::parse_log_base(opt.log_base);
  const pf::OracleSpec spec = pf::parse_oracle_spec(read_input(opt.input), override_base);
  const pf::RankOracle f = spec.oracle();
  int code = 0;

  if (command == "validate") {
    const pf::ValidationReport report = pf::validate_rank(f, opt.tol);
    out.update(pf::to_json(report));
    code = report.ok() ? 0 : 2;
  } else if (command == "corner") {
    out.update(corner_json(pf::corner_point(f, pf::Permutation(pf::parse_int_list(opt.perm)))));
  } else if (command == "corners-all") {
    if (f.size() > pf::kMaxPermutationEnumeration) {
      throw pf::Error(pf::ErrorCode::kSizeLimit, "corners-all enumerates at most 8! orders");
    }
    std::vector<int> order(f.size());
    for (int i = 0; i < f.size(); ++i) order[i] = i + 1;
    pf::Json corners = pf::Json::array();
    do {
      corners.push_back(corner_json(pf::corner_point(f, pf::Permutation(order))));
    } while (std::next_permutation(order.begin(), order.end()));
    out["corners"] = corners;
  } else if (command == "maxmin-corner" || command == "minmax-corner") {
    const bool maxmin = command == "maxmin-corner";
    const pf::CornerPoint c = maxmin ? pf::maxmin_corner(f) : pf::minmax_corner(f);
    out.update(corner_json(c));
    if (maxmin) {
      out["min_rate"] = *std::min_element(c.rates.begin(), c.rates.end());
    } else {
      out["max_rate"] = *std::max_element(c.rates.begin(), c.rates.end());
    }
  } else if (command == "maxmin-value") {
    const pf::DinkelbachResult r = pf::min_ratio_dinkelbach(f);
    out["value"] = r.beta;
    out["set"] = pf::labels_json(r.set);
    pf::Json minimizers = pf::Json::array();
    for (pf::SubsetMask s : r.trace.minimizers) minimizers.push_back(pf::labels_json(s));
    out["trace"] = {{"betas", r.trace.betas}, {"minimizers", minimizers}};
  } else if (command == "fair-point") {
    out.update(pf::to_json(pf::fair_point(f)));
  } else if (command == "timeshare") {
    out.update(pf::to_json(pf::timeshare_to_point(f, pf::parse_real_list(opt.target))));
  } else if (command == "decompose") {
    const pf::FairDecomposition dec = pf::fair_point(f);
    out["decomposition"] = pf::to_json(dec);
    out.update(pf::to_json(pf::decompose_fair_timeshare(f, dec)));
  } else if (command == "ratesplit") {
    const pf::FairDecomposition dec = pf::fair_point(f);
    out["decomposition"] = pf::to_json(dec);
    out.update(pf::to_json(pf::ratesplit_schedule(dec, spec.mac)));
  } else if (command == "membership") {
    const std::vector<double> x = pf::parse_real_list(opt.point);
    if (static_cast<int>(x.size()) != f.size()) {
      throw pf::Error(pf::ErrorCode::kInvalidParameter, "--point has the wrong length");
    }
    out.update(pf::to_json(pf::check_membership(f, x, opt.tol)));
    out["on_face"] = pf::on_face(f, x, opt.tol);
  }
  out["log_base"] = pf::to_string(f.log_base());
  out["tol"] = opt.tol;
  emit(out, opt);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Polymatroid rank functions and fair rate allocation"};
  app.require_subcommand(1, 1);
  app.add_option("--input", opt.input, "Oracle JSON file (default: standard input)");
  app.add_option("--tol", opt.tol, "Relative tolerance for validate and membership")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-base", opt.log_base, "Logarithm base for channel oracles")
      ->check(CLI::IsMember({"e", "2"}));
  app.add_option("--output", opt.output, "Output style")->check(CLI::IsMember({"json", "pretty"}));

  app.add_subcommand("validate", "Check the rank-function axioms");
  app.add_subcommand("corner", "Corner point of a permutation")
      ->add_option("--perm", opt.perm, "Permutation of 1..n, e.g. [2,1,3]")
      ->required();
  app.add_subcommand("corners-all", "All corner points (n <= 8)");
  app.add_subcommand("maxmin-corner", "Max-min corner point");
  app.add_subcommand("minmax-corner", "Min-max corner point (greedy)");
  app.add_subcommand("maxmin-value", "Max-min value by Dinkelbach's method");
  app.add_subcommand("fair-point", "Leximin fair point and its block decomposition");
  app.add_subcommand("timeshare", "Time-sharing coefficients for a face point")
      ->add_option("--target", opt.target, "Point on the dominant face")
      ->required();
  app.add_subcommand("decompose", "Block-product time sharing of the fair point");
  app.add_subcommand("ratesplit", "Rate-splitting decode schedule of the fair point");
  app.add_subcommand("membership", "Membership and face tests")
      ->add_option("--point", opt.point, "Rate vector in label order")
      ->required();
  CLI::App* gen = app.add_subcommand("gen", "Random test instance");
  gen->add_option("kind", opt.gen_kind, "tabular or logdet")
      ->required()
      ->check(CLI::IsMember({"tabular", "logdet"}));
  gen->add_option("--n", opt.gen_n, "Ground set size")->check(CLI::Range(1, pf::kMaxGroundSize));
  gen->add_option("--m", opt.gen_m, "Matrix dimension (logdet)")->check(CLI::Range(1, 16));
  gen->add_option("--seed", opt.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const pf::Error& e) {
    pf::Json err = {{"command", command},
                    {"error", pf::to_string(e.code())},
                    {"message", e.what()}};
    std::cout << err.dump() << '\n';
    std::cerr << "polyfair: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}
