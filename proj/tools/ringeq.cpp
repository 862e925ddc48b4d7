// Copyright 2026 The ringeq Authors
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

// Command-line front end. Exit codes: 0 verdict produced, 2 invalid input,
// 3 internal assertion.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ringeq/ringeq.hpp"

namespace {

using namespace ringeq;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json load(const std::string& path) {
  try {
    return parse_json_text(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path.string());
  out << j.dump(2) << "\n";
}

int cmd_analyze(const std::string& file, const std::string& start, const std::string& dir) {
  const RingInstance ring = ring_from_json(load(file));
  const Sign direction = dir == "neg" ? Sign::kNegative : Sign::kPositive;
  const int s = start.empty() ? 0 : ring.vertex_index(start);
  const CoverageReport cov = uniqueness_verdict(ring, /*full=*/true);
  std::cout << render_report(coverage_report(ring, cov, round_trip_scan(ring, s, direction), s,
                                             direction));
  return kExitOk;
}

int cmd_counterexample(const std::string& file, const std::string& outdir,
                       const std::string& construction) {
  const RingInstance ring = ring_from_json(load(file));
  Counterexample ce;
  try {
    if (construction == "merged") {
      ce = merge_two_class(ring);
    } else if (construction == "three" || (construction == "auto" && ring.num_demands() <= 3)) {
      ce = build_three_class(ring);
    } else {
      ce = extend_many_od(ring);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotApplicable) throw;
    std::cout << "no counterexample: " << e.what() << "\n";
    const CoverageReport cov = uniqueness_verdict(ring, true);
    std::cout << render_report(coverage_report(ring, cov));
    return kExitOk;
  }
  std::filesystem::create_directories(outdir);
  const std::filesystem::path dir(outdir);
  write_file(dir / "game.json", to_json(ce.game));
  write_file(dir / "sigma.json", to_json(ce.sigma));
  write_file(dir / "sigma_hat.json", to_json(ce.sigma_hat));
  Json prov = to_json(ce.provenance);
  prov["ring"] = to_json(ring);
  write_file(dir / "provenance.json", prov);
  // Re-read what was written and verify from the files.
  const GameInstance game = game_from_json(load((dir / "game.json").string()));
  const StrategyProfile sigma = profile_from_json(load((dir / "sigma.json").string()));
  const StrategyProfile sigma_hat = profile_from_json(load((dir / "sigma_hat.json").string()));
  const EquilibriumReport a = verify_equilibrium(game, sigma);
  const EquilibriumReport b = verify_equilibrium(game, sigma_hat);
  if (!a.is_strict() || !b.is_strict() || a.flow == b.flow) {
    throw Error(ErrorCode::kVerificationFailed, "written counterexample failed re-verification");
  }
  std::cout << render_report(counterexample_report(ce));
  std::cout << "wrote game.json, sigma.json, sigma_hat.json, provenance.json to " << outdir << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& game_file, const std::string& profile_file) {
  const GameInstance game = game_from_json(load(game_file));
  const StrategyProfile p = profile_from_json(load(profile_file));
  std::cout << render_report(equilibrium_report(game, p, verify_equilibrium(game, p)));
  return kExitOk;
}

int cmd_search(const std::string& game_file, int m) {
  const GameInstance game = game_from_json(load(game_file));
  const auto res = grid_equilibrium_search(game, m, grid_cap_from_env());
  std::cout << render_report(grid_report(game, m, res));
  return kExitOk;
}

int cmd_strong(const std::string& file) {
  const GeneralGraph g = graph_from_json(load(file));
  std::cout << render_report(strong_report(g, strong_uniqueness(g)));
  return kExitOk;
}

int cmd_scan(const std::string& graph_file, const std::string& demand_file, int max_cycle) {
  const GeneralGraph g = graph_from_json(load(graph_file));
  const auto demands = demands_from_json(load(demand_file));
  ScanOptions opt;
  opt.max_cycle_length = max_cycle;
  std::cout << render_report(scan_report(demands, scan_cycle_obstructions(g, demands, opt)));
  return kExitOk;
}

int cmd_catalog_enumerate(const std::string& side) {
  if (side == "obstruction") {
    std::cout << render_report(
        catalog_report(CatalogSide::kObstruction, enumerate_minimal_obstructions()));
  } else {
    std::cout << render_report(
        catalog_report(CatalogSide::kUniqueness, enumerate_maximal_uniqueness()));
  }
  return kExitOk;
}

int cmd_catalog_match(const std::string& file) {
  const RingInstance ring = ring_from_json(load(file));
  std::cout << render_report(match_report(match_catalog(ring)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium uniqueness for congestion games on ring networks"};
  app.require_subcommand(1);

  std::string file, file2, start, direction = "pos", outdir, construction = "auto", side;
  int resolution = 4;
  int max_cycle = 12;
  int status = kExitOk;

  auto* analyze = app.add_subcommand("analyze", "coverage verdict for a ring");
  analyze->add_option("ring", file, "ring JSON file")->required();
  analyze->add_option("--start", start, "start vertex of the round trip");
  analyze->add_option("--direction", direction, "pos or neg")
      ->check(CLI::IsMember({"pos", "neg"}));

  auto* counter = app.add_subcommand("counterexample", "build two distinct strict equilibria");
  counter->add_option("ring", file, "ring JSON file")->required();
  counter->add_option("-o,--output", outdir, "output directory")->required();
  counter->add_option("--construction", construction, "auto, three, many or merged")
      ->check(CLI::IsMember({"auto", "three", "many", "merged"}));

  auto* verify = app.add_subcommand("verify", "check a profile against a game");
  verify->add_option("game", file, "game JSON file")->required();
  verify->add_option("profile", file2, "profile JSON file")->required();

  auto* search = app.add_subcommand("search", "grid search for equilibria");
  search->add_option("game", file, "game JSON file")->required();
  search->add_option("--resolution", resolution, "grid resolution m")->check(CLI::PositiveNumber);

  auto* strong = app.add_subcommand("strong", "strong uniqueness of a supply graph");
  strong->add_option("graph", file, "graph JSON file")->required();

  auto* scan = app.add_subcommand("scan", "look for ring obstructions in a general graph");
  scan->add_option("graph", file, "graph JSON file")->required();
  scan->add_option("demands", file2, "demands JSON file")->required();
  scan->add_option("--max-cycle", max_cycle, "longest cycle examined")->check(CLI::PositiveNumber);

  auto* catalog = app.add_subcommand("catalog", "extremal ring catalogs");
  catalog->require_subcommand(1);
  auto* enumerate = catalog->add_subcommand("enumerate", "list a catalog");
  enumerate->add_option("--side", side, "obstruction or uniqueness")
      ->required()
      ->check(CLI::IsMember({"obstruction", "uniqueness"}));
  auto* match = catalog->add_subcommand("match", "locate a ring in the catalogs");
  match->add_option("ring", file, "ring JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*analyze) status = cmd_analyze(file, start, direction);
    else if (*counter) status = cmd_counterexample(file, outdir, construction);
    else if (*verify) status = cmd_verify(file, file2);
    else if (*search) status = cmd_search(file, resolution);
    else if (*strong) status = cmd_strong(file);
    else if (*scan) status = cmd_scan(file, file2, max_cycle);
    else if (*enumerate) status = cmd_catalog_enumerate(side);
    else if (*match) status = cmd_catalog_match(file);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return is_internal_error(e.code()) ? kExitInternal : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return status;
}
