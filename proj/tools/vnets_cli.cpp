/*
   Copyright 2026 The vnets Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end: classify-plane, classify-net, atlas, verify.
//
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 out-of-family input,
// 4 verification failure, 5 resource budget exhausted, 6 configuration error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "vnets/atlas.hpp"
#include "vnets/errors.hpp"
#include "vnets/io.hpp"
#include "vnets/verify.hpp"

namespace {

using vnets::io::Json;

enum Exit : int { kOk = 0, kInternal = 1, kUsage = 2, kOutOfFamily = 3, kVerifyFailed = 4, kResource = 5, kConfig = 6 };

struct RunConfig {
  unsigned q = 4;
  std::string modulus;
  unsigned workers = 1;
  std::size_t max_keys = std::size_t{1} << 28;
  std::string output;
  std::string format = "json";
  std::string input;
  bool exhaustive = false;
  std::string suite;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string dump_orbits;
};

std::shared_ptr<const vnets::Geometry> make_geometry(const RunConfig& cfg) {
  std::optional<std::uint32_t> modulus;
  if (!cfg.modulus.empty()) {
    try {
      modulus = static_cast<std::uint32_t>(std::stoul(cfg.modulus, nullptr, 0));
    } catch (const std::exception&) {
      throw vnets::UsageError("bad modulus '" + cfg.modulus + "'");
    }
  }
  if (cfg.q < 2 || cfg.q > 16) throw vnets::UsageError("q must be a power of 2 with 2 <= q <= 16");
  return vnets::Geometry::make(cfg.q, modulus);
}

vnets::Atlas make_atlas(const RunConfig& cfg) {
  return vnets::Atlas(make_geometry(cfg), vnets::AtlasOptions{cfg.workers, cfg.max_keys});
}

std::string read_input(const RunConfig& cfg) {
  if (cfg.input.empty() || cfg.input == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(cfg.input);
  if (!in) throw vnets::UsageError("cannot read " + cfg.input);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw vnets::UsageError("cannot write " + cfg.output);
  out << text;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + vnets::io::csv_field(cells[i]);
  return out + "\n";
}

Json classification_record(const vnets::Atlas& atlas, const vnets::Subspace5& plane) {
  const auto& f = atlas.field();
  Json rec;
  rec["plane"] = vnets::io::to_json(plane);
  const auto m = vnets::meet(f, plane, vnets::nucleus_plane(f));
  rec["intersection_with_nucleus_plane"] = m ? vnets::io::to_json(*m) : Json();
  try {
    const auto c = atlas.classify(plane);
    rec["label"] = std::string(vnets::to_string(c.label));
    rec["resolved_by"] = c.by_membership ? "membership" : "signature";
    rec["signature"] = vnets::io::to_json(c.signature);
    rec["od0"] = vnets::io::to_json(c.signature.od0);
    rec["od4"] = vnets::io::to_json(c.signature.od4);
    rec["cubic_type"] = std::string(vnets::to_string(c.signature.cubic));
  } catch (const vnets::OutOfFamilyError& e) {
    rec["label"] = Json();
    rec["out_of_family"] = true;
    rec["error"] = e.what();
  }
  return rec;
}

std::string classification_csv(const Json& records) {
  std::string out = csv_row({"label", "resolved_by", "r1", "r2n", "r2s", "r3", "h1", "h2r", "h2i", "h3", "cubic_type",
                             "nucleus_meet_dim", "plane_key"});
  for (const auto& r : records) {
    if (r["label"].is_null()) {
      out += csv_row({"", "out_of_family", "", "", "", "", "", "", "", "", "", "", r["plane"]["key"].get<std::string>()});
      continue;
    }
    std::vector<std::string> cells = {r["label"].get<std::string>(), r["resolved_by"].get<std::string>()};
    for (const auto& v : r["od0"]) cells.push_back(v.dump());
    for (const auto& v : r["od4"]) cells.push_back(v.dump());
    cells.push_back(r["cubic_type"].get<std::string>());
    cells.push_back(r["signature"]["nucleus_meet_dim"].dump());
    cells.push_back(r["plane"]["key"].get<std::string>());
    out += csv_row(cells);
  }
  return out;
}

/// Emits one record for an object input and an array for an array input.
int emit_records(const RunConfig& cfg, const Json& input, const std::function<Json(const Json&)>& one) {
  Json records = Json::array();
  const bool batch = input.is_array();
  if (batch) {
    for (const auto& item : input) records.push_back(one(item));
  } else {
    records.push_back(one(input));
  }
  bool out_of_family = false;
  for (const auto& r : records) out_of_family = out_of_family || r.contains("out_of_family");
  if (cfg.format == "csv") {
    write_output(cfg, classification_csv(records));
  } else {
    write_output(cfg, (batch ? records : records.front()).dump(2) + "\n");
  }
  return out_of_family ? kOutOfFamily : kOk;
}

int cmd_classify_plane(const RunConfig& cfg) {
  const auto atlas = make_atlas(cfg);
  const Json input = vnets::io::parse_json(read_input(cfg));
  return emit_records(cfg, input, [&](const Json& item) {
    return classification_record(atlas, vnets::io::plane_of(atlas.geometry(), item));
  });
}

int cmd_classify_net(const RunConfig& cfg) {
  const auto atlas = make_atlas(cfg);
  const auto& f = atlas.field();
  const Json input = vnets::io::parse_json(read_input(cfg));
  return emit_records(cfg, input, [&](const Json& item) {
    const auto net = vnets::io::net_of(f, item);
    const auto plane = vnets::plane_of_net(f, net);
    Json rec = classification_record(atlas, plane);
    Json forms = Json::array();
    for (const auto& form : vnets::canonical_net(f, net).forms) forms.push_back(vnets::io::to_json(form));
    rec["net"] = forms;
    Json base = Json::array();
    for (const auto& p : vnets::base_points(atlas.geometry(), net)) base.push_back(vnets::io::to_json(p));
    rec["base_points"] = base;
    rec["double_lines"] = vnets::double_line_count(f, net);
    return rec;
  });
}

int emit_report(const RunConfig& cfg, const vnets::Report& report) {
  if (cfg.format == "csv") {
    write_output(cfg, report.orbits.empty() ? vnets::io::checks_csv(report) : vnets::io::orbits_csv(report));
  } else {
    write_output(cfg, vnets::io::to_json(report).dump(2) + "\n");
  }
  for (const auto& c : report.checks) {
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << (c.details.empty() ? "" : " (" + c.details + ")") << "\n";
  }
  if (report.resource_exhausted) return kResource;
  return report.passed() ? kOk : kVerifyFailed;
}

void dump_orbits(const RunConfig& cfg, const vnets::Atlas& atlas) {
  const std::filesystem::path dir(cfg.dump_orbits);
  std::filesystem::create_directories(dir);
  for (vnets::OrbitLabel l : vnets::kAllLabels) {
    std::ofstream out(dir / (std::string(vnets::to_string(l)) + ".txt"));
    for (std::uint64_t k : atlas.orbit(l)->keys) {
      out << vnets::Subspace5::from_packed(k, atlas.field().degree()).hex_key() << "\n";
    }
  }
}

int cmd_atlas(const RunConfig& cfg) {
  if (cfg.q > 8) throw vnets::UsageError("atlas supports q <= 8");
  const auto atlas = make_atlas(cfg);
  const auto mode = cfg.exhaustive ? vnets::PartitionMode::Exhaustive : vnets::PartitionMode::Representative;
  auto report = vnets::verify_partition(atlas, mode);
  report.suite = "atlas";
  if (!cfg.dump_orbits.empty()) {
    if (cfg.q > 4) throw vnets::UsageError("--dump-orbits needs q <= 4");
    dump_orbits(cfg, atlas);
  }
  return emit_report(cfg, report);
}

int cmd_verify(const RunConfig& cfg) {
  const std::string& s = cfg.suite;
  if (s == "theorem21") {
    return emit_report(cfg, vnets::verify_nucleus_points(*make_geometry(cfg), cfg.exhaustive, cfg.samples, cfg.seed));
  }
  if (s == "census") return emit_report(cfg, vnets::verify_census(make_geometry(cfg)->field()));
  const auto atlas = make_atlas(cfg);
  if (s == "table1") return emit_report(cfg, vnets::verify_od0_rows(atlas));
  if (s == "cubic") return emit_report(cfg, vnets::verify_cubics(atlas));
  if (s == "lemmas") return emit_report(cfg, vnets::verify_lemmas(atlas));
  if (s == "section5") return emit_report(cfg, vnets::verify_parametric_net(atlas));
  if (s == "partition") {
    const auto mode = cfg.exhaustive ? vnets::PartitionMode::Exhaustive : vnets::PartitionMode::Auto;
    return emit_report(cfg, vnets::verify_partition(atlas, mode));
  }
  throw vnets::UsageError("unknown suite '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Classification of planes of PG(5,q), q even, meeting the nucleus plane of the Veronese surface"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--q", cfg.q, "field order, a power of 2 in [2, 16]");
  app.add_option("--modulus", cfg.modulus, "defining polynomial as an integer (e.g. 0x13)");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--max-keys", cfg.max_keys, "key budget for orbit searches");
  app.add_option("--output,-o", cfg.output, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* plane = app.add_subcommand("classify-plane", "classify a plane given by rows, pattern or label");
  plane->add_option("--input,-i", cfg.input, "JSON input file (default stdin)");
  auto* net = app.add_subcommand("classify-net", "classify the plane of a net of conics");
  net->add_option("--input,-i", cfg.input, "JSON input file (default stdin)");
  auto* atlas = app.add_subcommand("atlas", "orbit atlas with partition checks");
  atlas->add_flag("--exhaustive", cfg.exhaustive, "enumerate every plane (q <= 4)");
  atlas->add_option("--dump-orbits", cfg.dump_orbits, "directory for one key list per orbit (q <= 4)");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"table1", "theorem21", "lemmas", "partition", "section5", "cubic", "census"}));
  verify->add_flag("--exhaustive", cfg.exhaustive, "exhaustive instead of sampled or representative mode");
  verify->add_option("--samples", cfg.samples, "sampled planes for theorem21");
  verify->add_option("--seed", cfg.seed, "random seed for theorem21");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*plane) return cmd_classify_plane(cfg);
    if (*net) return cmd_classify_net(cfg);
    if (*atlas) return cmd_atlas(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const vnets::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const vnets::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const vnets::OutOfFamilyError& e) {
    std::cerr << "out of family: " << e.what() << "\n";
    return kOutOfFamily;
  } catch (const vnets::ResourceError& e) {
    std::cerr << "resource budget exhausted after " << e.keys_so_far() << " keys: " << e.what() << "\n";
    return kResource;
  } catch (const vnets::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
