#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "convect/axis.hpp"

namespace convect {

/// One benchmark run. The mesh is given as the three coarse axis partitions;
/// the fine lattice always has twice their resolution.
struct RunConfig {
  double ra = 0.0;
  double pr = 0.71;
  AxisPartition part_x = AxisPartition::uniform(1.0, 10);
  AxisPartition part_y = AxisPartition::uniform(1.0, 10);
  AxisPartition part_z = AxisPartition::uniform(1.0, 10);

  double dt = 1e-3;
  int q = 10;  // transport substeps per dt
  double eps_steady = 1e-5;
  int max_steps = 20000;
  int fixed_steps = 0;  // > 0: run exactly this many steps, no steady check
  bool steady_check_theta = false;

  double cg_tol = 1e-8;
  int cg_max_iter = 1000;
  double pcg_tol = 1e-8;
  int pcg_max_iter = 200;
  double mean_tol = 1e-12;

  std::string out_dir = "out";
  int snapshot_every = 0;    // 0: final snapshot only
  int checkpoint_every = 0;  // 0: no checkpoints
  std::string restart;       // checkpoint path, empty for a cold start

  bool operator==(const RunConfig&) const = default;
};

inline bool operator==(const AxisPartition& a, const AxisPartition& b) {
  return a.breakpoints == b.breakpoints && a.divisions == b.divisions;
}

/// key = value map of a config file ('#' starts a comment). Throws on
/// malformed lines or unknown keys when built.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Builds a RunConfig from a key map (defaults fill absent keys).
RunConfig build_config(const std::map<std::string, std::string>& keys);

inline RunConfig parse_config(const std::string& text) {
  return build_config(parse_config_text(text));
}

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

/// FNV-1a over the physics-relevant canonical keys (output controls and the
/// restart path are excluded so a restarted run keeps its provenance hash).
std::uint64_t config_hash(const RunConfig& c);

struct Preset {
  std::string name;
  std::string description;
  RunConfig config;
};

/// The benchmark configurations (41^3 and graded 45^3 tiers) plus desk-scale variants.
const std::vector<Preset>& presets();

/// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

}  // namespace convect
