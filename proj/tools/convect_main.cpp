// Command-line driver: run | mesh | presets | validate.
//
// Configuration comes from --preset <name> and/or --config <file>; any other
// --key value pair overrides the matching config key (see README for the key
// list). Exit codes: 0 ok, 1 config error, 2 not converged, 3 solver failure,
// 4 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "convect/config.hpp"
#include "convect/mesh.hpp"
#include "convect/runner.hpp"

namespace {

using namespace convect;

void usage(std::ostream& out) {
  out << "usage: convect <run|mesh|validate> [--preset NAME] [--config FILE] [--KEY VALUE ...]\n"
         "       convect presets [NAME]\n"
         "\n"
         "  run       execute a configured run and write its artifacts\n"
         "  mesh      build the two-level mesh, validate it, export ASCII (--out FILE)\n"
         "  validate  build the mesh and print the validation report\n"
         "  presets   list preset names, or print one preset's config text\n";
}

struct Cli {
  std::string preset;
  std::string config_file;
  std::string mesh_out;
  std::vector<std::pair<std::string, std::string>> overrides;
};

Cli parse_cli(int argc, char** argv, int first) {
  Cli cli;
  for (int i = first; i < argc; ++i) {
    std::string arg = argv[i];
    require(arg.size() > 2 && arg[0] == '-' && arg[1] == '-',
            "expected --key value pairs, got '" + arg + "'");
    require(i + 1 < argc, "missing value for " + arg);
    const std::string key = arg.substr(2);
    const std::string value = argv[++i];
    if (key == "preset")
      cli.preset = value;
    else if (key == "config")
      cli.config_file = value;
    else if (key == "out")
      cli.mesh_out = value;
    else
      cli.overrides.emplace_back(key, value);
  }
  return cli;
}

RunConfig make_config(const Cli& cli) {
  std::map<std::string, std::string> keys;
  if (!cli.preset.empty()) {
    const Preset* p = find_preset(cli.preset);
    require(p != nullptr, "unknown preset '" + cli.preset + "'");
    keys = parse_config_text(serialize_config(p->config));
  }
  if (!cli.config_file.empty()) {
    std::ifstream in(cli.config_file);
    require(in.good(), "cannot open config file: " + cli.config_file);
    std::stringstream ss;
    ss << in.rdbuf();
    for (const auto& [k, v] : parse_config_text(ss.str())) keys[k] = v;
  }
  for (const auto& [k, v] : cli.overrides) keys[k] = v;
  return build_config(keys);
}

int cmd_presets(int argc, char** argv) {
  if (argc >= 3) {
    const Preset* p = find_preset(argv[2]);
    if (!p) {
      std::cerr << "unknown preset '" << argv[2] << "'\n";
      return kConfigError;
    }
    std::cout << "# preset " << p->name << ": " << p->description << "\n"
              << serialize_config(p->config);
    return kOk;
  }
  for (const Preset& p : presets())
    std::cout << p.name << "  -  " << p.description << "\n";
  return kOk;
}

int cmd_mesh(const Cli& cli, bool export_file) {
  const RunConfig cfg = make_config(cli);
  const TwoLevelMesh mesh = build_two_level_mesh(cfg.part_x, cfg.part_y, cfg.part_z);
  const MeshValidation check = validate_mesh(mesh);
  std::cout << "fine nodes: " << mesh.fine_node_count()
            << "  coarse nodes: " << mesh.coarse_node_count()
            << "  coarse tets: " << mesh.coarse_tets.size()
            << "  fine tets: " << mesh.fine_tets.size() << "\n";
  std::cout << "total volume: " << check.total_volume << " (box " << check.box_volume << ")\n";
  std::cout << "tet volume range: [" << check.min_tet_volume << ", " << check.max_tet_volume
            << "]\n";
  if (check.ok()) {
    std::cout << "conformity violations: 0\n";
  } else {
    std::cout << "violations (" << check.violations.size() << "):\n";
    for (const auto& v : check.violations) std::cout << "  " << v << "\n";
  }
  if (export_file) {
    const std::string out_path = cli.mesh_out.empty() ? "mesh.txt" : cli.mesh_out;
    std::ofstream out(out_path, std::ios::trunc);
    if (!out.good()) {
      std::cerr << "cannot open " << out_path << "\n";
      return kIoError;
    }
    export_mesh(out, mesh, config_hash(cfg));
    std::cout << "mesh written to " << out_path << "\n";
  }
  return check.ok() ? kOk : kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(std::cerr);
    return kConfigError;
  }
  const std::string cmd = argv[1];
  try {
    if (cmd == "presets") return cmd_presets(argc, argv);
    const Cli cli = parse_cli(argc, argv, 2);
    if (cmd == "run") {
      const RunConfig cfg = make_config(cli);
      return convect::run(cfg, std::cout);
    }
    if (cmd == "mesh") return cmd_mesh(cli, true);
    if (cmd == "validate") return cmd_mesh(cli, false);
    usage(std::cerr);
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
