#include "convect/config.hpp"

#include <cstdio>
#include <sstream>

#include "convect/types.hpp"

namespace convect {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_doubles(const std::string& v, const std::string& key) {
  std::istringstream in(v);
  std::vector<double> out;
  double x;
  while (in >> x) out.push_back(x);
  require(!out.empty() && in.eof(), "config: bad numeric list for key '" + key + "'");
  return out;
}

std::vector<int> parse_ints(const std::string& v, const std::string& key) {
  std::istringstream in(v);
  std::vector<int> out;
  int x;
  while (in >> x) out.push_back(x);
  require(!out.empty() && in.eof(), "config: bad integer list for key '" + key + "'");
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  const auto d = parse_doubles(v, key);
  require(d.size() == 1, "config: key '" + key + "' takes a single number");
  return d[0];
}

int parse_int(const std::string& v, const std::string& key) {
  const auto d = parse_ints(v, key);
  require(d.size() == 1, "config: key '" + key + "' takes a single integer");
  return d[0];
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += fmt(v[i]);
  }
  return s;
}

std::string fmt_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> keys;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos,
            "config: line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), "config: empty key on line " + std::to_string(lineno));
    keys[key] = value;
  }
  return keys;
}

RunConfig build_config(const std::map<std::string, std::string>& keys) {
  RunConfig c;
  std::string mesh_kind = "uniform";
  int divisions = 10;
  double ax = 1.0, ay = 1.0, az = 1.0;
  std::map<std::string, std::vector<double>> breakpoints;
  std::map<std::string, std::vector<int>> axis_divisions;

  for (const auto& [key, value] : keys) {
    if (key == "ra") c.ra = parse_double(value, key);
    else if (key == "pr") c.pr = parse_double(value, key);
    else if (key == "dt") c.dt = parse_double(value, key);
    else if (key == "q") c.q = parse_int(value, key);
    else if (key == "eps_steady") c.eps_steady = parse_double(value, key);
    else if (key == "max_steps") c.max_steps = parse_int(value, key);
    else if (key == "fixed_steps") c.fixed_steps = parse_int(value, key);
    else if (key == "steady_check_theta") c.steady_check_theta = parse_int(value, key) != 0;
    else if (key == "cg_tol") c.cg_tol = parse_double(value, key);
    else if (key == "cg_max_iter") c.cg_max_iter = parse_int(value, key);
    else if (key == "pcg_tol") c.pcg_tol = parse_double(value, key);
    else if (key == "pcg_max_iter") c.pcg_max_iter = parse_int(value, key);
    else if (key == "mean_tol") c.mean_tol = parse_double(value, key);
    else if (key == "mesh") mesh_kind = value;
    else if (key == "divisions") divisions = parse_int(value, key);
    else if (key == "ax") ax = parse_double(value, key);
    else if (key == "ay") ay = parse_double(value, key);
    else if (key == "az") az = parse_double(value, key);
    else if (key == "breakpoints_x" || key == "breakpoints_y" || key == "breakpoints_z")
      breakpoints[key.substr(key.size() - 1)] = parse_doubles(value, key);
    else if (key == "divisions_x" || key == "divisions_y" || key == "divisions_z")
      axis_divisions[key.substr(key.size() - 1)] = parse_ints(value, key);
    else if (key == "out_dir") c.out_dir = value;
    else if (key == "snapshot_every") c.snapshot_every = parse_int(value, key);
    else if (key == "checkpoint_every") c.checkpoint_every = parse_int(value, key);
    else if (key == "restart") c.restart = value;
    else fail("config: unknown key '" + key + "'");
  }

  if (mesh_kind == "uniform") {
    require(divisions >= 1, "config: divisions must be >= 1");
    c.part_x = AxisPartition::uniform(ax, divisions);
    c.part_y = AxisPartition::uniform(ay, divisions);
    c.part_z = AxisPartition::uniform(az, divisions);
  } else if (mesh_kind == "graded") {
    auto build = [&](const std::string& axis) {
      require(breakpoints.count(axis) && axis_divisions.count(axis),
              "config: graded mesh needs breakpoints_" + axis + " and divisions_" + axis);
      AxisPartition p{breakpoints[axis], axis_divisions[axis]};
      p.validate();
      return p;
    };
    c.part_x = build("x");
    c.part_y = build("y");
    c.part_z = build("z");
  } else {
    fail("config: mesh must be 'uniform' or 'graded'");
  }

  require(c.dt > 0.0, "config: dt must be positive");
  require(c.q >= 1, "config: q must be >= 1");
  require(c.eps_steady > 0.0, "config: eps_steady must be positive");
  require(c.pr > 0.0, "config: pr must be positive");
  require(c.ra >= 0.0, "config: ra must be non-negative");
  require(c.max_steps >= 1, "config: max_steps must be >= 1");
  require(c.fixed_steps >= 0, "config: fixed_steps must be >= 0");
  return c;
}

namespace {

// The physics keys, in canonical order. Output controls come after and are
// excluded from the hash.
std::string physics_text(const RunConfig& c) {
  std::string s;
  s += "ra = " + fmt(c.ra) + "\n";
  s += "pr = " + fmt(c.pr) + "\n";
  s += "mesh = graded\n";
  const AxisPartition* parts[3] = {&c.part_x, &c.part_y, &c.part_z};
  const char* axis = "xyz";
  for (int a = 0; a < 3; ++a) {
    s += std::string("breakpoints_") + axis[a] + " = " + fmt_list(parts[a]->breakpoints) + "\n";
    s += std::string("divisions_") + axis[a] + " = " + fmt_list(parts[a]->divisions) + "\n";
  }
  s += "dt = " + fmt(c.dt) + "\n";
  s += "q = " + std::to_string(c.q) + "\n";
  s += "eps_steady = " + fmt(c.eps_steady) + "\n";
  s += "max_steps = " + std::to_string(c.max_steps) + "\n";
  s += "fixed_steps = " + std::to_string(c.fixed_steps) + "\n";
  s += "steady_check_theta = " + std::string(c.steady_check_theta ? "1" : "0") + "\n";
  s += "cg_tol = " + fmt(c.cg_tol) + "\n";
  s += "cg_max_iter = " + std::to_string(c.cg_max_iter) + "\n";
  s += "pcg_tol = " + fmt(c.pcg_tol) + "\n";
  s += "pcg_max_iter = " + std::to_string(c.pcg_max_iter) + "\n";
  s += "mean_tol = " + fmt(c.mean_tol) + "\n";
  return s;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::string s = physics_text(c);
  s += "out_dir = " + c.out_dir + "\n";
  s += "snapshot_every = " + std::to_string(c.snapshot_every) + "\n";
  s += "checkpoint_every = " + std::to_string(c.checkpoint_every) + "\n";
  if (!c.restart.empty()) s += "restart = " + c.restart + "\n";
  return s;
}

std::uint64_t config_hash(const RunConfig& c) {
  const std::string s = physics_text(c);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = [] {
    std::vector<Preset> p;
    auto graded_bench = [](int n_wall, int n_core) {
      return AxisPartition{{0.0, 3.0 / 16.0, 13.0 / 16.0, 1.0}, {n_wall, n_core, n_wall}};
    };

    {
      RunConfig c;
      c.ra = 0.0;
      c.part_x = c.part_y = c.part_z = AxisPartition::uniform(1.0, 10);
      c.dt = 1.0 / 1000.0;
      c.eps_steady = 1e-9;  // theta-change criterion drives the conduction profile down to
                            // the 1e-6 nodal-error scale
      c.steady_check_theta = true;
      c.cg_tol = 1e-11;  // the steady fixed point inherits the solver tolerance
      c.max_steps = 20000;
      p.push_back({"conduction", "Ra = 0 conduction limit, 21^3 fine mesh", c});
    }
    {
      RunConfig c;
      c.ra = 1e3;
      c.part_x = c.part_y = c.part_z = AxisPartition::uniform(1.0, 10);
      c.dt = 1.0 / 1000.0;
      c.max_steps = 20000;
      p.push_back({"ra1e3-desk", "Ra = 10^3 on the reduced 21^3 fine mesh", c});
    }
    {
      RunConfig c;
      c.ra = 1e5;
      c.part_x = c.part_y = c.part_z = graded_bench(3, 5);
      c.dt = 1.0 / 2000.0;
      c.fixed_steps = 2000;
      c.max_steps = 2000;
      p.push_back({"ra1e5-desk", "Ra = 10^5, graded 23^3 desk mesh, fixed 2000 steps", c});
    }
    {
      RunConfig c;
      c.ra = 1e3;
      c.part_x = c.part_y = c.part_z = AxisPartition::uniform(1.0, 20);
      c.dt = 1.0 / 4000.0;
      c.max_steps = 200000;
      p.push_back({"paper-ra1e3", "Ra = 10^3, 41^3 fine mesh, dt = 1/4000", c});
    }
    {
      RunConfig c;
      c.ra = 1e4;
      c.part_x = c.part_y = c.part_z = AxisPartition::uniform(1.0, 20);
      c.dt = 1.0 / 4000.0;
      c.max_steps = 200000;
      p.push_back({"paper-ra1e4", "Ra = 10^4, 41^3 fine mesh, dt = 1/4000", c});
    }
    {
      RunConfig c;
      c.ra = 1e5;
      c.part_x = c.part_y = c.part_z = graded_bench(5, 12);
      c.dt = 1.0 / 9000.0;
      c.max_steps = 400000;
      p.push_back({"paper-ra1e5", "Ra = 10^5, graded 45^3 fine mesh, dt = 1/9000", c});
    }
    {
      RunConfig c;
      c.ra = 1e6;
      c.part_x = c.part_y = c.part_z = graded_bench(5, 12);
      c.dt = 1.0 / 9000.0;
      c.max_steps = 400000;
      p.push_back({"paper-ra1e6", "Ra = 10^6, graded 45^3 fine mesh, dt = 1/9000", c});
    }
    return p;
  }();
  return list;
}

const Preset* find_preset(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace convect
