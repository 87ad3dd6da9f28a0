#include "sflow/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sflow {

const char* task_name(Task t) {
  switch (t) {
    case Task::flow: return "flow";
    case Task::winding: return "winding";
    case Task::rectangle: return "rectangle";
    case Task::diagnostic: return "diagnostic";
    case Task::eigentraj: return "eigentraj";
  }
  return "?";
}

const char* family_name(Family f) {
  switch (f) {
    case Family::multiplication: return "multiplication";
    case Family::schrodinger_pair: return "schrodinger_pair";
    case Family::matrix_file: return "matrix_file";
    case Family::projection_pair: return "projection_pair";
    case Family::generator_loop: return "generator_loop";
    case Family::linear_segment: return "linear_segment";
  }
  return "?";
}

bool task_family_compatible(Task t, Family f) {
  switch (t) {
    case Task::flow:
    case Task::eigentraj:
      return true;
    case Task::winding:
      return f != Family::schrodinger_pair;
    case Task::rectangle:
      return f == Family::linear_segment || f == Family::projection_pair;
    case Task::diagnostic:
      return f == Family::multiplication || f == Family::schrodinger_pair;
  }
  return false;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

long to_long(const std::string& v, const std::string& key, int line) {
  try {
    size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value '" + v + "' for key '" + key + "' is not an integer", line);
  }
}

double to_double(const std::string& v, const std::string& key, int line) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("value '" + v + "' for key '" + key + "' is not a number", line);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section = "run";
  int line = 0;
  bool task_set = false, family_set = false, grid_touched = false;
  int grid_n = 160;
  double grid_l = 10.0;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("malformed section header '" + s + "'", line);
      section = trim(s.substr(1, s.size() - 2));
      if (section != "run" && section != "family" && section != "grid" &&
          section != "opts")
        throw ConfigError("unknown section '" + section + "'", line);
      continue;
    }

    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got '" + s + "'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("empty key or value in '" + s + "'", line);

    if (key == "mu")
      throw ConfigError("mu is chosen by the engine, not the user", line);

    if (section == "run") {
      if (key == "task") {
        static const std::map<std::string, Task> tasks = {
            {"flow", Task::flow},
            {"winding", Task::winding},
            {"rectangle", Task::rectangle},
            {"diagnostic", Task::diagnostic},
            {"eigentraj", Task::eigentraj}};
        auto it = tasks.find(value);
        if (it == tasks.end()) throw ConfigError("unknown task '" + value + "'", line);
        cfg.task = it->second;
        task_set = true;
      } else if (key == "family") {
        static const std::map<std::string, Family> families = {
            {"multiplication", Family::multiplication},
            {"schrodinger_pair", Family::schrodinger_pair},
            {"matrix_file", Family::matrix_file},
            {"projection_pair", Family::projection_pair},
            {"generator_loop", Family::generator_loop},
            {"linear_segment", Family::linear_segment}};
        auto it = families.find(value);
        if (it == families.end())
          throw ConfigError("unknown family '" + value + "'", line);
        cfg.family = it->second;
        family_set = true;
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "seed") {
        cfg.seed = static_cast<unsigned long>(to_long(value, key, line));
      } else {
        throw ConfigError("unknown key '" + key + "' in [run]", line);
      }
    } else if (section == "family") {
      if (key == "dim") {
        cfg.dim = static_cast<int>(to_long(value, key, line));
        if (cfg.dim < 1) throw ConfigError("dim must be positive", line);
      } else if (key == "rank_p") {
        cfg.rank_p = static_cast<int>(to_long(value, key, line));
      } else if (key == "rank_q") {
        cfg.rank_q = static_cast<int>(to_long(value, key, line));
      } else if (key == "path") {
        cfg.matrix_path = value;
      } else {
        throw ConfigError("unknown key '" + key + "' in [family]", line);
      }
    } else if (section == "grid") {
      if (key == "L") {
        grid_l = to_double(value, key, line);
        if (!(grid_l > 0.0)) throw ConfigError("grid L must be positive", line);
        grid_touched = true;
      } else if (key == "N") {
        grid_n = static_cast<int>(to_long(value, key, line));
        if (grid_n < 4) throw ConfigError("grid N must be >= 4", line);
        grid_touched = true;
      } else {
        throw ConfigError("unknown key '" + key + "' in [grid]", line);
      }
    } else {  // opts
      if (key == "probe_points") {
        cfg.opts.probe_points = static_cast<int>(to_long(value, key, line));
        if (cfg.opts.probe_points < 3)
          throw ConfigError("probe_points must be >= 3", line);
      } else if (key == "delta") {
        cfg.opts.delta = to_double(value, key, line);
        if (!(cfg.opts.delta > 0.0)) throw ConfigError("delta must be positive", line);
      } else if (key == "max_depth") {
        cfg.opts.max_depth = static_cast<int>(to_long(value, key, line));
        if (cfg.opts.max_depth < 0) throw ConfigError("max_depth must be >= 0", line);
      } else if (key == "quadrature_points") {
        cfg.quadrature_points = static_cast<int>(to_long(value, key, line));
        if (cfg.quadrature_points < 8)
          throw ConfigError("quadrature_points must be >= 8", line);
      } else if (key == "traj_samples") {
        cfg.traj_samples = static_cast<int>(to_long(value, key, line));
        if (cfg.traj_samples < 2) throw ConfigError("traj_samples must be >= 2", line);
      } else {
        throw ConfigError("unknown key '" + key + "' in [opts]", line);
      }
    }
  }

  if (!task_set) throw ConfigError("missing required key 'task' in [run]", 0);
  if (!family_set) throw ConfigError("missing required key 'family' in [run]", 0);
  if (!task_family_compatible(cfg.task, cfg.family))
    throw ConfigError(std::string("task '") + task_name(cfg.task) +
                          "' is not compatible with family '" +
                          family_name(cfg.family) + "'",
                      0);

  const bool needs_grid =
      cfg.family == Family::multiplication || cfg.family == Family::schrodinger_pair;
  if (needs_grid) {
    cfg.grid = GridSpec{grid_l, grid_n};
  } else if (grid_touched) {
    throw ConfigError("a [grid] section only applies to the multiplication and "
                      "schrodinger_pair families",
                      0);
  }
  if (cfg.family == Family::matrix_file && cfg.matrix_path.empty())
    throw ConfigError("family matrix_file requires 'path' in [family]", 0);
  if (cfg.family == Family::projection_pair) {
    if (cfg.rank_p < 0 || cfg.rank_p > cfg.dim || cfg.rank_q < 0 || cfg.rank_q > cfg.dim)
      throw ConfigError("projection ranks must lie in [0, dim]", 0);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw Error("cannot open config file " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace sflow
