#ifndef SFLOW_CONFIG_HPP
#define SFLOW_CONFIG_HPP

#include <optional>
#include <string>

#include "sflow/fixtures.hpp"
#include "sflow/spectral_flow.hpp"

namespace sflow {

enum class Task { flow, winding, rectangle, diagnostic, eigentraj };
enum class Family {
  multiplication,
  schrodinger_pair,
  matrix_file,
  projection_pair,
  generator_loop,
  linear_segment
};

/// Parse failure; message carries the 1-based line number.
class ConfigError : public Error {
public:
  ConfigError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

struct RunConfig {
  Task task = Task::flow;
  Family family = Family::generator_loop;

  // family parameters
  int dim = 4;
  int rank_p = 1;
  int rank_q = 0;
  std::string matrix_path;        // family = matrix_file
  std::optional<GridSpec> grid;   // multiplication / schrodinger_pair

  FlowOptions opts;
  int quadrature_points = 513;
  int traj_samples = 201;

  std::string output = "sflow";   // file path prefix
  unsigned long seed = 1;
  bool quiet = false;
};

const char* task_name(Task t);
const char* family_name(Family f);

/// Parses the line-oriented `key = value` format with `[section]` headers.
/// Unknown keys are rejected with the line number; the task/family
/// compatibility table is enforced.
RunConfig parse_config(const std::string& text);

/// parse_config on a file's contents.
RunConfig parse_config_file(const std::string& filename);

bool task_family_compatible(Task t, Family f);

}  // namespace sflow

#endif
