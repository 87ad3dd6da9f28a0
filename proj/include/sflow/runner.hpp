#ifndef SFLOW_RUNNER_HPP
#define SFLOW_RUNNER_HPP

#include <iosfwd>

#include "sflow/config.hpp"

namespace sflow {

/// Executes a validated config: builds the family, dispatches on the task and
/// writes `<output>_result.csv` (and `<output>_eigentraj.csv` for tasks with an
/// underlying operator path). Returns 0 on success; engine errors are reported
/// on `err` (prefixed with the module name) and yield a nonzero status.
int run(const RunConfig& config, std::ostream& err);

}  // namespace sflow

#endif
