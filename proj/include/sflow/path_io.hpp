#ifndef SFLOW_PATH_IO_HPP
#define SFLOW_PATH_IO_HPP

#include <string>
#include <vector>

#include "sflow/paths.hpp"

namespace sflow {

/// Malformed matrix path file; carries the byte offset of the offending token.
class PathFileError : public Error {
public:
  PathFileError(const std::string& msg, long byte_offset)
      : Error(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset(byte_offset) {}
  long byte_offset;
};

/// Loads a matrix path file:
///   header  `dim n samples m interval a b`
///   then m blocks of n x n complex entries, row-major, `re,im` pairs,
///   whitespace-separated.
/// Samples sit at uniform parameters in [a, b]; the returned path interpolates
/// piecewise-linearly between them.
OperatorPath load_matrix_path(const std::string& filename);

/// Writes the matching format (17 significant digits).
void save_matrix_path(const std::string& filename, double a, double b,
                      const std::vector<HermitianOperator>& samples);

}  // namespace sflow

#endif
