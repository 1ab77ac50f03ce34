#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "minsum/engine.hpp"
#include "minsum/model.hpp"

namespace minsum {

// Raised on malformed model files; line is 1-based within the input.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Text model format:
//   line 1: magic "MINSUM1"
//   line 2: num_nodes
//   line 3: per-node label counts
//   line 4: num_edges
//   then one "u v" line per edge,
//   then one line of unary costs per node,
//   then one row-major line of pairwise costs per edge.
// Floats are written with 17 significant digits, so a parse/serialize
// round trip is value-exact.
graphical_model read_model(std::istream& in);
graphical_model read_model_file(const std::string& path);
void write_model(std::ostream& out, const graphical_model& m);
void write_model_file(const std::string& path, const graphical_model& m);

// Convergence trace: CSV "normalized_iterations,oracle_calls,dual,
// wall_time_ms", one row per checkpoint.
void write_trace_csv(std::ostream& out, const solve_trace& trace);
void write_trace_csv_file(const std::string& path, const solve_trace& trace);

std::string format_double(double value);  // %.17g

}  // namespace minsum
