#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lab/empirical.hpp"
#include "lab/finite_space.hpp"
#include "lab/transport.hpp"

namespace lab::io {

// Line-based instance formats. Writers emit deterministic bytes (%.17g for
// doubles) so identical inputs round-trip identically.

// pattern_set: factor sizes and weights, then member tuples of A
std::string write_pattern_set(const ProductSpace& space,
                              const std::vector<std::size_t>& members);
struct ParsedPatternSet {
  ProductSpace space;
  std::vector<std::size_t> members;
};
ParsedPatternSet read_pattern_set(std::istream& in);
ParsedPatternSet read_pattern_set_string(const std::string& text);

// measure: one support point per line, coordinates then weight
std::string write_measure(const DiscreteMeasure& measure);
DiscreteMeasure read_measure(std::istream& in);
DiscreteMeasure read_measure_string(const std::string& text);

// plan export: dense row-major matrix, one row per line
std::string write_plan_matrix(const TransportPlan& plan);

// process: sample-space weights plus the N x (sum |Omega_i|) value table
std::string write_process(const ProcessInstance& inst);
ProcessInstance read_process(std::istream& in);
ProcessInstance read_process_string(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace lab::io
