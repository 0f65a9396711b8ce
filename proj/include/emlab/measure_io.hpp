#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "emlab/measure.hpp"

namespace emlab {

// Text format:
//   dim h lo1 hi1 [lo2 hi2 [lo3 hi3]] [ball]
//   atom x [y [z]] w [singular]
//   density v1 v2 ...        (interior node order, may span lines)
// Blank lines and lines starting with '#' are ignored.

/// Real number, also accepting "a/b" and a trailing "pi" factor ("2pi", "1/2pi").
double parse_real(const std::string& text);

DiscreteMeasure read_measure(std::istream& is);
DiscreteMeasure read_measure_file(const std::string& path);
void write_measure(std::ostream& os, const DiscreteMeasure& mu);

/// Columns x[,y[,z]],value in interior node order.
void write_grid_csv(std::ostream& os, const GridFunction& u);

}  // namespace emlab
