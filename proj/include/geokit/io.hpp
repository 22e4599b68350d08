#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geokit/curves.hpp"
#include "geokit/grid_map.hpp"

namespace geokit {

/// Shortest round-trip decimal; always carries a '.' or an exponent ("2.0", "1e-07").
std::string format_number(double v);

/// Comma-separated reals, e.g. "0,0.5,-1e-3". Throws DomainError on junk.
std::vector<double> parse_reals(const std::string & text);

/// Header "s,x1,y1,...,xn,yn[,t]" for a curve of dimension `dim`.
std::vector<std::string> curve_header(std::size_t dim);

void write_csv(std::ostream & os, const std::vector<std::string> & header,
               const std::vector<std::vector<double>> & rows);

/// One row per sample: parameter, then the point.
void write_curve_csv(std::ostream & os, const SampledCurve & curve, const std::vector<std::string> & header);

/// Reads a header line and numeric rows; column 0 is the parameter.
SampledCurve read_curve_csv(std::istream & is, bool closed = false);

/// Rows "i1,...,im,val1,...,valk" for present nodes, in node order.
void write_grid_csv(std::ostream & os, const GridMap & g);

/// {m, k, h, exclusion_radius, codomain, domain, origin, extent}.
std::string grid_sidecar_json(const GridMap & g);

GridMap read_grid_map(std::istream & csv, const std::string & sidecar_json);

}  // namespace geokit
