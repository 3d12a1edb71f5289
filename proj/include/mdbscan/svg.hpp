#pragma once

#include <string>

#include "mdbscan/dbscan.hpp"
#include "mdbscan/geometry.hpp"

namespace mdbscan {

/// Render a 2-D scatter plot of the labeling as a standalone SVG document.
/// dim_x/dim_y pick which coordinates to plot. Output is deterministic for
/// identical inputs.
std::string svg_string(const Dataset& data, const Labeling& labeling, int dim_x = 0,
                       int dim_y = 1);

/// Write svg_string() output to a file.
void write_svg(const std::string& path, const Dataset& data, const Labeling& labeling,
               int dim_x = 0, int dim_y = 1);

}  // namespace mdbscan
