#pragma once

#include <stdexcept>
#include <string>

#include "mdbscan/dbscan.hpp"

namespace mdbscan {

/// Input data problems: unreadable files, malformed rows, bad cells.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid option combinations or values.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a numeric CSV into a dataset. A first row with any non-numeric cell
/// is treated as a header. truth_col >= 0 names a zero-based column holding
/// integer class labels (NOISE accepted as a literal); the remaining columns
/// are coordinates. Errors carry 1-based row and column positions.
Dataset read_csv(const std::string& path, int truth_col = -1);

/// Writes coordinates (and the truth column last, when present) as CSV with
/// a header row. Values round-trip exactly through read_csv.
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Writes the original columns plus "cluster" (NOISE or a non-negative id)
/// and "role" (core/border/noise).
void write_labels_csv(const std::string& path, const Dataset& data, const Labeling& labeling);

std::string format_value(double v);  // shortest exact decimal form

}  // namespace mdbscan
