#include "mdbscan/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace mdbscan {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        // Trim surrounding blanks; quoting is not part of the format.
        const auto first = cell.find_first_not_of(" \t\r");
        const auto last = cell.find_last_not_of(" \t\r");
        cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& cell, double* out) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, *out);
    return ec == std::errc() && ptr == end && std::isfinite(*out);
}

bool parse_int(const std::string& cell, int* out) {
    if (cell == "NOISE") {
        *out = NOISE;
        return true;
    }
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, *out);
    return ec == std::errc() && ptr == end;
}

std::string position(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

}  // namespace

std::string format_value(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

Dataset read_csv(const std::string& path, int truth_col) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open input file: " + path);
    }
    std::vector<std::vector<double>> rows;
    std::vector<int> truth;
    std::string line;
    std::size_t lineno = 0;
    std::size_t expected_cells = 0;
    bool first_content_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> cells = split_row(line);
        if (first_content_row) {
            bool numeric = true;
            for (const std::string& cell : cells) {
                double v;
                int t;
                if (!parse_double(cell, &v) && !parse_int(cell, &t)) {
                    numeric = false;
                    break;
                }
            }
            expected_cells = cells.size();
            if (truth_col >= static_cast<int>(expected_cells)) {
                throw config_error("truth column " + std::to_string(truth_col) +
                                   " out of range for " + std::to_string(expected_cells) +
                                   " columns");
            }
            first_content_row = false;
            if (!numeric) continue;  // header row
        }
        if (cells.size() != expected_cells) {
            throw input_error("ragged row: expected " + std::to_string(expected_cells) +
                              " cells, found " + std::to_string(cells.size()) + " at row " +
                              std::to_string(lineno));
        }
        std::vector<double> coords;
        coords.reserve(expected_cells);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (static_cast<int>(c) == truth_col) {
                int label;
                if (!parse_int(cells[c], &label)) {
                    throw input_error("bad truth label '" + cells[c] + "' at " +
                                      position(lineno, c + 1));
                }
                truth.push_back(label);
            } else {
                double v;
                if (!parse_double(cells[c], &v)) {
                    throw input_error("bad numeric cell '" + cells[c] + "' at " +
                                      position(lineno, c + 1));
                }
                coords.push_back(v);
            }
        }
        rows.push_back(std::move(coords));
    }
    if (rows.empty()) {
        throw input_error("input contains no data rows: " + path);
    }
    try {
        return Dataset::from_rows(std::move(rows), truth_col >= 0
                                                       ? std::optional<std::vector<int>>(std::move(truth))
                                                       : std::nullopt);
    } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
    }
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot open output file: " + path);
    }
    for (int j = 0; j < data.dim; ++j) {
        out << "x" << j << (j + 1 < data.dim ? "," : "");
    }
    if (data.has_truth()) out << ",truth";
    out << "\n";
    for (int i = 0; i < data.size(); ++i) {
        for (int j = 0; j < data.dim; ++j) {
            out << format_value(data.points[i].coords[j]) << (j + 1 < data.dim ? "," : "");
        }
        if (data.has_truth()) out << ',' << (*data.truth)[i];
        out << "\n";
    }
}

void write_labels_csv(const std::string& path, const Dataset& data, const Labeling& labeling) {
    if (static_cast<int>(labeling.label.size()) != data.size()) {
        throw std::invalid_argument("labels: labeling size does not match dataset");
    }
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot open output file: " + path);
    }
    for (int j = 0; j < data.dim; ++j) out << "x" << j << ",";
    if (data.has_truth()) out << "truth,";
    out << "cluster,role\n";
    for (int i = 0; i < data.size(); ++i) {
        for (int j = 0; j < data.dim; ++j) out << format_value(data.points[i].coords[j]) << ',';
        if (data.has_truth()) out << (*data.truth)[i] << ',';
        if (labeling.label[i] == NOISE) {
            out << "NOISE";
        } else {
            out << labeling.label[i];
        }
        out << ',' << role_name(labeling.role[i]) << "\n";
    }
}

}  // namespace mdbscan
