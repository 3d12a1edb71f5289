#include "mdbscan/metrics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mdbscan {

namespace {

// Remaps labels to dense ids, giving every NOISE entry its own fresh id.
std::vector<int> effective_labels(const std::vector<int>& labels, int* class_count) {
    std::vector<int> ids(labels.size());
    std::unordered_map<int, int> remap;
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == NOISE) {
            ids[i] = next++;
        } else {
            auto [it, inserted] = remap.try_emplace(labels[i], next);
            if (inserted) ++next;
            ids[i] = it->second;
        }
    }
    *class_count = next;
    return ids;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("metrics: label vectors differ in length");
    }
    const std::size_t n = a.size();
    if (n < 2) return 1.0;

    int na = 0, nb = 0;
    const std::vector<int> ea = effective_labels(a, &na);
    const std::vector<int> eb = effective_labels(b, &nb);

    std::map<std::pair<int, int>, long long> contingency;
    std::vector<long long> row(na, 0), col(nb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++contingency[{ea[i], eb[i]}];
        ++row[ea[i]];
        ++col[eb[i]];
    }

    double sum_cells = 0.0;
    for (const auto& [cell, count] : contingency) sum_cells += choose2(static_cast<double>(count));
    double sum_rows = 0.0;
    for (long long r : row) sum_rows += choose2(static_cast<double>(r));
    double sum_cols = 0.0;
    for (long long c : col) sum_cols += choose2(static_cast<double>(c));

    const double total = choose2(static_cast<double>(n));
    const double expected = sum_rows * sum_cols / total;
    const double maximum = 0.5 * (sum_rows + sum_cols);
    if (maximum == expected) {
        // Both sides are all singletons or both a single block: identical
        // partitions by construction.
        return 1.0;
    }
    return (sum_cells - expected) / (maximum - expected);
}

double purity(const std::vector<int>& pred, const std::vector<int>& truth, bool* all_noise) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument("metrics: label vectors differ in length");
    }
    if (all_noise) *all_noise = false;
    std::map<int, std::map<int, long long>> by_cluster;
    long long clustered = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == NOISE) continue;
        ++by_cluster[pred[i]][truth[i]];
        ++clustered;
    }
    if (clustered == 0) {
        if (all_noise) *all_noise = true;
        return 0.0;
    }
    long long majority_sum = 0;
    for (const auto& [cid, classes] : by_cluster) {
        long long best = 0;
        for (const auto& [cls, count] : classes) best = std::max(best, count);
        majority_sum += best;
    }
    return static_cast<double>(majority_sum) / static_cast<double>(clustered);
}

QualityReport evaluate(const Labeling& labeling, const std::vector<int>* truth,
                       int pair_count, double runtime_ms) {
    QualityReport report;
    report.cluster_count = labeling.cluster_count;
    report.pair_count = pair_count;
    report.runtime_ms = runtime_ms;
    const std::size_t n = labeling.label.size();
    std::size_t noise = 0;
    for (int l : labeling.label) {
        if (l == NOISE) ++noise;
    }
    report.noise_ratio = n == 0 ? 0.0 : static_cast<double>(noise) / static_cast<double>(n);
    if (truth) {
        report.has_truth = true;
        report.ari = adjusted_rand_index(labeling.label, *truth);
        report.purity = purity(labeling.label, *truth, &report.all_noise);
    }
    return report;
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string QualityReport::to_text() const {
    std::ostringstream os;
    if (has_truth) {
        os << "ari=" << format_double(ari) << "\n";
        os << "purity=" << format_double(purity) << "\n";
        if (all_noise) os << "warning=all points labeled noise, purity undefined\n";
    }
    os << "noise_ratio=" << format_double(noise_ratio) << "\n";
    os << "cluster_count=" << cluster_count << "\n";
    os << "pair_count=" << pair_count << "\n";
    os << "runtime_ms=" << format_double(runtime_ms) << "\n";
    return os.str();
}

std::string QualityReport::csv_header() {
    return "ari,purity,noise_ratio,cluster_count,pair_count,runtime_ms";
}

std::string QualityReport::to_csv_row() const {
    std::ostringstream os;
    os << (has_truth ? format_double(ari) : "") << ','
       << (has_truth ? format_double(purity) : "") << ','
       << format_double(noise_ratio) << ',' << cluster_count << ',' << pair_count << ','
       << format_double(runtime_ms);
    return os.str();
}

}  // namespace mdbscan
