#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carver/importance.hpp"
#include "carver/raster.hpp"

namespace carver {

struct DatasetEntry {
    std::string id;  // shared filename stem
    std::string image_path;
    std::string mask_path;
};

struct EvalRow {
    std::string id;
    int orig_w = 0, orig_h = 0;
    int target_w = 0, target_h = 0;
    std::optional<double> area_ratio;  // empty when the row is excluded
    std::optional<double> ssd;
    bool excluded = false;
    std::string exclusion_reason;
    double seconds = 0.0;
};

struct EvalReport {
    std::string source_label;
    std::vector<EvalRow> rows;
    size_t n_excluded = 0;
    double mar = 0.0;   // mean of included area ratios
    double mssd = 0.0;  // mean of included ssd values
};

// Same-stem image/mask pairs, ordered lexicographically by stem. Orphans are
// skipped with a warning on stderr.
std::vector<DatasetEntry> scan_dataset(const std::string& dir, const std::string& image_suffix = ".jpg",
                                       const std::string& mask_suffix = ".png");

// make_it_square with lockstep mask carving per entry, then MAR/MSSD inputs.
// Per-entry failures mark the row excluded and never abort the batch.
EvalReport evaluate_dataset(const std::vector<DatasetEntry>& entries, const ImportanceSource& src,
                            int n_points = 100, int threads = 0);

void write_report_csv(const EvalReport& report, const std::string& path);
void write_report_json(const EvalReport& report, const std::string& path);

struct MethodScores {
    std::string method;
    double rating = 0.0;
    double mar = 0.0;
    double mssd = 0.0;
};

// method,rating per line, optional header.
std::vector<std::pair<std::string, double>> load_ratings_csv(const std::string& path);

// Aggregate JSON written by write_report_json.
std::pair<double, double> load_aggregate_json(const std::string& path);  // (mar, mssd)

// Symmetric 3x3 Pearson matrix over {ratings, MAR, -MSSD}, unit diagonal.
// MSSD is negated so that higher is better in every column.
std::vector<std::vector<double>> correlate_reports(const std::vector<MethodScores>& table);

inline constexpr const char* kCorrelationOrder[3] = {"ratings", "MAR", "-MSSD"};

}  // namespace carver
