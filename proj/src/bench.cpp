#include "carver/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string_view>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "carver/carve.hpp"
#include "carver/metrics.hpp"

namespace fs = std::filesystem;

namespace carver {

std::vector<DatasetEntry> scan_dataset(const std::string& dir, const std::string& image_suffix,
                                       const std::string& mask_suffix) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);

    std::map<std::string, DatasetEntry> by_stem;  // ordered by stem
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() > image_suffix.size() && name.ends_with(image_suffix)) {
            const std::string stem = name.substr(0, name.size() - image_suffix.size());
            by_stem[stem].id = stem;
            by_stem[stem].image_path = entry.path().string();
        }
    }
    if (ec) throw IoError("cannot read directory: " + dir);

    std::vector<DatasetEntry> entries;
    for (auto& [stem, entry] : by_stem) {
        const fs::path mask = fs::path(dir) / (stem + mask_suffix);
        if (!fs::exists(mask)) {
            std::fprintf(stderr, "warning: skipping %s (no mask %s)\n", entry.image_path.c_str(),
                         mask.string().c_str());
            continue;
        }
        entry.mask_path = mask.string();
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) throw DataError("no image/mask pairs found in " + dir);
    return entries;
}

namespace {

// CARVER_LOG=quiet silences per-image progress lines.
bool progress_enabled() {
    const char* level = std::getenv("CARVER_LOG");
    return level == nullptr || std::string_view(level) != "quiet";
}

EvalRow evaluate_entry(const DatasetEntry& entry, const ImportanceSource& src, int n_points) {
    EvalRow row;
    row.id = entry.id;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const RasterImage img = load_image(entry.image_path);
        const BinaryMask mask = load_mask(entry.mask_path);
        if (mask.width != img.width || mask.height != img.height)
            throw DataError("mask dimensions differ from image");
        row.orig_w = img.width;
        row.orig_h = img.height;
        const int side = std::min(img.width, img.height);
        row.target_w = row.target_h = side;

        const CarveResult carved = make_it_square(img, &mask, src);
        row.area_ratio = area_ratio(mask, *carved.mask);
        row.ssd = mssd_pair(mask, *carved.mask, n_points);
    } catch (const std::exception& e) {
        row.excluded = true;
        row.exclusion_reason = e.what();
        row.area_ratio.reset();
        row.ssd.reset();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

EvalReport evaluate_dataset(const std::vector<DatasetEntry>& entries, const ImportanceSource& src,
                            int n_points, int threads) {
    if (entries.empty()) throw DataError("no dataset entries to evaluate");
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, static_cast<int>(entries.size()));

    EvalReport report;
    report.source_label = importance_source_label(src);
    report.rows.resize(entries.size());

    const bool log_progress = progress_enabled();
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1)) {
            report.rows[i] = evaluate_entry(entries[i], src, n_points);
            if (log_progress)
                std::fprintf(stderr, "%s: %s\n", entries[i].id.c_str(),
                             report.rows[i].excluded ? report.rows[i].exclusion_reason.c_str() : "ok");
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Entries arrive sorted by id from scan_dataset; keep the report keyed the same way.
    std::sort(report.rows.begin(), report.rows.end(),
              [](const EvalRow& a, const EvalRow& b) { return a.id < b.id; });

    double mar_sum = 0.0, mssd_sum = 0.0;
    size_t included = 0;
    for (const EvalRow& row : report.rows) {
        if (row.excluded) {
            ++report.n_excluded;
            continue;
        }
        mar_sum += *row.area_ratio;
        mssd_sum += *row.ssd;
        ++included;
    }
    if (included > 0) {
        report.mar = mar_sum / static_cast<double>(included);
        report.mssd = mssd_sum / static_cast<double>(included);
    }
    return report;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_report_csv(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report CSV: " + path);
    out << "id,orig_w,orig_h,target_w,target_h,area_ratio,ssd,excluded,seconds\n";
    for (const EvalRow& row : report.rows) {
        out << row.id << ',' << row.orig_w << ',' << row.orig_h << ',' << row.target_w << ','
            << row.target_h << ',' << (row.area_ratio ? fmt_double(*row.area_ratio) : "") << ','
            << (row.ssd ? fmt_double(*row.ssd) : "") << ',' << (row.excluded ? 1 : 0) << ','
            << fmt_double(row.seconds) << '\n';
    }
}

void write_report_json(const EvalReport& report, const std::string& path) {
    nlohmann::ordered_json j;
    j["source"] = report.source_label;
    j["n_images"] = report.rows.size();
    j["n_excluded"] = report.n_excluded;
    j["mar"] = report.mar;
    j["mssd"] = report.mssd;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write aggregate JSON: " + path);
    out << j.dump(2) << '\n';
}

std::vector<std::pair<std::string, double>> load_ratings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ratings CSV: " + path);
    std::vector<std::pair<std::string, double>> ratings;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos) throw DataError("malformed ratings line: " + line);
        const std::string method = line.substr(0, comma);
        const std::string value = line.substr(comma + 1);
        if (method == "method") continue;  // header
        try {
            ratings.emplace_back(method, std::stod(value));
        } catch (const std::exception&) {
            throw DataError("non-numeric rating for method " + method + ": " + value);
        }
    }
    if (ratings.empty()) throw DataError("ratings CSV is empty: " + path);
    return ratings;
}

std::pair<double, double> load_aggregate_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open aggregate JSON: " + path);
    nlohmann::json j;
    try {
        in >> j;
        return {j.at("mar").get<double>(), j.at("mssd").get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad aggregate JSON " + path + ": " + e.what());
    }
}

std::vector<std::vector<double>> correlate_reports(const std::vector<MethodScores>& table) {
    if (table.size() < 2) throw DataError("need at least 2 methods to correlate");
    std::vector<double> cols[3];
    for (const MethodScores& m : table) {
        cols[0].push_back(m.rating);
        cols[1].push_back(m.mar);
        cols[2].push_back(-m.mssd);
    }
    std::vector<std::vector<double>> cc(3, std::vector<double>(3, 1.0));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) cc[i][j] = cc[j][i] = pearson_cc(cols[i], cols[j]);
    return cc;
}

}  // namespace carver
