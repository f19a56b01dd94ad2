// carver: seam-carving retargeting plus the MAR/MSSD evaluation harness.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data error.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carver/bench.hpp"
#include "carver/carve.hpp"
#include "carver/importance.hpp"
#include "carver/metrics.hpp"
#include "carver/raster.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitData = 3;

struct RetargetArgs {
    std::string input, out, importance = "sobel";
    std::string mask_path, mask_out, seam_trace;
    int width = -1, height = -1;
    bool static_map = false;
};

struct SquareArgs {
    std::string input, out, importance = "sobel";
    std::string mask_path, mask_out, seam_trace;
    bool static_map = false;
};

struct EvaluateArgs {
    std::string dataset, importance = "sobel";
    std::string csv_out, json_out;
    std::string image_suffix = ".jpg", mask_suffix = ".png";
    int n_points = 100;
    int threads = 0;
};

struct CorrelateArgs {
    std::string ratings_csv;
    std::vector<std::string> aggregates;
};

carver::CarveResult carve_with_optional_mask(const carver::RasterImage& img,
                                             const std::optional<carver::BinaryMask>& mask,
                                             const carver::ImportanceSource& src, int target_width,
                                             const carver::CarveOptions& opts) {
    return carver::carve_to_width(img, mask ? &*mask : nullptr, src, target_width, opts);
}

int run_retarget(const RetargetArgs& args) {
    const carver::ImportanceSource src = carver::parse_importance_source(args.importance);
    const carver::RasterImage img = carver::load_image(args.input);
    std::optional<carver::BinaryMask> mask;
    if (!args.mask_path.empty()) mask = carver::load_mask(args.mask_path);

    const int target_w = args.width < 0 ? img.width : args.width;
    const int target_h = args.height < 0 ? img.height : args.height;

    carver::CarveOptions opts{.static_map = args.static_map};
    carver::CarveResult result = carve_with_optional_mask(img, mask, src, target_w, opts);
    std::vector<carver::Seam> all_seams = std::move(result.seams);

    if (target_h != result.image.height) {
        // Height reduction runs the same vertical carve on the transposed image.
        carver::RasterImage t = carver::transpose(result.image);
        std::optional<carver::BinaryMask> tmask;
        if (result.mask) tmask = carver::transpose(*result.mask);
        carver::CarveResult r2 = carve_with_optional_mask(t, tmask, src, target_h, opts);
        result.image = carver::transpose(r2.image);
        if (r2.mask) result.mask = carver::transpose(*r2.mask);
        all_seams.insert(all_seams.end(), r2.seams.begin(), r2.seams.end());
    }

    carver::save_image(result.image, args.out);
    if (result.mask && !args.mask_out.empty()) carver::save_mask(*result.mask, args.mask_out);
    if (!args.seam_trace.empty()) carver::write_seam_trace(all_seams, args.seam_trace);
    return 0;
}

int run_square(const SquareArgs& args) {
    const carver::ImportanceSource src = carver::parse_importance_source(args.importance);
    const carver::RasterImage img = carver::load_image(args.input);
    std::optional<carver::BinaryMask> mask;
    if (!args.mask_path.empty()) mask = carver::load_mask(args.mask_path);

    carver::CarveOptions opts{.static_map = args.static_map};
    const carver::CarveResult result =
        carver::make_it_square(img, mask ? &*mask : nullptr, src, opts);

    carver::save_image(result.image, args.out);
    if (result.mask && !args.mask_out.empty()) carver::save_mask(*result.mask, args.mask_out);
    if (!args.seam_trace.empty()) carver::write_seam_trace(result.seams, args.seam_trace);
    return 0;
}

int run_evaluate(const EvaluateArgs& args) {
    const carver::ImportanceSource src = carver::parse_importance_source(args.importance);
    const auto entries = carver::scan_dataset(args.dataset, args.image_suffix, args.mask_suffix);
    const carver::EvalReport report =
        carver::evaluate_dataset(entries, src, args.n_points, args.threads);
    if (!args.csv_out.empty()) carver::write_report_csv(report, args.csv_out);
    if (!args.json_out.empty()) carver::write_report_json(report, args.json_out);
    std::printf("source=%s n_images=%zu n_excluded=%zu MAR=%.12g MSSD=%.12g\n",
                report.source_label.c_str(), report.rows.size(), report.n_excluded, report.mar,
                report.mssd);
    return 0;
}

int run_correlate(const CorrelateArgs& args) {
    const auto ratings = carver::load_ratings_csv(args.ratings_csv);
    if (args.aggregates.size() != ratings.size())
        throw carver::DataError("need one aggregate file per rated method");

    std::vector<carver::MethodScores> table;
    for (size_t i = 0; i < ratings.size(); ++i) {
        const auto [mar, mssd] = carver::load_aggregate_json(args.aggregates[i]);
        table.push_back({ratings[i].first, ratings[i].second, mar, mssd});
    }

    const auto cc = carver::correlate_reports(table);
    std::printf("%-10s", "");
    for (const char* name : carver::kCorrelationOrder) std::printf(" %10s", name);
    std::printf("\n");
    for (int i = 0; i < 3; ++i) {
        std::printf("%-10s", carver::kCorrelationOrder[i]);
        for (int j = 0; j < 3; ++j) std::printf(" %10.4f", cc[i][j]);
        std::printf("\n");
    }
    std::printf(
        "note: MSSD-based cells are sensitive to input rounding; published MSSD tables rounded to\n"
        "4 decimals have a spread at rounding scale, so those cells are indicative only.\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seam-carving image retargeting and MAR/MSSD evaluation"};
    app.require_subcommand(1);

    RetargetArgs rt;
    CLI::App* retarget = app.add_subcommand("retarget", "Carve an image to the given size");
    retarget->add_option("--input", rt.input, "Input image (PNG/JPEG)")->required();
    retarget->add_option("--out", rt.out, "Output PNG")->required();
    retarget->add_option("--width", rt.width, "Target width");
    retarget->add_option("--height", rt.height, "Target height");
    retarget->add_option("--importance", rt.importance, "sobel | grad | external:<path> | mask");
    retarget->add_option("--mask", rt.mask_path, "Ground-truth mask carved in lockstep");
    retarget->add_option("--mask-out", rt.mask_out, "Output PNG for the carved mask");
    retarget->add_option("--emit-seams", rt.seam_trace, "Write seam trace to this path");
    retarget->add_flag("--static-map", rt.static_map, "Do not recompute derived maps between removals");

    SquareArgs sq;
    CLI::App* square = app.add_subcommand("square", "Make-It-Square: carve to side min(w,h)");
    square->add_option("--input", sq.input, "Input image (PNG/JPEG)")->required();
    square->add_option("--out", sq.out, "Output PNG")->required();
    square->add_option("--importance", sq.importance, "sobel | grad | external:<path> | mask");
    square->add_option("--mask", sq.mask_path, "Ground-truth mask carved in lockstep");
    square->add_option("--mask-out", sq.mask_out, "Output PNG for the carved mask");
    square->add_option("--emit-seams", sq.seam_trace, "Write seam trace to this path");
    square->add_flag("--static-map", sq.static_map, "Do not recompute derived maps between removals");

    EvaluateArgs ev;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Batch Make-It-Square over an image/mask dataset");
    evaluate->add_option("--dataset", ev.dataset, "Directory of image/mask pairs")->required();
    evaluate->add_option("--importance", ev.importance, "sobel | grad | external:<path> | mask");
    evaluate->add_option("--csv", ev.csv_out, "Per-image report CSV path");
    evaluate->add_option("--json", ev.json_out, "Aggregate JSON path");
    evaluate->add_option("--image-suffix", ev.image_suffix, "Image filename suffix (default .jpg)");
    evaluate->add_option("--mask-suffix", ev.mask_suffix, "Mask filename suffix (default .png)");
    evaluate->add_option("--points", ev.n_points, "Shape-context sample points (default 100)");
    evaluate->add_option("--threads", ev.threads, "Worker threads (default: hardware concurrency)");

    CorrelateArgs co;
    CLI::App* correlate = app.add_subcommand("correlate", "Pearson CC matrix of ratings vs MAR vs -MSSD");
    correlate->add_option("--ratings", co.ratings_csv, "CSV of method,rating")->required();
    correlate->add_option("aggregates", co.aggregates, "Aggregate JSON files, one per rated method")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*retarget) return run_retarget(rt);
        if (*square) return run_square(sq);
        if (*evaluate) return run_evaluate(ev);
        if (*correlate) return run_correlate(co);
    } catch (const carver::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const carver::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
    return kExitUsage;
}
