#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "carver/raster.hpp"
#include "oracles.hpp"

using namespace carver;

namespace {

RasterImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RasterImage img(w, h);
    for (int row = 0; row < h; ++row)
        for (int col = 0; col < w; ++col) {
            img.at(row, col, 0) = r;
            img.at(row, col, 1) = g;
            img.at(row, col, 2) = b;
        }
    return img;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("to_grayscale luma values") {
    CHECK(to_grayscale(solid(1, 1, 255, 255, 255)).at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(to_grayscale(solid(1, 1, 0, 0, 0)).at(0, 0) == doctest::Approx(0.0));
    CHECK(to_grayscale(solid(1, 1, 255, 0, 0)).at(0, 0) == doctest::Approx(0.299).epsilon(1e-12));
}

TEST_CASE("to_grayscale stays in [0,1] for random images") {
    std::mt19937 rng(1);
    for (int t = 0; t < 20; ++t) {
        const GrayMap g = to_grayscale(oracles::random_image(rng, 7, 5));
        for (double v : g.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("transpose swaps dimensions and indices") {
    RasterImage img(3, 2);
    for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = static_cast<std::uint8_t>(i);
    const RasterImage t = transpose(img);
    CHECK(t.width == 2);
    CHECK(t.height == 3);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c)
            for (int ch = 0; ch < 3; ++ch) CHECK(t.at(c, r, ch) == img.at(r, c, ch));

    const RasterImage one = solid(1, 1, 9, 8, 7);
    CHECK(transpose(one) == one);
}

TEST_CASE("transpose is an involution and preserves the pixel multiset") {
    std::mt19937 rng(2);
    for (int t = 0; t < 10; ++t) {
        const RasterImage img = oracles::random_image(rng, 6, 4);
        CHECK(transpose(transpose(img)) == img);
        auto sorted = [](std::vector<std::uint8_t> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(transpose(img).data) == sorted(img.data));
    }
}

TEST_CASE("png round trip is bit exact") {
    std::mt19937 rng(3);
    const RasterImage img = oracles::random_image(rng, 13, 9);
    const auto path = temp_file("carver_roundtrip.png");
    save_image(img, path.string());
    CHECK(load_image(path.string()) == img);
    std::filesystem::remove(path);
}

TEST_CASE("mask loading with threshold") {
    BinaryMask mask(4, 3);
    const auto white = temp_file("carver_white.png");
    const auto black = temp_file("carver_black.png");
    for (auto& v : mask.salient) v = 1;
    save_mask(mask, white.string());
    for (auto& v : mask.salient) v = 0;
    save_mask(mask, black.string());

    CHECK(load_mask(white.string()).salient_count() == 12);
    CHECK(load_mask(black.string()).salient_count() == 0);
    std::filesystem::remove(white);
    std::filesystem::remove(black);
}

TEST_CASE("gray pixel of value 200 is salient under the default threshold") {
    RasterImage img = solid(3, 3, 0, 0, 0);
    img.at(1, 1, 0) = img.at(1, 1, 1) = img.at(1, 1, 2) = 200;
    const auto path = temp_file("carver_gray.png");
    save_image(img, path.string());
    const BinaryMask mask = load_mask(path.string());
    CHECK(mask.salient_count() == 1);
    CHECK(mask.at(1, 1));
    CHECK_FALSE(load_mask(path.string(), 220).at(1, 1));
    std::filesystem::remove(path);
}

TEST_CASE("io errors are reported distinctly") {
    CHECK_THROWS_AS(load_image("/nonexistent/nowhere.png"), IoError);

    const auto bogus = temp_file("carver_bogus.png");
    std::FILE* f = std::fopen(bogus.string().c_str(), "wb");
    std::fputs("not an image", f);
    std::fclose(f);
    CHECK_THROWS_AS(load_image(bogus.string()), IoError);
    std::filesystem::remove(bogus);

    CHECK_THROWS_AS(RasterImage(0, 5), DataError);
}
