// Writes a small deterministic image/mask pair for CLI-level tests.
// Usage: gen_fixture <dir> [width height]
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "carver/raster.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: gen_fixture <dir> [width height]\n");
        return 1;
    }
    const std::filesystem::path dir = argv[1];
    const int w = argc > 2 ? std::atoi(argv[2]) : 10;
    const int h = argc > 3 ? std::atoi(argv[3]) : 6;
    std::filesystem::create_directories(dir);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    carver::RasterImage img(w, h);
    for (auto& b : img.data) b = static_cast<std::uint8_t>(byte(rng));

    carver::BinaryMask mask(w, h);
    const int c0 = w / 2 - 2, c1 = w / 2 + 1;
    for (int r = 0; r < h; ++r)
        for (int c = c0; c <= c1 && c < w; ++c)
            if (c >= 0) {
                mask.set(r, c, true);
                img.at(r, c, 0) = 220;
                img.at(r, c, 1) = 40;
                img.at(r, c, 2) = 40;
            }

    carver::save_image(img, (dir / "input.png").string());
    carver::save_mask(mask, (dir / "mask.png").string());
    return 0;
}
