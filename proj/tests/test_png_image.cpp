#include <gtest/gtest.h>

#include <filesystem>

#include "bannergen/image.hpp"
#include "bannergen/png_io.hpp"
#include "bannergen/rng.hpp"
#include "test_support.hpp"

using namespace bannergen;

TEST(Png, EncodeDecodeRoundTrip) {
    Rng rng(123);
    Image img(37, 23);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            img.set(x, y,
                    Rgb{std::uint8_t(rng.next_int(0, 255)), std::uint8_t(rng.next_int(0, 255)),
                        std::uint8_t(rng.next_int(0, 255))},
                    std::uint8_t(rng.next_int(0, 255)));
    const auto bytes = png_encode(img);
    const Image back = png_decode(bytes.data(), bytes.size());
    EXPECT_EQ(back, img);
}

TEST(Png, EncodeIsDeterministic) {
    Image img(16, 16);
    img.fill(Rgb{10, 200, 30}, 255);
    EXPECT_EQ(png_encode(img), png_encode(img));
}

TEST(Png, FileRoundTrip) {
    const auto dir = bgtest::temp_dir("png");
    Image img(8, 5);
    img.fill(Rgb{255, 0, 0}, 128);
    png_save(img, dir / "x.png");
    EXPECT_EQ(png_load(dir / "x.png"), img);
    std::filesystem::remove_all(dir);
}

TEST(Png, RejectsGarbage) {
    const std::uint8_t junk[] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    EXPECT_THROW(png_decode(junk, sizeof(junk)), PngError);
}

TEST(Image, BilinearResizePreservesSolidColor) {
    Image img(10, 10);
    img.fill(Rgb{40, 90, 160}, 200);
    const Image big = resize_bilinear(img, 23, 17);
    for (int y = 0; y < big.height(); ++y)
        for (int x = 0; x < big.width(); ++x) {
            EXPECT_EQ(big.rgb(x, y), (Rgb{40, 90, 160}));
            EXPECT_EQ(big.alpha(x, y), 200);
        }
}

TEST(Image, HueRotateImageMatchesPerPixel) {
    Image img(4, 4);
    img.fill(Rgb{255, 0, 0}, 255);
    const Image rot = hue_rotate_image(img, 120.0);
    EXPECT_EQ(rot.rgb(2, 2), (Rgb{0, 255, 0}));
    EXPECT_EQ(rot.alpha(2, 2), 255);
}
