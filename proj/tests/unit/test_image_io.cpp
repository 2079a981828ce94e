#include <gtest/gtest.h>
#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "condmorph/image_io.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace condmorph;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("condmorph_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

// 2x1 RGB image at 16 bits per channel.
void write_png16(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  png_init_io(png, f);
  png_set_IHDR(png, info, 2, 1, 16, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(2 * 3 * 2, 0x80);
  png_write_row(png, row.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(f);
}

}  // namespace

TEST(Ppm, EncodeDecodeRoundTrip) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto img = oracle::random_image(rng, 9, 20);
    EXPECT_EQ(decode_ppm(encode_ppm(img)), img);
  }
  TempDir dir;
  const auto img = oracle::random_image(rng, 7, 7);
  write_ppm(dir.file("a.ppm"), img);
  EXPECT_EQ(read_ppm(dir.file("a.ppm")), img);
  write_image(dir.file("b.pnm"), img);
  EXPECT_EQ(read_image(dir.file("b.pnm")), img);
}

TEST(Ppm, HeaderCommentsAndErrors) {
  const std::string body("\xff\x00\x00\x00\x00\xff", 6);
  const auto img = decode_ppm("P6\n# made by hand\n2 # width\n1\n255\n" + body);
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.color(0), (ColorValue{1, 0, 0}));
  EXPECT_EQ(img.color(1), (ColorValue{0, 0, 1}));

  EXPECT_ERROR_CODE(decode_ppm("P5\n2 1\n255\n\x01\x02"), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(decode_ppm("P6\n2 1\n65535\n" + std::string(12, '\0')), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(decode_ppm("P6\n2 1\n255\n\x01"), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(read_ppm("/nonexistent/x.ppm"), ErrorCode::kFormat);
}

TEST(Png, RoundTripAndBitDepth) {
  TempDir dir;
  std::mt19937_64 rng(2);
  const auto img = oracle::random_image(rng, 12, 30);
  write_png(dir.file("a.png"), img);
  EXPECT_EQ(read_png(dir.file("a.png")), img);
  EXPECT_EQ(read_image(dir.file("a.png")), img);

  write_png16(dir.file("deep.png"));
  const auto code = testutil::error_of([&] { read_png(dir.file("deep.png")); });
  EXPECT_EQ(code, std::optional(ErrorCode::kFormat));
  try {
    read_png(dir.file("deep.png"));
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bit depth"), std::string::npos);
  }

  write_bytes(dir.file("junk.png"), "not a png at all");
  EXPECT_ERROR_CODE(read_png(dir.file("junk.png")), ErrorCode::kFormat);
}

TEST(Cifar, FixtureRecordsDecode) {
  const auto path = testutil::cifar_fixture();
  EXPECT_EQ(cifar_record_count(path), 200u);
  const auto imgs = load_cifar_batch(path, 0, 100);
  ASSERT_EQ(imgs.size(), 100u);
  for (const auto& img : imgs) {
    EXPECT_EQ(img.width(), 32);
    EXPECT_EQ(img.height(), 32);
    EXPECT_EQ(img.channels(), 3);
  }
  // planar layout: byte 1 is R of pixel 0, byte 1025 its G, byte 2049 its B
  std::ifstream in(path, std::ios::binary);
  std::string rec(kCifarRecordBytes, '\0');
  in.seekg(static_cast<std::streamoff>(5 * kCifarRecordBytes));
  in.read(rec.data(), static_cast<std::streamsize>(rec.size()));
  const auto five = load_cifar_batch(path, 5, 1).at(0);
  for (std::size_t p : {std::size_t{0}, std::size_t{77}, std::size_t{1023}}) {
    EXPECT_EQ(five.color(p), ColorValue::from_rgb8(static_cast<std::uint8_t>(rec[1 + p]),
                                                   static_cast<std::uint8_t>(rec[1025 + p]),
                                                   static_cast<std::uint8_t>(rec[2049 + p])));
  }
  EXPECT_EQ(load_cifar_batch(path, 199, 1).size(), 1u);
  EXPECT_TRUE(load_cifar_batch(path, 10, 0).empty());
}

TEST(Cifar, Errors) {
  TempDir dir;
  write_bytes(dir.file("short.bin"), "x");
  EXPECT_ERROR_CODE(cifar_record_count(dir.file("short.bin")), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(load_cifar_batch(dir.file("short.bin"), 0, 1), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(load_cifar_batch(testutil::cifar_fixture(), 150, 100), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(load_cifar_batch(dir.file("missing.bin"), 0, 1), ErrorCode::kFormat);
}
