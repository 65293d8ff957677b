#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "tvseg/io.hpp"

using namespace tvseg;
using namespace tvseg::test;

namespace {

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("masks survive a round trip") {
  std::mt19937 rng(90);
  const BinaryMask mask = random_mask(rng, 7, 9);
  TempFile f("io_mask.pgm");
  write_pgm_mask(mask, f.path);
  CHECK(read_pgm_mask(f.path) == mask);
}

TEST_CASE("mask reading splits at half intensity") {
  TempFile f("io_levels.pgm");
  write_bytes(f.path, std::string("P5\n4 1\n255\n") + '\x00' + '\x7f' + '\x80' + '\xff');
  const BinaryMask mask = read_pgm_mask(f.path);
  CHECK(mask.bits == std::vector<std::uint8_t>{0, 0, 1, 1});
}

TEST_CASE("quantized gray values round-trip exactly") {
  ScalarField field(2, 3);
  field.values = {0.0, 1.0 / 255.0, 128.0 / 255.0, 200.0 / 255.0, 1.0, 37.0 / 255.0};
  TempFile f("io_gray.pgm");
  write_pgm(field, f.path);
  const ScalarField back = read_pgm(f.path);
  CHECK(back.values == field.values);
}

TEST_CASE("gray writing clamps and rounds") {
  ScalarField field(1, 3);
  field.values = {-0.5, 0.5, 1.5};
  TempFile f("io_clamp.pgm");
  write_pgm(field, f.path);
  const ScalarField back = read_pgm(f.path);
  CHECK(back.values[0] == 0.0);
  CHECK(back.values[1] == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
  CHECK(back.values[2] == 1.0);
}

TEST_CASE("header comments and odd whitespace are accepted") {
  TempFile f("io_comments.pgm");
  write_bytes(f.path, std::string("P5 # magic\n# a comment line\n 2\t1 # dims\n255\n") +
                          '\x40' + '\xc0');
  const ScalarField field = read_pgm(f.path);
  CHECK(field.height == 1);
  CHECK(field.width == 2);
  CHECK(field.values[0] == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
}

TEST_CASE("wide maxval and foreign magics are rejected") {
  TempFile wide("io_wide.pgm");
  write_bytes(wide.path, "P5\n1 1\n65535\n\x01\x01");
  CHECK_THROWS_AS(read_pgm(wide.path), io_error);

  TempFile color("io_color.pfm");
  write_bytes(color.path, "PF\n1 1\n-1.0\n aaaaaaaaaaaa");
  CHECK_THROWS_AS(read_pfm(color.path), io_error);

  TempFile junk("io_junk.pgm");
  write_bytes(junk.path, "hello");
  CHECK_THROWS_AS(read_pgm(junk.path), io_error);
  CHECK_THROWS_AS(read_field(junk.path), io_error);
}

TEST_CASE("truncated rasters are rejected") {
  TempFile f("io_short.pgm");
  write_bytes(f.path, "P5\n4 4\n255\nabc");
  CHECK_THROWS_AS(read_pgm(f.path), io_error);

  TempFile g("io_short.pfm");
  write_bytes(g.path, "Pf\n2 2\n-1.0\nabcdef");
  CHECK_THROWS_AS(read_pfm(g.path), io_error);
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_AS(read_field("does_not_exist_anywhere.pgm"), io_error);
}

TEST_CASE("float fields round-trip exactly at storage precision") {
  std::mt19937 rng(91);
  ScalarField field = random_field(rng, 5, 8, -4.0, 4.0);
  for (double& v : field.values) v = static_cast<float>(v);
  TempFile f("io_field.pfm");
  write_pfm(field, f.path);
  CHECK(read_pfm(f.path).values == field.values);
}

TEST_CASE("reading narrows doubles to storage precision") {
  ScalarField field(1, 1, 0.1);  // not representable in 32 bits
  TempFile f("io_narrow.pfm");
  write_pfm(field, f.path);
  CHECK(read_pfm(f.path).values[0] == static_cast<double>(static_cast<float>(0.1)));
}

TEST_CASE("big-endian float data is understood") {
  // scale +1.0 marks big endian; 0x3f800000 is 1.0f
  const std::string header = "Pf\n2 1\n1.0\n";
  const std::string raster = {'\x3f', '\x80', '\x00', '\x00', '\x40', '\x00', '\x00', '\x00'};
  TempFile f("io_bigendian.pfm");
  write_bytes(f.path, header + raster);
  const ScalarField field = read_pfm(f.path);
  CHECK(field.values == std::vector<double>{1.0, 2.0});
}

TEST_CASE("rows are stored bottom to top") {
  ScalarField field(2, 1);
  field.values = {5.0, 9.0};  // row 0 holds 5, row 1 holds 9
  TempFile f("io_roworder.pfm");
  write_pfm(field, f.path);
  const std::string bytes = slurp(f.path);
  // raster starts after the third newline; the first stored float is the
  // bottom row (9.0f little endian)
  const std::size_t raster = bytes.find("-1.0\n") + 5;
  const std::string first4 = bytes.substr(raster, 4);
  CHECK(first4 == std::string("\x00\x00\x10\x41", 4));
  CHECK(read_pfm(f.path).values == field.values);
}

TEST_CASE("format dispatch follows magic on read and suffix on write") {
  std::mt19937 rng(92);
  ScalarField field = random_field(rng, 3, 3);
  for (double& v : field.values) v = static_cast<float>(v);

  TempFile a("io_dispatch.pfm");
  write_field(field, a.path);
  CHECK(slurp(a.path).substr(0, 2) == "Pf");
  CHECK(read_field(a.path).values == field.values);

  TempFile b("io_dispatch.pgm");
  write_field(field, b.path);
  CHECK(slurp(b.path).substr(0, 2) == "P5");
  const ScalarField back = read_field(b.path);
  for (std::size_t k = 0; k < back.size(); ++k)
    CHECK(back.values[k] == doctest::Approx(field.values[k]).epsilon(0.5 / 255.0 + 1e-9));
}

}  // TEST_SUITE
