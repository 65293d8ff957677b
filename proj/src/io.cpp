#include "tvseg/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace tvseg {

namespace {

// Consumes PNM-style header tokens: whitespace-separated, with '#' comments
// running to end of line.
std::string next_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  if (token.empty()) throw io_error("truncated header");
  return token;
}

int parse_int(const std::string& token, const std::string& path) {
  try {
    std::size_t pos = 0;
    const int value = std::stoi(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw io_error("bad header field '" + token + "' in " + path);
  }
}

std::vector<std::uint8_t> read_pgm_raster(const std::string& path, int& h, int& w) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  if (next_token(in) != "P5") throw io_error("not a binary PGM file: " + path);
  w = parse_int(next_token(in), path);
  h = parse_int(next_token(in), path);
  const int maxval = parse_int(next_token(in), path);
  if (w < 1 || h < 1) throw io_error("bad dimensions in " + path);
  if (maxval < 1 || maxval > 255) throw io_error("unsupported maxval in " + path);

  std::vector<std::uint8_t> raster(static_cast<std::size_t>(h) * static_cast<std::size_t>(w));
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (in.gcount() != static_cast<std::streamsize>(raster.size())) {
    throw io_error("truncated raster in " + path);
  }
  return raster;
}

float byteswap_float(float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  bits = ((bits & 0xff000000u) >> 24) | ((bits & 0x00ff0000u) >> 8) |
         ((bits & 0x0000ff00u) << 8) | ((bits & 0x000000ffu) << 24);
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

ScalarField read_pgm(const std::string& path) {
  int h = 0, w = 0;
  const std::vector<std::uint8_t> raster = read_pgm_raster(path, h, w);
  ScalarField field(h, w);
  for (std::size_t k = 0; k < raster.size(); ++k) field.values[k] = raster[k] / 255.0;
  return field;
}

void write_pgm(const ScalarField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << "P5\n" << field.width << ' ' << field.height << "\n255\n";
  std::vector<std::uint8_t> raster(field.values.size());
  for (std::size_t k = 0; k < raster.size(); ++k) {
    const double v = std::clamp(field.values[k], 0.0, 1.0);
    raster[k] = static_cast<std::uint8_t>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw io_error("write failed: " + path);
}

BinaryMask read_pgm_mask(const std::string& path) {
  int h = 0, w = 0;
  const std::vector<std::uint8_t> raster = read_pgm_raster(path, h, w);
  BinaryMask mask(h, w);
  for (std::size_t k = 0; k < raster.size(); ++k) mask.bits[k] = raster[k] >= 128 ? 1 : 0;
  return mask;
}

void write_pgm_mask(const BinaryMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << "P5\n" << mask.width << ' ' << mask.height << "\n255\n";
  std::vector<std::uint8_t> raster(mask.bits.size());
  for (std::size_t k = 0; k < raster.size(); ++k) raster[k] = mask.bits[k] ? 255 : 0;
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw io_error("write failed: " + path);
}

ScalarField read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  const std::string magic = next_token(in);
  if (magic == "PF") throw io_error("color PFM not supported: " + path);
  if (magic != "Pf") throw io_error("not a grayscale PFM file: " + path);
  const int w = parse_int(next_token(in), path);
  const int h = parse_int(next_token(in), path);
  if (w < 1 || h < 1) throw io_error("bad dimensions in " + path);
  double scale = 0.0;
  try {
    scale = std::stod(next_token(in));
  } catch (const std::exception&) {
    throw io_error("bad scale field in " + path);
  }
  if (scale == 0.0) throw io_error("zero scale in " + path);
  const bool little_endian = scale < 0.0;

  std::vector<float> raster(static_cast<std::size_t>(h) * static_cast<std::size_t>(w));
  in.read(reinterpret_cast<char*>(raster.data()),
          static_cast<std::streamsize>(raster.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(raster.size() * sizeof(float))) {
    throw io_error("truncated raster in " + path);
  }
  const bool host_little = std::endian::native == std::endian::little;
  if (little_endian != host_little) {
    for (float& v : raster) v = byteswap_float(v);
  }

  // PFM rasters run bottom to top
  ScalarField field(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      field.at(i, j) = raster[static_cast<std::size_t>(h - 1 - i) * w + j];
    }
  }
  require_finite(field, path);
  return field;
}

void write_pfm(const ScalarField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << "Pf\n" << field.width << ' ' << field.height << "\n-1.0\n";
  std::vector<float> raster(field.values.size());
  for (int i = 0; i < field.height; ++i) {
    for (int j = 0; j < field.width; ++j) {
      raster[static_cast<std::size_t>(field.height - 1 - i) * field.width + j] =
          static_cast<float>(field.at(i, j));
    }
  }
  if (std::endian::native == std::endian::big) {
    for (float& v : raster) v = byteswap_float(v);
  }
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size() * sizeof(float)));
  if (!out) throw io_error("write failed: " + path);
}

ScalarField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  in.close();
  if (magic[0] == 'P' && magic[1] == '5') return read_pgm(path);
  if (magic[0] == 'P' && magic[1] == 'f') return read_pfm(path);
  throw io_error("unrecognized field format: " + path);
}

void write_field(const ScalarField& field, const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0) {
    write_pgm(field, path);
  } else {
    write_pfm(field, path);
  }
}

}  // namespace tvseg
