#pragma once

#include <stdexcept>
#include <string>

#include "tvseg/field.hpp"

namespace tvseg {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 8-bit binary PGM (magic P5, maxval <= 255). Values are returned normalized
// to [0, 1]; writing quantizes with rounding after clamping to [0, 1].
ScalarField read_pgm(const std::string& path);
void write_pgm(const ScalarField& field, const std::string& path);

// Masks as PGM: 255 inside, 0 outside on write; >= 128 counts as inside on
// read.
BinaryMask read_pgm_mask(const std::string& path);
void write_pgm_mask(const BinaryMask& mask, const std::string& path);

// Grayscale PFM (magic Pf), 32-bit floats, rows stored bottom to top. Written
// with scale -1.0 (little endian); both byte orders are accepted on read.
ScalarField read_pfm(const std::string& path);
void write_pfm(const ScalarField& field, const std::string& path);

// Reads either format, sniffing the magic number.
ScalarField read_field(const std::string& path);

// PGM when the path ends in .pgm, PFM otherwise.
void write_field(const ScalarField& field, const std::string& path);

}  // namespace tvseg
