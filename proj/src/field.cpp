#include "tvseg/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tvseg {

namespace {

void require_positive_dims(int h, int w, const char* what) {
  if (h < 1 || w < 1) {
    throw std::invalid_argument(std::string(what) + ": dimensions must be positive, got " +
                                std::to_string(h) + "x" + std::to_string(w));
  }
}

}  // namespace

ScalarField::ScalarField(int h, int w, double fill) : height(h), width(w) {
  require_positive_dims(h, w, "ScalarField");
  values.assign(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), fill);
}

ScalarField::ScalarField(int h, int w, std::vector<double> data) : height(h), width(w), values(std::move(data)) {
  require_positive_dims(h, w, "ScalarField");
  if (values.size() != static_cast<std::size_t>(h) * static_cast<std::size_t>(w)) {
    throw std::invalid_argument("ScalarField: value count does not match dimensions");
  }
  require_finite(*this, "ScalarField");
}

double ScalarField::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double ScalarField::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

VectorField::VectorField(int h, int w) : height(h), width(w) {
  require_positive_dims(h, w, "VectorField");
  const std::size_t n = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
  x.assign(n, 0.0);
  y.assign(n, 0.0);
}

void VectorField::fill(double value) {
  std::fill(x.begin(), x.end(), value);
  std::fill(y.begin(), y.end(), value);
}

BinaryMask::BinaryMask(int h, int w, std::uint8_t fill) : height(h), width(w) {
  require_positive_dims(h, w, "BinaryMask");
  if (fill > 1) throw std::invalid_argument("BinaryMask: fill must be 0 or 1");
  bits.assign(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), fill);
}

long long BinaryMask::count() const {
  long long c = 0;
  for (std::uint8_t b : bits) c += b;
  return c;
}

ScalarField BinaryMask::to_scalar() const {
  ScalarField f(height, width);
  for (std::size_t k = 0; k < bits.size(); ++k) f.values[k] = bits[k] ? 1.0 : 0.0;
  return f;
}

WeightField::WeightField(ScalarField g) : g_(std::move(g)) {
  require_finite(g_, "WeightField");
  max_g_ = -std::numeric_limits<double>::infinity();
  for (double v : g_.values) {
    if (v <= 0.0) throw std::invalid_argument("WeightField: weights must be strictly positive");
    max_g_ = std::max(max_g_, v);
  }
}

WeightField::WeightField(int h, int w, double fill) : WeightField(ScalarField(h, w, fill)) {}

bool all_finite(const ScalarField& f) {
  for (double v : f.values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool all_finite(const VectorField& p) {
  for (double v : p.x) {
    if (!std::isfinite(v)) return false;
  }
  for (double v : p.y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_finite(const ScalarField& f, const std::string& what) {
  if (!all_finite(f)) throw std::invalid_argument(what + ": non-finite entry");
}

void require_same_shape(const ScalarField& a, const ScalarField& b, const std::string& what) {
  if (a.height != b.height || a.width != b.width) {
    throw std::invalid_argument(what + ": dimension mismatch (" + std::to_string(a.height) + "x" +
                                std::to_string(a.width) + " vs " + std::to_string(b.height) + "x" +
                                std::to_string(b.width) + ")");
  }
}

void require_same_shape(const ScalarField& a, const BinaryMask& b, const std::string& what) {
  if (a.height != b.height || a.width != b.width) {
    throw std::invalid_argument(what + ": dimension mismatch");
  }
}

bool is_subset(const BinaryMask& inner, const BinaryMask& outer) {
  if (inner.height != outer.height || inner.width != outer.width) return false;
  for (std::size_t k = 0; k < inner.bits.size(); ++k) {
    if (inner.bits[k] && !outer.bits[k]) return false;
  }
  return true;
}

long long symmetric_difference(const BinaryMask& a, const BinaryMask& b) {
  if (a.height != b.height || a.width != b.width) {
    throw std::invalid_argument("symmetric_difference: dimension mismatch");
  }
  long long d = 0;
  for (std::size_t k = 0; k < a.bits.size(); ++k) d += (a.bits[k] != b.bits[k]) ? 1 : 0;
  return d;
}

}  // namespace tvseg
