#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvseg {

struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Real-valued function on the H x W pixel grid.
/// Index convention, fixed project-wide: i is the row index, j the column,
/// entry (i,j) lives at values[i*width + j].
struct ScalarField {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(int h, int w, double fill = 0.0);
  ScalarField(int h, int w, std::vector<double> data);

  double& at(int i, int j) { return values[index(i, j)]; }
  double at(int i, int j) const { return values[index(i, j)]; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width) + static_cast<std::size_t>(j);
  }
  std::size_t size() const { return values.size(); }

  double min_value() const;
  double max_value() const;
};

/// Two-component vector field on the grid (one (x,y) pair per pixel).
struct VectorField {
  int height = 0;
  int width = 0;
  std::vector<double> x;
  std::vector<double> y;

  VectorField() = default;
  VectorField(int h, int w);

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width) + static_cast<std::size_t>(j);
  }
  std::size_t size() const { return x.size(); }
  void fill(double value);
};

/// theta in {0,1} per pixel; the shape being optimized.
struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int h, int w, std::uint8_t fill = 0);

  std::uint8_t& at(int i, int j) { return bits[index(i, j)]; }
  std::uint8_t at(int i, int j) const { return bits[index(i, j)]; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width) + static_cast<std::size_t>(j);
  }
  std::size_t size() const { return bits.size(); }

  long long count() const;
  ScalarField to_scalar() const;

  bool operator==(const BinaryMask& other) const = default;
};

/// Strictly positive per-pixel weight g with its maximum cached at
/// construction. The cache is what the solver's step-size bound reads.
class WeightField {
 public:
  explicit WeightField(ScalarField g);
  WeightField(int h, int w, double fill);

  const ScalarField& field() const { return g_; }
  double at(int i, int j) const { return g_.at(i, j); }
  double max() const { return max_g_; }
  int height() const { return g_.height; }
  int width() const { return g_.width; }

 private:
  ScalarField g_;
  double max_g_ = 0.0;
};

bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& p);

void require_finite(const ScalarField& f, const std::string& what);
void require_same_shape(const ScalarField& a, const ScalarField& b, const std::string& what);
void require_same_shape(const ScalarField& a, const BinaryMask& b, const std::string& what);

bool is_subset(const BinaryMask& inner, const BinaryMask& outer);
long long symmetric_difference(const BinaryMask& a, const BinaryMask& b);

}  // namespace tvseg
