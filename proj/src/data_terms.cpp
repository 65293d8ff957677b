#include "tvseg/data_terms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvseg/grid_ops.hpp"
#include "tvseg/io.hpp"

namespace tvseg {

WeightField edge_weight(const ScalarField& image, double lambda, double mu) {
  if (lambda < 0.0 || mu < 0.0 || lambda + mu <= 0.0) {
    throw std::invalid_argument("edge_weight: need lambda, mu >= 0 with lambda + mu > 0");
  }
  require_finite(image, "edge_weight image");
  const VectorField d = grad(image);
  ScalarField g(image.height, image.width);
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    const double mag2 = d.x[k] * d.x[k] + d.y[k] * d.y[k];
    g.values[k] = lambda / (1.0 + mag2) + mu;
  }
  return WeightField(std::move(g));
}

ScalarField median_background(const std::vector<ScalarField>& frames) {
  if (frames.empty()) throw std::invalid_argument("median_background: no frames");
  for (const ScalarField& f : frames) {
    require_same_shape(frames.front(), f, "median_background");
  }
  const std::size_t n = frames.size();
  ScalarField out(frames.front().height, frames.front().width);
  std::vector<double> column(n);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    for (std::size_t t = 0; t < n; ++t) column[t] = frames[t].values[k];
    const std::size_t mid = (n - 1) / 2;  // lower median for even counts
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    out.values[k] = column[mid];
  }
  return out;
}

ScalarField background_difference(const ScalarField& frame, const ScalarField& background) {
  require_same_shape(frame, background, "background_difference");
  ScalarField out(frame.height, frame.width);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] = std::abs(background.values[k] - frame.values[k]);
  }
  return out;
}

ScalarField load_flow_norm(const std::string& path) {
  ScalarField field = read_field(path);
  for (double v : field.values) {
    if (v < 0.0) throw io_error("flow norm field has negative entries: " + path);
  }
  return field;
}

}  // namespace tvseg
