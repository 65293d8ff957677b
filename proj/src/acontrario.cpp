#include "tvseg/acontrario.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <stdexcept>

#include "tvseg/level_set.hpp"

namespace tvseg {

double hoeffding_H(double x, double y) {
  if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0)) {
    throw std::invalid_argument("hoeffding_H: arguments must lie strictly inside (0,1)");
  }
  return x * std::log(x / y) + (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
}

double detection_threshold(int n_total, int window_size, double epsilon) {
  if (n_total < 1 || window_size < 1 || !(epsilon > 0.0)) {
    throw std::invalid_argument("detection_threshold: invalid parameters");
  }
  return std::log(static_cast<double>(n_total) / epsilon) / window_size;
}

DetectionResult detect(const ScalarField& field, const DetectionParams& params) {
  if (params.radius < 0) throw std::invalid_argument("detect: radius must be nonnegative");
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("detect: epsilon must be positive");
  require_finite(field, "detection field");
  for (double v : field.values) {
    if (v < 0.0) throw std::invalid_argument("detect: field must be nonnegative");
  }
  const double peak = field.max_value();
  if (peak == 0.0) throw std::invalid_argument("detect: field is identically zero");

  const int h = field.height, w = field.width;
  ScalarField psi(h, w);
  for (std::size_t k = 0; k < psi.values.size(); ++k) {
    const double t = params.psi_mode == PsiMode::scale_by_max ? field.values[k] / peak
                                                              : field.values[k];
    psi.values[k] = std::min(t, 1.0);
  }

  const int r = params.radius;
  ScalarField means(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double sum = 0.0;
      int count = 0;
      for (int a = std::max(0, i - r); a <= std::min(h - 1, i + r); ++a) {
        for (int b = std::max(0, j - r); b <= std::min(w - 1, j + r); ++b) {
          sum += psi.at(a, b);
          ++count;
        }
      }
      means.at(i, j) = sum / count;
    }
  }

  double mu_hat = 0.0;
  for (double v : means.values) mu_hat += v;
  mu_hat /= static_cast<double>(means.values.size());

  const int window = (2 * r + 1) * (2 * r + 1);
  const double bound = detection_threshold(h * w, window, params.epsilon);

  BinaryMask mask(h, w);
  for (std::size_t k = 0; k < means.values.size(); ++k) {
    const double e = means.values[k];
    if (e > mu_hat && e < 1.0 && hoeffding_H(e, mu_hat) >= bound) mask.bits[k] = 1;
  }
  return {std::move(mask), std::move(means), mu_hat};
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius < 0) throw std::invalid_argument("erode: radius must be nonnegative");
  if (radius == 0) return mask;
  const int h = mask.height, w = mask.width;
  BinaryMask out(h, w);
  for (int i = radius; i < h - radius; ++i) {
    for (int j = radius; j < w - radius; ++j) {
      bool all = true;
      for (int a = i - radius; all && a <= i + radius; ++a) {
        for (int b = j - radius; b <= j + radius; ++b) {
          if (!mask.at(a, b)) {
            all = false;
            break;
          }
        }
      }
      out.at(i, j) = all ? 1 : 0;
    }
  }
  return out;
}

std::vector<double> level_candidates(const ScalarField& u) {
  std::set<double> distinct(u.values.begin(), u.values.end());
  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  candidates.push_back(*distinct.begin() - 1.0);
  for (auto it = distinct.begin(); std::next(it) != distinct.end(); ++it) {
    candidates.push_back(0.5 * (*it + *std::next(it)));
  }
  candidates.push_back(*distinct.rbegin() + 1.0);
  return candidates;
}

MatchResult detect_and_match(const ScalarField& field, const ScalarField& u,
                             const DetectionParams& params) {
  require_same_shape(field, u, "detect_and_match");
  const DetectionResult det = detect(field, params);
  const BinaryMask eroded = erode(det.mask, params.radius / 2);
  const LevelMatch match = closest_level_set(u, eroded, level_candidates(u));
  return {match.mask, match.level, match.distance};
}

}  // namespace tvseg
