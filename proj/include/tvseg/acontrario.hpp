#pragma once

#include <vector>

#include "tvseg/field.hpp"

namespace tvseg {

enum class PsiMode {
  scale_by_max,  // psi(t) = t / max(field)
  clamp_only,    // psi(t) = min(t, 1); input assumed already near [0, 1]
};

struct DetectionParams {
  int radius = 3;          // window is (2*radius+1)^2 pixels
  double epsilon = 1.0;    // expected number of false alarms allowed
  PsiMode psi_mode = PsiMode::scale_by_max;
};

// Binary relative entropy H(x, y) = x ln(x/y) + (1-x) ln((1-x)/(1-y)) for
// x, y strictly inside (0, 1). Nonnegative, zero iff x = y.
double hoeffding_H(double x, double y);

// Rejection threshold (1/N) ln(n_total / epsilon) for window size N over an
// image of n_total pixels.
double detection_threshold(int n_total, int window_size, double epsilon);

struct DetectionResult {
  BinaryMask mask;
  ScalarField window_means;  // E_x per pixel
  double mu_hat = 0.0;       // image mean of E_x
};

// Marks pixels whose windowed mean of the normalized field deviates from the
// global mean by more than a large-deviation bound can explain: detect where
// mu_hat < E_x < 1 and H(E_x, mu_hat) >= (1/N) ln(n_total / epsilon), with
// N = (2 radius + 1)^2. Windows are clipped at the borders and averaged over
// the clipped pixel count. The field must be nonnegative and not identically
// zero.
DetectionResult detect(const ScalarField& field, const DetectionParams& params);

// Erosion by a square of half-width radius; a pixel survives only when the
// whole window fits inside the image and is entirely ones.
BinaryMask erode(const BinaryMask& mask, int radius);

struct MatchResult {
  BinaryMask mask;
  double level = 0.0;
  long long distance = 0;
};

// Candidate thresholds spanning every distinct level set of u: midpoints
// between consecutive distinct values, plus min(u) - 1 (full mask) and
// max(u) + 1 (empty mask).
std::vector<double> level_candidates(const ScalarField& u);

// Full pipeline: detect on `field`, erode by radius/2, then pick the level set
// of u closest to the eroded mask. Candidate levels are the midpoints between
// consecutive distinct values of u plus one level below min(u) (full mask) and
// one above max(u) (empty mask).
MatchResult detect_and_match(const ScalarField& field, const ScalarField& u,
                             const DetectionParams& params);

}  // namespace tvseg
