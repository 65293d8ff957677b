#pragma once

#include <string>
#include <vector>

#include "tvseg/field.hpp"

namespace tvseg {

// Edge-stopping weight g = lambda / (1 + |grad I|^2) + mu, with the squared
// gradient magnitude taken from the forward differences. Entries lie in
// (mu, lambda + mu]. Requires lambda, mu >= 0 and lambda + mu > 0.
// The formula is scale-sensitive: pass the image in the intensity range the
// weights should respond to (0..255 for 8-bit imagery, or normalized).
WeightField edge_weight(const ScalarField& image, double lambda, double mu);

// Per-pixel temporal median over the stack; even frame counts take the lower
// median.
ScalarField median_background(const std::vector<ScalarField>& frames);

// f = |background - frame| per pixel.
ScalarField background_difference(const ScalarField& frame, const ScalarField& background);

// Reads a motion-magnitude field from a PFM or PGM file and validates that it
// is nonnegative. Flow estimation itself is upstream of this tool.
ScalarField load_flow_norm(const std::string& path);

}  // namespace tvseg
