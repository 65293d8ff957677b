// Deterministic fixture generator for exercising the CLI on synthetic data.
#include <algorithm>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "tvseg/field.hpp"
#include "tvseg/io.hpp"

namespace {

std::string indexed_path(const std::string& pattern, int index) {
  const auto pos = pattern.find("{}");
  if (pos == std::string::npos) {
    throw std::invalid_argument("frame output pattern needs a {} placeholder");
  }
  return pattern.substr(0, pos) + std::to_string(index) + pattern.substr(pos + 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic field generator"};
  std::string kind = "square";
  std::string output;
  int height = 64, width = 64, count = 3;
  unsigned int seed = 1;
  double inside = 1.0, outside = 0.0, noise = 0.05;

  app.add_option("--kind", kind, "square | noise | frames")
      ->check(CLI::IsMember({"square", "noise", "frames"}))
      ->capture_default_str();
  app.add_option("--height", height)->capture_default_str();
  app.add_option("--width", width)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--count", count, "number of frames for --kind frames")->capture_default_str();
  app.add_option("--inside", inside, "value inside the square")->capture_default_str();
  app.add_option("--outside", outside, "value outside the square")->capture_default_str();
  app.add_option("--noise", noise, "uniform noise amplitude")->capture_default_str();
  app.add_option("--output", output, "output path; frames need a {} placeholder")->required();
  CLI11_PARSE(app, argc, argv);

  try {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto square_frame = [&](int shift) {
      tvseg::ScalarField f(height, width);
      const int i0 = height / 4, i1 = 3 * height / 4;
      const int j0 = width / 4 + shift, j1 = 3 * width / 4 + shift;
      for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
          const bool in = i >= i0 && i < i1 && j >= j0 && j < j1;
          f.at(i, j) = (in ? inside : outside) + noise * (2.0 * unit(rng) - 1.0);
        }
      }
      return f;
    };

    if (kind == "square") {
      tvseg::write_field(square_frame(0), output);
    } else if (kind == "noise") {
      tvseg::ScalarField f(height, width);
      for (double& v : f.values) v = unit(rng);
      tvseg::write_field(f, output);
    } else {
      if (count < 1) throw std::invalid_argument("--count must be at least 1");
      const int step = std::max(1, width / (4 * count));
      for (int t = 0; t < count; ++t) {
        tvseg::write_field(square_frame(t * step), indexed_path(output, t));
      }
    }
  } catch (const tvseg::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
