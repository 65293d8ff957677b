#include "tvseg/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tvseg/acontrario.hpp"
#include "tvseg/data_terms.hpp"
#include "tvseg/energy.hpp"
#include "tvseg/graph_cut.hpp"
#include "tvseg/io.hpp"
#include "tvseg/level_set.hpp"
#include "tvseg/rof.hpp"

namespace tvseg {

namespace {

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// out.pgm -> out_matched.pgm and similar derived artifact names
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

struct WeightArgs {
  std::string image_path;
  std::string weights_path;
  double lambda = 0.2;
  double mu = 10.0;
  bool normalized_gradient = false;
};

// Weight field priority: explicit field file, then edge weights from an
// image, then the uniform flat-image limit lambda + mu.
WeightField make_weights(const WeightArgs& args, int height, int width) {
  if (!args.weights_path.empty()) {
    ScalarField g = read_field(args.weights_path);
    if (g.height != height || g.width != width) {
      throw std::invalid_argument("weight field dimensions do not match the input");
    }
    return WeightField(std::move(g));
  }
  if (!args.image_path.empty()) {
    ScalarField image = read_field(args.image_path);
    if (image.height != height || image.width != width) {
      throw std::invalid_argument("image dimensions do not match the input");
    }
    if (!args.normalized_gradient) {
      for (double& v : image.values) v *= 255.0;
    }
    return edge_weight(image, args.lambda, args.mu);
  }
  return WeightField(height, width, args.lambda + args.mu);
}

struct RofArgs {
  std::string input, output, duals_out, trace;
  WeightArgs weights;
  RofParams params;
  bool strict_convergence = false;
};

void run_rof(const RofArgs& args) {
  const ScalarField w0 = read_field(args.input);
  const WeightField g = make_weights(args.weights, w0.height, w0.width);

  std::ofstream trace;
  if (!args.trace.empty()) {
    trace.open(args.trace);
    if (!trace) throw io_error("cannot open " + args.trace + " for writing");
  }
  RofParams params = args.params;
  params.lambda = 1.0;  // regularization strength lives inside g
  const RofResult result = rof_solve(w0, g, params, trace.is_open() ? &trace : nullptr);

  write_field(result.u, args.output);
  if (!args.duals_out.empty()) {
    const auto component = [&](const std::vector<double>& data, const std::string& name) {
      ScalarField field(result.u.height, result.u.width, data);
      write_pfm(field, with_suffix(args.duals_out, name));
    };
    component(result.duals.xi.x, "_xi_x");
    component(result.duals.xi.y, "_xi_y");
    component(result.duals.eta.x, "_eta_x");
    component(result.duals.eta.y, "_eta_y");
  }

  std::cout << "iterations=" << result.report.iterations
            << " residue=" << format_double("%.12g", result.report.final_residue)
            << " converged=" << (result.report.converged ? "yes" : "no") << '\n';
  std::cerr << "time=" << format_double("%.3f", result.report.wall_time) << "s\n";
  if (args.strict_convergence && !result.report.converged) {
    throw numerical_error("rof did not reach the residue tolerance");
  }
}

struct ThresholdArgs {
  std::string input, output_pattern, data_path, weights_path;
  std::vector<double> alphas;
  bool non_strict = false;
};

std::string pattern_path(const std::string& pattern, double alpha, std::size_t count) {
  const auto pos = pattern.find("{}");
  if (pos == std::string::npos) {
    if (count > 1) {
      throw std::invalid_argument("output pattern needs a {} placeholder for multiple alphas");
    }
    return pattern;
  }
  return pattern.substr(0, pos) + format_double("%g", alpha) + pattern.substr(pos + 2);
}

void run_threshold(const ThresholdArgs& args) {
  const ScalarField u = read_field(args.input);

  std::optional<ScalarField> data;
  std::optional<WeightField> weights;
  if (!args.data_path.empty() && !args.weights_path.empty()) {
    data = read_field(args.data_path);
    weights = WeightField(read_field(args.weights_path));
  }

  for (double alpha : args.alphas) {
    const BinaryMask mask = threshold(u, alpha, !args.non_strict);
    write_pgm_mask(mask, pattern_path(args.output_pattern, alpha, args.alphas.size()));
    std::cout << "alpha=" << format_double("%g", alpha) << " inside=" << mask.count();
    if (data) {
      std::cout << " energy="
                << format_double("%.12g", shape_energy(mask, *data, *weights, alpha));
    }
    std::cout << '\n';
    if (alpha_near_level(u, alpha)) {
      std::cerr << "warning: alpha " << format_double("%g", alpha)
                << " is within 1e-3 of a field level; the minimizer may not be unique\n";
    }
  }
}

struct CutArgs {
  std::string data_path, output;
  WeightArgs weights;
  double alpha = 0.0;
};

void run_cut(const CutArgs& args) {
  const ScalarField f = read_field(args.data_path);
  const WeightField g = make_weights(args.weights, f.height, f.width);
  const CutResult result = cut_segment(f, g, args.alpha);
  write_pgm_mask(result.mask, args.output);
  std::cout << "alpha=" << format_double("%g", args.alpha)
            << " inside=" << result.mask.count()
            << " energy=" << format_double("%.12g", result.energy) << '\n';
}

struct DetectArgs {
  std::string field_path, match_path, output;
  DetectionParams params;
};

void run_detect(const DetectArgs& args) {
  const ScalarField field = read_field(args.field_path);
  const DetectionResult det = detect(field, args.params);
  const BinaryMask eroded = erode(det.mask, args.params.radius / 2);
  write_pgm_mask(eroded, args.output);

  const int window = (2 * args.params.radius + 1) * (2 * args.params.radius + 1);
  std::cout << "mu_hat=" << format_double("%.12g", det.mu_hat) << " bound="
            << format_double("%.12g", detection_threshold(field.height * field.width, window,
                                                          args.params.epsilon))
            << " detected=" << det.mask.count() << " eroded=" << eroded.count() << '\n';

  if (!args.match_path.empty()) {
    const ScalarField u = read_field(args.match_path);
    require_same_shape(field, u, "detect --match");
    const LevelMatch match = closest_level_set(u, eroded, level_candidates(u));
    write_pgm_mask(match.mask, with_suffix(args.output, "_matched"));
    std::cout << "matched_level=" << format_double("%.12g", match.level)
              << " distance=" << match.distance << '\n';
  }
}

struct BackgroundArgs {
  std::vector<std::string> frame_paths;
  std::string current_path, output;
};

void run_background(const BackgroundArgs& args) {
  std::vector<ScalarField> frames;
  frames.reserve(args.frame_paths.size());
  for (const std::string& path : args.frame_paths) frames.push_back(read_field(path));
  const ScalarField background = median_background(frames);
  write_field(background, args.output);
  std::cout << "frames=" << frames.size() << '\n';

  if (!args.current_path.empty()) {
    const ScalarField current = read_field(args.current_path);
    const ScalarField diff = background_difference(current, background);
    const std::string diff_path = with_suffix(args.output, "_diff");
    write_field(diff, diff_path);
    std::cout << "difference=" << diff_path << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Binary segmentation by weighted TV regularization and graph cuts"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain key=value config file; flags take precedence");

  RofArgs rof_args;
  CLI::App* rof = app.add_subcommand("rof", "solve the weighted TV denoising problem");
  rof->add_option("--input", rof_args.input, "field to regularize (PFM or PGM)")->required();
  rof->add_option("--image", rof_args.weights.image_path, "image for the edge weights");
  rof->add_option("--weights", rof_args.weights.weights_path, "precomputed weight field")
      ->excludes("--image");
  rof->add_option("--lambda", rof_args.weights.lambda, "edge weight scale")
      ->capture_default_str();
  rof->add_option("--mu", rof_args.weights.mu, "edge weight offset")->capture_default_str();
  rof->add_option("--tau", rof_args.params.tau, "dual step size")->capture_default_str();
  rof->add_option("--tol", rof_args.params.tol, "dual residue tolerance")->capture_default_str();
  rof->add_option("--max-iter", rof_args.params.max_iter, "iteration cap")->capture_default_str();
  rof->add_option("--output", rof_args.output, "solution field path")->required();
  rof->add_option("--duals-out", rof_args.duals_out,
                  "prefix path for the four dual component fields");
  rof->add_option("--trace", rof_args.trace, "CSV path for iter,residue,primal_energy rows");
  rof->add_flag("--normalized-residue", rof_args.params.normalized_residue,
                "divide the residue by sqrt(#entries)");
  rof->add_flag("--normalized-gradient", rof_args.weights.normalized_gradient,
                "use the image as loaded ([0,1]) instead of the 0..255 scale");
  rof->add_flag("--strict-convergence", rof_args.strict_convergence,
                "exit with status 3 when the tolerance is not reached");
  rof->callback([&rof_args] { run_rof(rof_args); });

  ThresholdArgs thr_args;
  CLI::App* thr = app.add_subcommand("threshold", "cut level sets out of a solved field");
  thr->add_option("--input", thr_args.input, "solved field (PFM)")->required();
  thr->add_option("--alpha", thr_args.alphas, "threshold level, repeatable")->required();
  thr->add_option("--output-pattern", thr_args.output_pattern,
                  "mask path; {} is replaced by the alpha value")
      ->required();
  thr->add_flag("--non-strict{true},--strict{false}", thr_args.non_strict,
                "use u >= alpha instead of u > alpha");
  CLI::Option* thr_data =
      thr->add_option("--data", thr_args.data_path, "data term field, enables energy printing");
  CLI::Option* thr_weights =
      thr->add_option("--weights", thr_args.weights_path, "weight field, enables energy printing");
  thr_data->needs(thr_weights);
  thr_weights->needs(thr_data);
  thr->callback([&thr_args] { run_threshold(thr_args); });

  CutArgs cut_args;
  CLI::App* cut = app.add_subcommand("cut", "minimize the binary energy exactly by min-cut");
  cut->add_option("--data", cut_args.data_path, "data term field f")->required();
  cut->add_option("--image", cut_args.weights.image_path, "image for the edge weights");
  cut->add_option("--weights", cut_args.weights.weights_path, "precomputed weight field")
      ->excludes("--image");
  cut->add_option("--lambda", cut_args.weights.lambda, "edge weight scale")
      ->capture_default_str();
  cut->add_option("--mu", cut_args.weights.mu, "edge weight offset")->capture_default_str();
  cut->add_option("--alpha", cut_args.alpha, "data threshold")->required();
  cut->add_option("--output", cut_args.output, "mask path (PGM)")->required();
  cut->add_flag("--normalized-gradient", cut_args.weights.normalized_gradient,
                "use the image as loaded ([0,1]) instead of the 0..255 scale");
  cut->callback([&cut_args] { run_cut(cut_args); });

  DetectArgs det_args;
  CLI::App* det = app.add_subcommand("detect", "a-contrario motion detection on a field");
  det->add_option("--field", det_args.field_path, "regularized field")->required();
  det->add_option("--radius", det_args.params.radius, "window half-width")
      ->capture_default_str();
  det->add_option("--epsilon", det_args.params.epsilon, "allowed false alarms")
      ->capture_default_str();
  det->add_option("--match", det_args.match_path, "solved field for level-set matching");
  det->add_option("--output", det_args.output, "eroded detection mask path")->required();
  det->callback([&det_args] { run_detect(det_args); });

  BackgroundArgs bg_args;
  CLI::App* bg = app.add_subcommand("background", "temporal median background and |B - I|");
  bg->add_option("--frames", bg_args.frame_paths, "input frames")->required();
  bg->add_option("--current", bg_args.current_path, "frame to difference against the median");
  bg->add_option("--output", bg_args.output, "background field path")->required();
  bg->callback([&bg_args] { run_background(bg_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace tvseg
