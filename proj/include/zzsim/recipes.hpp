#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace zzsim {

enum class Figure { Fig2, FigS2, FigS3, FigS4 };

Figure parse_figure(const std::string& name);
std::string to_string(Figure figure);

/// One computed value compared with a published one.
struct AnchorCheck {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string unit;
  bool pass = false;
  std::string detail;
};

struct RecipeReport {
  Figure figure = Figure::Fig2;
  std::vector<std::filesystem::path> files;
  std::vector<AnchorCheck> checks;
  std::vector<std::string> notes;

  bool all_pass() const;
  std::string summary() const;
};

struct RecipeOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string command_line;
  std::string device_a = "device_a";
  std::string device_b = "device_b";
  int sweep_points = 200;
  int rb_trials = 100;
};

/// Writes the data behind a figure as CSV files in options.out_dir and
/// compares the computed anchors with the published values.
RecipeReport run_figure_recipe(Figure figure, const RecipeOptions& options);

}  // namespace zzsim
