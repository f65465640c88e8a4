#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "zzsim/errors.hpp"
#include "zzsim/parallel.hpp"

namespace zzsim {

struct RootScanOptions {
  int grid_points = 200;
  double tolerance = 0.0;  // accept x once |f(x)| < tolerance
  int max_bisections = 200;
  int threads = 1;
};

struct ScannedRoot {
  double x;
  double value;   // f(x), |value| < tolerance
  double lo, hi;  // bracket the root was refined from
};

struct RootScan {
  std::vector<double> grid;
  std::vector<std::optional<double>> samples;  // nullopt where f could not be evaluated
  std::vector<ScannedRoot> roots;
  std::vector<std::string> warnings;
};

/// Brackets every sign change of f on a uniform grid over [lo, hi] and refines
/// each by bisection. Grid points where f throws HybridizationError or
/// PoleError are skipped with a warning. A bracket whose bisection never
/// reaches |f| < tolerance is a pole or a jump, not a root, and is reported as
/// a warning.
template <typename F>
RootScan scan_roots(F&& f, double lo, double hi, const RootScanOptions& opt) {
  if (opt.grid_points < 2) throw DomainError("root scan needs at least two grid points");
  if (!(hi > lo)) throw DomainError("root scan interval must satisfy lo < hi");

  RootScan out;
  const auto n = static_cast<std::size_t>(opt.grid_points);
  out.grid.resize(n);
  out.samples.resize(n);
  std::vector<std::string> failures(n);
  for (std::size_t i = 0; i < n; ++i)
    out.grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);

  parallel_for(n, opt.threads, [&](std::size_t i) {
    try {
      out.samples[i] = f(out.grid[i]);
    } catch (const HybridizationError& e) {
      failures[i] = e.what();
    } catch (const PoleError& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (!out.samples[i]) out.warnings.push_back("skipped grid point: " + failures[i]);

  char buf[160];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!out.samples[i] || !out.samples[i + 1]) continue;
    double a = out.grid[i], b = out.grid[i + 1];
    double fa = *out.samples[i];
    const double fb = *out.samples[i + 1];
    if (std::abs(fa) < opt.tolerance) {
      out.roots.push_back({a, fa, a, a});
      continue;
    }
    if (std::abs(fb) < opt.tolerance || std::signbit(fa) == std::signbit(fb)) continue;

    std::optional<ScannedRoot> root;
    try {
      for (int it = 0; it < opt.max_bisections && !root; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (std::abs(fm) < opt.tolerance) {
          root = ScannedRoot{m, fm, out.grid[i], out.grid[i + 1]};
        } else if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
    } catch (const std::runtime_error& e) {
      out.warnings.push_back(std::string("bracket dropped during refinement: ") + e.what());
      continue;
    } catch (const std::domain_error& e) {
      out.warnings.push_back(std::string("bracket dropped during refinement: ") + e.what());
      continue;
    }
    if (root) {
      out.roots.push_back(*root);
    } else {
      std::snprintf(buf, sizeof buf, "sign change in [%.9g, %.9g] is a pole or jump, not a root",
                    out.grid[i], out.grid[i + 1]);
      out.warnings.emplace_back(buf);
    }
  }
  if (out.samples[n - 1] && std::abs(*out.samples[n - 1]) < opt.tolerance)
    out.roots.push_back({out.grid[n - 1], *out.samples[n - 1], out.grid[n - 1], out.grid[n - 1]});
  return out;
}

}  // namespace zzsim
