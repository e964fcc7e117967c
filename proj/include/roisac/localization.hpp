#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace roisac {

struct PositionFix {
  std::vector<double> position; // 2 or 3 coordinates, m
  double residual_norm = 0.0;   // Euclidean norm of the range residuals, m
  double timestamp_s = 0.0;
};

struct ConvergenceError : std::runtime_error {
  PositionFix best;
  ConvergenceError(const std::string& msg, PositionFix best_iterate)
      : std::runtime_error(msg), best(std::move(best_iterate)) {}
};

struct MultilaterateOptions {
  int max_iterations = 50;
  double step_tol = 1e-9; // m
};

// Nonlinear least squares over sum_i (|x - a_i| - r_i)^2 via Gauss-Newton
// with Levenberg damping, started from the linearized closed form. Requires
// at least dim+1 anchors in general position (non-collinear for 2D,
// non-coplanar for 3D). Throws ConvergenceError carrying the best iterate if
// the step tolerance is not reached.
PositionFix multilaterate(const std::vector<std::vector<double>>& anchors,
                          const std::vector<double>& ranges, int dim,
                          const MultilaterateOptions& opts = {});

struct VelocityEstimate {
  double speed_mps = 0.0;
  std::vector<double> direction;      // unit vector; meaningless when not defined
  bool direction_defined = false;
  std::vector<double> segment_speeds; // per consecutive fix pair
};

// Endpoint displacement over elapsed time across the track.
VelocityEstimate estimate_velocity(std::span<const PositionFix> track);

} // namespace roisac
