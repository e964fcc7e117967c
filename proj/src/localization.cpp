#include "roisac/localization.hpp"

#include <algorithm>
#include <cmath>

#include "roisac/geometry.hpp"

namespace roisac {
namespace {

// Solves A x = b for a small symmetric positive definite A (dim <= 3) by
// Cholesky factorization. Returns false when A is singular to working
// precision, which is how degenerate anchor layouts surface.
bool solve_spd(std::vector<double>& a, std::vector<double>& b, int n) {
  std::vector<double> l(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= l[static_cast<size_t>(i) * n + k] * l[static_cast<size_t>(j) * n + k];
      if (i == j) {
        if (s <= 1e-12 * std::max(1.0, std::abs(a[static_cast<size_t>(i) * n + i])))
          return false;
        l[static_cast<size_t>(i) * n + j] = std::sqrt(s);
      } else {
        l[static_cast<size_t>(i) * n + j] = s / l[static_cast<size_t>(j) * n + j];
      }
    }
  }
  // forward then back substitution, in place in b
  for (int i = 0; i < n; ++i) {
    double s = b[static_cast<size_t>(i)];
    for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * b[static_cast<size_t>(k)];
    b[static_cast<size_t>(i)] = s / l[static_cast<size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<size_t>(i)];
    for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * b[static_cast<size_t>(k)];
    b[static_cast<size_t>(i)] = s / l[static_cast<size_t>(i) * n + i];
  }
  return true;
}

double dist(const std::vector<double>& x, const std::vector<double>& a, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = x[static_cast<size_t>(k)] - a[static_cast<size_t>(k)];
    s += d * d;
  }
  return std::sqrt(s);
}

// Difference-of-squares linearization against the first anchor:
//   2 (a_1 - a_i)^T x = r_i^2 - r_1^2 - |a_i|^2 + |a_1|^2
// solved through the normal equations. Singular normal matrix means the
// anchors are collinear (2D) or coplanar (3D).
std::vector<double> linear_initializer(const std::vector<std::vector<double>>& anchors,
                                       const std::vector<double>& ranges, int dim) {
  const size_t n = anchors.size();
  const auto& a1 = anchors[0];
  double a1sq = 0.0;
  for (int k = 0; k < dim; ++k) a1sq += a1[static_cast<size_t>(k)] * a1[static_cast<size_t>(k)];

  std::vector<double> ata(static_cast<size_t>(dim) * dim, 0.0);
  std::vector<double> atb(static_cast<size_t>(dim), 0.0);
  for (size_t i = 1; i < n; ++i) {
    const auto& ai = anchors[i];
    double aisq = 0.0;
    std::vector<double> row(static_cast<size_t>(dim));
    for (int k = 0; k < dim; ++k) {
      aisq += ai[static_cast<size_t>(k)] * ai[static_cast<size_t>(k)];
      row[static_cast<size_t>(k)] = 2.0 * (a1[static_cast<size_t>(k)] - ai[static_cast<size_t>(k)]);
    }
    const double rhs = ranges[i] * ranges[i] - ranges[0] * ranges[0] - aisq + a1sq;
    for (int r = 0; r < dim; ++r) {
      atb[static_cast<size_t>(r)] += row[static_cast<size_t>(r)] * rhs;
      for (int c = 0; c < dim; ++c)
        ata[static_cast<size_t>(r) * dim + c] += row[static_cast<size_t>(r)] * row[static_cast<size_t>(c)];
    }
  }
  if (!solve_spd(ata, atb, dim))
    throw GeometryError("multilaterate: anchors are degenerate (collinear or coplanar)");
  return atb;
}

} // namespace

PositionFix multilaterate(const std::vector<std::vector<double>>& anchors,
                          const std::vector<double>& ranges, int dim,
                          const MultilaterateOptions& opts) {
  if (dim != 2 && dim != 3) throw GeometryError("multilaterate: dim must be 2 or 3");
  if (anchors.size() != ranges.size())
    throw GeometryError("multilaterate: anchors and ranges differ in length");
  if (anchors.size() < static_cast<size_t>(dim) + 1)
    throw GeometryError("multilaterate: need at least dim+1 anchors");
  for (const auto& a : anchors)
    if (a.size() != static_cast<size_t>(dim))
      throw GeometryError("multilaterate: anchor dimension mismatch");
  for (double r : ranges)
    if (!(r >= 0.0) || !std::isfinite(r))
      throw GeometryError("multilaterate: ranges must be finite and nonnegative");

  std::vector<double> x = linear_initializer(anchors, ranges, dim);
  const size_t n = anchors.size();

  auto residual_norm = [&](const std::vector<double>& pt) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double e = dist(pt, anchors[i], dim) - ranges[i];
      s += e * e;
    }
    return std::sqrt(s);
  };

  double lambda = 1e-3;
  double cost = residual_norm(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    // J^T J and J^T r for residuals e_i = |x - a_i| - r_i
    std::vector<double> jtj(static_cast<size_t>(dim) * dim, 0.0);
    std::vector<double> jtr(static_cast<size_t>(dim), 0.0);
    for (size_t i = 0; i < n; ++i) {
      const double di = std::max(dist(x, anchors[i], dim), 1e-12);
      const double e = di - ranges[i];
      std::vector<double> g(static_cast<size_t>(dim));
      for (int k = 0; k < dim; ++k)
        g[static_cast<size_t>(k)] = (x[static_cast<size_t>(k)] - anchors[i][static_cast<size_t>(k)]) / di;
      for (int r = 0; r < dim; ++r) {
        jtr[static_cast<size_t>(r)] += g[static_cast<size_t>(r)] * e;
        for (int c = 0; c < dim; ++c)
          jtj[static_cast<size_t>(r) * dim + c] += g[static_cast<size_t>(r)] * g[static_cast<size_t>(c)];
      }
    }
    std::vector<double> damped = jtj;
    for (int k = 0; k < dim; ++k) damped[static_cast<size_t>(k) * dim + k] += lambda;
    std::vector<double> step = jtr;
    if (!solve_spd(damped, step, dim)) {
      lambda *= 10.0;
      continue;
    }
    std::vector<double> cand(x);
    double step_norm = 0.0;
    for (int k = 0; k < dim; ++k) {
      cand[static_cast<size_t>(k)] -= step[static_cast<size_t>(k)];
      step_norm += step[static_cast<size_t>(k)] * step[static_cast<size_t>(k)];
    }
    step_norm = std::sqrt(step_norm);
    const double cand_cost = residual_norm(cand);
    if (cand_cost <= cost) {
      x = std::move(cand);
      cost = cand_cost;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (step_norm < opts.step_tol) return PositionFix{x, cost, 0.0};
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  throw ConvergenceError("multilaterate: did not converge within iteration budget",
                         PositionFix{x, cost, 0.0});
}

VelocityEstimate estimate_velocity(std::span<const PositionFix> track) {
  if (track.size() < 2)
    throw GeometryError("estimate_velocity: need at least two fixes");
  const size_t dim = track[0].position.size();
  for (const auto& f : track)
    if (f.position.size() != dim)
      throw GeometryError("estimate_velocity: inconsistent fix dimensions");

  VelocityEstimate out;
  out.segment_speeds.reserve(track.size() - 1);
  for (size_t i = 1; i < track.size(); ++i) {
    const double dt = track[i].timestamp_s - track[i - 1].timestamp_s;
    if (dt <= 0.0)
      throw GeometryError("estimate_velocity: timestamps must be strictly increasing");
    double d = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      const double dd = track[i].position[k] - track[i - 1].position[k];
      d += dd * dd;
    }
    out.segment_speeds.push_back(std::sqrt(d) / dt);
  }

  const auto& first = track.front();
  const auto& last = track.back();
  const double elapsed = last.timestamp_s - first.timestamp_s;
  std::vector<double> disp(dim);
  double dnorm = 0.0;
  for (size_t k = 0; k < dim; ++k) {
    disp[k] = last.position[k] - first.position[k];
    dnorm += disp[k] * disp[k];
  }
  dnorm = std::sqrt(dnorm);
  out.speed_mps = dnorm / elapsed;
  if (dnorm > 1e-12) {
    for (auto& v : disp) v /= dnorm;
    out.direction = std::move(disp);
    out.direction_defined = true;
  } else {
    out.direction.assign(dim, 0.0);
    out.direction_defined = false;
    out.speed_mps = 0.0;
  }
  return out;
}

} // namespace roisac
