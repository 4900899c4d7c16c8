#pragma once

// Riemannian gradient descent on a product of unit spheres (one per row),
// with Barzilai-Borwein steps and a nonmonotone Armijo safeguard.

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

#include "sdpcolor/rng.hpp"
#include "sdpcolor/vecsdp.hpp"

namespace sdpcolor::detail {

inline void normalize_rows(VectorMatrix& x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0) x.row(i) /= norm;
  }
}

inline VectorMatrix random_unit_rows(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  VectorMatrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = rng.normal();
  normalize_rows(x);
  return x;
}

/// Removes from each gradient row its component along the matching point row.
inline void project_tangent(const VectorMatrix& x, VectorMatrix& g) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) g.row(i) -= g.row(i).dot(x.row(i)) * x.row(i);
}

struct DescentResult {
  int iterations = 0;
  bool stopped = false;  // stop predicate fired
  double value = 0.0;
  double grad_norm = 0.0;
};

/// f(x, grad) returns the objective and fills the Euclidean gradient.
/// stop(x) is consulted after each accepted step.
template <typename Objective, typename Stop>
DescentResult sphere_descent(VectorMatrix& x, Objective&& f, Stop&& stop, int max_iter,
                             double grad_tol) {
  constexpr int kMemory = 10;
  constexpr double kArmijo = 1e-4;
  DescentResult out;
  VectorMatrix grad(x.rows(), x.cols());
  double value = f(x, grad);
  project_tangent(x, grad);
  if (!std::isfinite(value)) throw SolverError("non-finite objective");
  std::deque<double> recent{value};
  double step = 1.0;
  VectorMatrix x_prev, grad_prev, trial(x.rows(), x.cols()), trial_grad(x.rows(), x.cols());

  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    const double gnorm2 = grad.squaredNorm();
    out.grad_norm = std::sqrt(gnorm2);
    if (out.grad_norm <= grad_tol) break;
    if (it > 0) {
      // BB1 step from the previous displacement and gradient change.
      const VectorMatrix s = x - x_prev;
      const VectorMatrix y = grad - grad_prev;
      const double sy = std::abs(s.cwiseProduct(y).sum());
      if (sy > 0) step = std::clamp(s.squaredNorm() / sy, 1e-8, 1e4);
    }
    const double reference = *std::max_element(recent.begin(), recent.end());
    double trial_value = 0.0;
    int backtracks = 0;
    for (;;) {
      trial = x - step * grad;
      normalize_rows(trial);
      trial_value = f(trial, trial_grad);
      if (!std::isfinite(trial_value)) throw SolverError("non-finite objective");
      if (trial_value <= reference - kArmijo * step * gnorm2 || backtracks >= 40) break;
      step *= 0.5;
      ++backtracks;
    }
    x_prev = x;
    grad_prev = grad;
    x = trial;
    grad = trial_grad;
    project_tangent(x, grad);
    value = trial_value;
    recent.push_back(value);
    if (recent.size() > kMemory) recent.pop_front();
    if (stop(x)) {
      out.stopped = true;
      break;
    }
  }
  out.value = value;
  return out;
}

}  // namespace sdpcolor::detail
