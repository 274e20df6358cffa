#include "slinv/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slinv/error.hpp"

namespace slinv {

namespace {

int step_count(const Potential& q, double lambda, double x_end, const ShootingOptions& opts) {
  const double scale = std::max(1.0, std::sqrt(std::abs(lambda) + q.max_abs()));
  const int pieces = q.pieces();
  auto n = static_cast<long long>(std::ceil(opts.base_steps * scale * x_end / kPi));
  n = std::max<long long>(n, 1);
  n = (n + pieces - 1) / pieces * pieces;
  if (n > 50'000'000) {
    std::ostringstream msg;
    msg << "step count " << n << " too large for lambda = " << lambda;
    throw IntegrationError(msg.str());
  }
  return static_cast<int>(n);
}

// Reduce an angle difference to (-π/2, π/2].
double wrap_half(double d) {
  d = std::remainder(d, kPi);
  if (d <= -kPi / 2) d += kPi;
  return d;
}

}  // namespace

ShootResult integrate_state(const Potential& q, SolutionState initial, double lambda,
                            double x_end, const ShootingOptions& opts) {
  if (!(x_end > 0.0 && x_end <= q.length())) {
    throw DomainError("integration endpoint outside (0, domain length]");
  }
  if (initial.y == 0.0 && initial.dy == 0.0) throw DomainError("initial state must be nonzero");
  if (!std::isfinite(lambda)) throw IntegrationError("non-finite spectral parameter");

  const int n = step_count(q, lambda, x_end, opts);
  const double h = x_end / n;
  const std::vector<double> qs = q.step_samples(n, x_end);

  double y = initial.y;
  double dy = initial.dy;
  double theta = std::atan2(y, dy);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta -= kPi;

  for (int i = 0; i < n; ++i) {
    const double w0 = qs[3 * i] - lambda;
    const double wm = qs[3 * i + 1] - lambda;
    const double w1 = qs[3 * i + 2] - lambda;

    const double k1y = dy;
    const double k1d = w0 * y;
    const double k2y = dy + 0.5 * h * k1d;
    const double k2d = wm * (y + 0.5 * h * k1y);
    const double k3y = dy + 0.5 * h * k2d;
    const double k3d = wm * (y + 0.5 * h * k2y);
    const double k4y = dy + h * k3d;
    const double k4d = w1 * (y + h * k3y);

    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);

    if (!std::isfinite(y) || !std::isfinite(dy)) {
      std::ostringstream msg;
      msg << "non-finite solution at x = " << (i + 1) * h << " for lambda = " << lambda;
      throw IntegrationError(msg.str());
    }
    theta += wrap_half(std::atan2(y, dy) - theta);

    const double r = std::hypot(y, dy);
    if (r < 1e-6 || r > 1e6) {
      y /= r;
      dy /= r;
    }
  }

  const double r = std::hypot(y, dy);
  if (r == 0.0) throw IntegrationError("solution collapsed to zero");
  return {SolutionState{y / r, dy / r}, theta, n};
}

ShootResult integrate(const Potential& q, const LeftBoundary& lb, double lambda, double x_end,
                      const ShootingOptions& opts) {
  return integrate_state(q, herglotz_pair(lb, lambda), lambda, x_end, opts);
}

double EndpointCondition::target_angle(double lambda) const {
  if (const auto* b = std::get_if<RightBoundaryValue>(&value_)) {
    return b->is_infinite() ? kPi : std::atan2(1.0, b->value());
  }
  const auto& g = std::get<RationalHerglotz>(value_);
  const double value = g(lambda);
  const double raw = std::isinf(value) ? kPi : std::atan2(1.0, value);
  return raw - kPi * g.poles_at_or_below(lambda);
}

double angle_mismatch(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc,
                      double lambda, const ShootingOptions& opts) {
  const ShootResult r = integrate(q, lb, lambda, q.length(), opts);
  double theta = r.prufer_angle;
  if (!lb.is_dirichlet()) theta += kPi * lb.herglotz().poles_at_or_below(lambda);
  return theta - rc.target_angle(lambda);
}

namespace {

int count_from_mismatch(double d) { return d > 0.0 ? static_cast<int>(std::ceil(d / kPi)) : 0; }

}  // namespace

int count_eigenvalues_below(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc,
                            double Lambda, const ShootingOptions& opts) {
  const double d = angle_mismatch(q, lb, rc, Lambda, opts);
  const double frac = d / kPi - std::round(d / kPi);
  if (std::abs(frac) > 1e-6) return count_from_mismatch(d);

  const double delta = 1e-10 * std::max(1.0, std::abs(Lambda));
  const int below = count_from_mismatch(angle_mismatch(q, lb, rc, Lambda - delta, opts));
  const int above = count_from_mismatch(angle_mismatch(q, lb, rc, Lambda + delta, opts));
  if (below != above) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Lambda = " << Lambda << " lies within 1e-10 of eigenvalue " << below;
    throw AmbiguousCountError(msg.str());
  }
  return below;
}

}  // namespace slinv
