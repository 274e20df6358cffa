#pragma once

#include <variant>

#include "slinv/herglotz.hpp"
#include "slinv/potential.hpp"

namespace slinv {

struct ShootingOptions {
  /// RK4 steps over a length-π interval at |λ| + max|q| ≤ 1; scaled up by sqrt(|λ| + max|q|).
  int base_steps = 2000;
};

/**
 * Endpoint state of φ(·, λ) with its continuous Prüfer angle θ, where
 * y = r sin θ and y' = r cos θ. state is normalized to unit length and
 * atan2(state.y, state.dy) agrees with prufer_angle modulo 2π.
 */
struct ShootResult {
  SolutionState state;
  double prufer_angle = 0.0;
  int steps = 0;
};

/**
 * Integrate -y'' + q y = λ y from x = 0 to x_end with the initial state
 * herglotz_pair(lb, λ). θ(0) = atan2(y(0), y'(0)) ∈ [0, π).
 * Throws IntegrationError on non-finite values, DomainError if x_end is
 * outside (0, q.length()].
 */
ShootResult integrate(const Potential& q, const LeftBoundary& lb, double lambda, double x_end,
                      const ShootingOptions& opts = {});

/// Same, from an arbitrary nonzero initial state; θ(0) is its angle reduced to [0, π).
ShootResult integrate_state(const Potential& q, SolutionState initial, double lambda,
                            double x_end, const ShootingOptions& opts = {});

/**
 * Right endpoint condition y'(L) = g(λ) y(L). Either a constant b ∈ ℝ ∪ {∞}
 * (half problem) or a Herglotz function (mirrored condition of the doubled problem).
 */
class EndpointCondition {
 public:
  EndpointCondition(RightBoundaryValue b) : value_(b) {}
  EndpointCondition(RationalHerglotz g) : value_(std::move(g)) {}

  /**
   * Lifted target angle β(λ): cot β = g(λ), continuous and nonincreasing in λ,
   * with β ∈ (0, π] below the first pole of g. β = π for the Dirichlet condition.
   */
  [[nodiscard]] double target_angle(double lambda) const;

 private:
  std::variant<RightBoundaryValue, RationalHerglotz> value_;
};

/**
 * Angle mismatch D(λ) = θ(L, λ) + π·#{poles of f ≤ λ} - β(λ) over the full
 * domain L = q.length(). D is continuous and increasing in λ, D → (-π, 0) as
 * λ → -∞, and the k-th eigenvalue is the unique solution of D(λ) = kπ.
 */
double angle_mismatch(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc,
                      double lambda, const ShootingOptions& opts = {});

/// Number of eigenvalues strictly below Λ; AmbiguousCountError if Λ is within 1e-10 of one.
int count_eigenvalues_below(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc,
                            double Lambda, const ShootingOptions& opts = {});

inline int count_eigenvalues_below(const Potential& q, const LeftBoundary& lb,
                                   RightBoundaryValue rb, double Lambda,
                                   const ShootingOptions& opts = {}) {
  return count_eigenvalues_below(q, lb, EndpointCondition(rb), Lambda, opts);
}

}  // namespace slinv
