#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace slinv {

inline constexpr double kPi = std::numbers::pi;

/**
 * Real potential q on (0, L), L = π for a half problem and 2π once doubled.
 *
 * Three representations:
 *   - Cosine: q(x) = Σ_m c_m cos(m x), m = 0..M-1.
 *   - Cells:  piecewise constant on a uniform partition of (0, L).
 *   - Grid:   uniform samples on [0, L] with linear interpolation.
 */
class Potential {
 public:
  enum class Kind { Cosine, Cells, Grid };

  static Potential zero() { return cosine({0.0}); }
  static Potential constant(double c) { return cosine({c}); }
  static Potential cosine(std::vector<double> coefficients);
  static Potential cells(std::vector<double> values);
  static Potential grid(std::vector<double> samples);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double length() const { return doubled_ ? 2.0 * kPi : kPi; }
  [[nodiscard]] bool is_doubled() const { return doubled_; }

  /// q(x) for 0 ≤ x ≤ length(); DomainError otherwise.
  [[nodiscard]] double operator()(double x) const;

  /// Upper bound on |q| over the domain.
  [[nodiscard]] double max_abs() const;

  /// Number of smooth pieces; integration steps are aligned to their boundaries.
  [[nodiscard]] int pieces() const;

  /// q + shift.
  [[nodiscard]] Potential shifted(double shift) const;

  /**
   * Values of q for a fixed-step integrator with `steps` uniform steps over
   * [0, x_end]: three entries per step (start, midpoint, end). For cell
   * potentials each step takes the value of the cell containing its midpoint,
   * so the jumps are never straddled when x_end = length() and `steps` is a
   * multiple of pieces().
   */
  [[nodiscard]] std::vector<double> step_samples(int steps, double x_end) const;

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  Potential(Kind kind, std::vector<double> values, bool doubled);
  friend Potential symmetric_double(const Potential& q);

  Kind kind_ = Kind::Cosine;
  std::vector<double> values_;
  bool doubled_ = false;
};

double potential_eval(const Potential& q, double x);

/// Mirror q about π onto (0, 2π): q(x) := q(2π - x) for x in (π, 2π).
Potential symmetric_double(const Potential& q);

}  // namespace slinv
