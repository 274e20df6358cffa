#pragma once

#include <complex>
#include <limits>
#include <variant>
#include <vector>

namespace slinv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One term w / (d - λ) of a rational Herglotz-Nevanlinna function.
struct Pole {
  double weight = 1.0;    // w > 0
  double location = 0.0;  // d
  friend bool operator==(const Pole&, const Pole&) = default;
};

/**
 * Rational Herglotz-Nevanlinna function in pole-residue form
 *
 *     f(λ) = aλ + c + Σ_j w_j / (d_j - λ),   a ≥ 0, w_j > 0, d_j distinct.
 *
 * The constructor validates the Herglotz constraints and throws DomainError
 * otherwise, so every instance maps the upper half-plane into itself.
 */
class RationalHerglotz {
 public:
  RationalHerglotz() = default;
  RationalHerglotz(double slope, double constant, std::vector<Pole> poles = {});

  static RationalHerglotz constant(double c) { return RationalHerglotz(0.0, c); }

  [[nodiscard]] double slope() const { return slope_; }
  [[nodiscard]] double constant_term() const { return constant_; }
  [[nodiscard]] const std::vector<Pole>& poles() const { return poles_; }
  [[nodiscard]] bool is_constant() const { return slope_ == 0.0 && poles_.empty(); }

  /// Value at real λ; +∞ at a pole (exact match or relative distance ≤ 1e-12).
  [[nodiscard]] double operator()(double lambda) const;

  /// Value off the real axis.
  [[nodiscard]] std::complex<double> operator()(std::complex<double> lambda) const;

  /// Index of the pole λ sits on (within tolerance), or -1.
  [[nodiscard]] int pole_at(double lambda) const;

  /// Number of poles d_j ≤ λ, where λ within tolerance of d_j counts as equal.
  [[nodiscard]] int poles_at_or_below(double lambda) const;

  /// Cleared-denominator pair f = P/Q with Q(λ) = Π (d_j - λ).
  struct Fraction {
    double numerator;    // P(λ)
    double denominator;  // Q(λ)
  };
  [[nodiscard]] Fraction cleared(double lambda) const;

  friend bool operator==(const RationalHerglotz&, const RationalHerglotz&) = default;

 private:
  double slope_ = 0.0;
  double constant_ = 0.0;
  std::vector<Pole> poles_;
};

inline constexpr double kPoleTolerance = 1e-12;

struct Dirichlet {
  friend bool operator==(Dirichlet, Dirichlet) = default;
};

/// Left endpoint condition y'(0) = -f(λ) y(0), or Dirichlet y(0) = 0.
class LeftBoundary {
 public:
  LeftBoundary() : value_(RationalHerglotz{}) {}
  LeftBoundary(Dirichlet d) : value_(d) {}
  LeftBoundary(RationalHerglotz f) : value_(std::move(f)) {}

  static LeftBoundary dirichlet() { return LeftBoundary(Dirichlet{}); }
  static LeftBoundary neumann() { return LeftBoundary(RationalHerglotz{}); }
  static LeftBoundary robin(double h) { return LeftBoundary(RationalHerglotz::constant(h)); }

  [[nodiscard]] bool is_dirichlet() const { return std::holds_alternative<Dirichlet>(value_); }
  [[nodiscard]] const RationalHerglotz& herglotz() const;  // throws DomainError if Dirichlet
  /// True when the condition does not depend on λ (Dirichlet or constant f).
  [[nodiscard]] bool is_lambda_independent() const;

  friend bool operator==(const LeftBoundary&, const LeftBoundary&) = default;

 private:
  std::variant<Dirichlet, RationalHerglotz> value_;
};

/// Right endpoint parameter b ∈ ℝ ∪ {∞}; ∞ is the Dirichlet condition y(π) = 0.
class RightBoundaryValue {
 public:
  RightBoundaryValue() = default;
  RightBoundaryValue(double b);  // throws DomainError unless finite

  static RightBoundaryValue infinity() {
    RightBoundaryValue r;
    r.infinite_ = true;
    return r;
  }

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  [[nodiscard]] double value() const;  // throws DomainError when infinite

  friend bool operator==(const RightBoundaryValue&, const RightBoundaryValue&) = default;

 private:
  double b_ = 0.0;
  bool infinite_ = false;
};

/// (y, y') at a point, meaningful only up to a nonzero multiple.
struct SolutionState {
  double y = 0.0;
  double dy = 1.0;

  [[nodiscard]] double norm() const;
  /// Unit norm, first nonzero coordinate positive.
  [[nodiscard]] SolutionState canonical() const;
};

double herglotz_eval(const RationalHerglotz& f, double lambda);

/// Canonical initial state satisfying y'(0) = -f(λ) y(0).
SolutionState herglotz_pair(const LeftBoundary& lb, double lambda);

}  // namespace slinv
