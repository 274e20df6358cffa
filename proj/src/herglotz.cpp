#include "slinv/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slinv/error.hpp"

namespace slinv {

namespace {

bool near_pole(double lambda, double d) {
  return lambda == d || std::abs(lambda - d) <= kPoleTolerance * std::max(1.0, std::abs(d));
}

}  // namespace

RationalHerglotz::RationalHerglotz(double slope, double constant, std::vector<Pole> poles)
    : slope_(slope), constant_(constant), poles_(std::move(poles)) {
  if (!std::isfinite(slope_) || slope_ < 0.0) {
    throw DomainError("Herglotz slope must be finite and nonnegative, got " + std::to_string(slope_));
  }
  if (!std::isfinite(constant_)) throw DomainError("Herglotz constant must be finite");
  for (std::size_t j = 0; j < poles_.size(); ++j) {
    const auto& p = poles_[j];
    if (!std::isfinite(p.weight) || p.weight <= 0.0) {
      throw DomainError("Herglotz pole weight must be positive, got " + std::to_string(p.weight));
    }
    if (!std::isfinite(p.location)) throw DomainError("Herglotz pole location must be finite");
    for (std::size_t i = 0; i < j; ++i) {
      if (poles_[i].location == p.location) {
        throw DomainError("Herglotz pole locations must be distinct, repeated " +
                          std::to_string(p.location));
      }
    }
  }
}

int RationalHerglotz::pole_at(double lambda) const {
  for (std::size_t j = 0; j < poles_.size(); ++j) {
    if (near_pole(lambda, poles_[j].location)) return static_cast<int>(j);
  }
  return -1;
}

int RationalHerglotz::poles_at_or_below(double lambda) const {
  int count = 0;
  for (const auto& p : poles_) {
    if (p.location < lambda || near_pole(lambda, p.location)) ++count;
  }
  return count;
}

double RationalHerglotz::operator()(double lambda) const {
  if (pole_at(lambda) >= 0) return kInf;
  double value = slope_ * lambda + constant_;
  for (const auto& p : poles_) value += p.weight / (p.location - lambda);
  return value;
}

std::complex<double> RationalHerglotz::operator()(std::complex<double> lambda) const {
  std::complex<double> value = slope_ * lambda + constant_;
  for (const auto& p : poles_) value += p.weight / (p.location - lambda);
  return value;
}

RationalHerglotz::Fraction RationalHerglotz::cleared(double lambda) const {
  const int on_pole = pole_at(lambda);
  double q = 1.0;
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    q *= static_cast<int>(i) == on_pole ? 0.0 : poles_[i].location - lambda;
  }
  double p = (slope_ * lambda + constant_) * q;
  for (std::size_t j = 0; j < poles_.size(); ++j) {
    double term = poles_[j].weight;
    for (std::size_t i = 0; i < poles_.size(); ++i) {
      if (i == j) continue;
      term *= static_cast<int>(i) == on_pole ? 0.0 : poles_[i].location - lambda;
    }
    p += term;
  }
  return {p, q};
}

const RationalHerglotz& LeftBoundary::herglotz() const {
  if (const auto* f = std::get_if<RationalHerglotz>(&value_)) return *f;
  throw DomainError("left boundary is Dirichlet, no Herglotz function attached");
}

bool LeftBoundary::is_lambda_independent() const {
  return is_dirichlet() || herglotz().is_constant();
}

RightBoundaryValue::RightBoundaryValue(double b) : b_(b) {
  if (!std::isfinite(b)) throw DomainError("finite right boundary value required; use infinity()");
}

double RightBoundaryValue::value() const {
  if (infinite_) throw DomainError("right boundary value is infinite");
  return b_;
}

double SolutionState::norm() const { return std::hypot(y, dy); }

SolutionState SolutionState::canonical() const {
  const double r = norm();
  SolutionState s{y / r, dy / r};
  if (s.y < 0.0 || (s.y == 0.0 && s.dy < 0.0)) {
    s.y = -s.y;
    s.dy = -s.dy;
  }
  // avoid -0.0 in the canonical form
  s.y += 0.0;
  s.dy += 0.0;
  return s;
}

double herglotz_eval(const RationalHerglotz& f, double lambda) { return f(lambda); }

SolutionState herglotz_pair(const LeftBoundary& lb, double lambda) {
  if (lb.is_dirichlet()) return {0.0, 1.0};
  const auto [p, q] = lb.herglotz().cleared(lambda);
  return SolutionState{q, -p}.canonical();
}

}  // namespace slinv
