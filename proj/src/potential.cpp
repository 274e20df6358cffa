#include "slinv/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slinv/error.hpp"

namespace slinv {

namespace {

// Σ c_m cos(m x) by the Chebyshev recurrence cos(mx) = 2 cos x cos((m-1)x) - cos((m-2)x).
double cosine_sum(const std::vector<double>& c, double x) {
  const double c1 = std::cos(x);
  double prev = 1.0;
  double cur = c1;
  double sum = c[0];
  for (std::size_t m = 1; m < c.size(); ++m) {
    sum += c[m] * cur;
    const double next = 2.0 * c1 * cur - prev;
    prev = cur;
    cur = next;
  }
  return sum;
}

void require_finite(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw DomainError(std::string(what) + ": at least one value required");
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": values must be finite");
  }
}

}  // namespace

Potential::Potential(Kind kind, std::vector<double> values, bool doubled)
    : kind_(kind), values_(std::move(values)), doubled_(doubled) {}

Potential Potential::cosine(std::vector<double> coefficients) {
  require_finite(coefficients, "cosine potential");
  return {Kind::Cosine, std::move(coefficients), false};
}

Potential Potential::cells(std::vector<double> values) {
  require_finite(values, "cell potential");
  return {Kind::Cells, std::move(values), false};
}

Potential Potential::grid(std::vector<double> samples) {
  require_finite(samples, "grid potential");
  if (samples.size() < 2) throw DomainError("grid potential needs at least two samples");
  return {Kind::Grid, std::move(samples), false};
}

double Potential::operator()(double x) const {
  const double len = length();
  if (!(x >= 0.0 && x <= len)) {
    throw DomainError("potential evaluated at x = " + std::to_string(x) + " outside [0, " +
                      std::to_string(len) + "]");
  }
  switch (kind_) {
    case Kind::Cosine:
      return cosine_sum(values_, x);
    case Kind::Cells: {
      const auto n = static_cast<double>(values_.size());
      const auto i = std::min(static_cast<std::size_t>(x / len * n), values_.size() - 1);
      return values_[i];
    }
    case Kind::Grid: {
      const auto segments = static_cast<double>(values_.size() - 1);
      const double t = x / len * segments;
      const auto i = std::min(static_cast<std::size_t>(t), values_.size() - 2);
      const double frac = t - static_cast<double>(i);
      return values_[i] + frac * (values_[i + 1] - values_[i]);
    }
  }
  return 0.0;
}

double Potential::max_abs() const {
  if (kind_ == Kind::Cosine) {
    double s = 0.0;
    for (double c : values_) s += std::abs(c);
    return s;
  }
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

int Potential::pieces() const {
  switch (kind_) {
    case Kind::Cosine:
      return 1;
    case Kind::Cells:
      return static_cast<int>(values_.size());
    case Kind::Grid:
      return static_cast<int>(values_.size()) - 1;
  }
  return 1;
}

Potential Potential::shifted(double shift) const {
  Potential out = *this;
  if (kind_ == Kind::Cosine) {
    out.values_[0] += shift;
  } else {
    for (double& v : out.values_) v += shift;
  }
  return out;
}

std::vector<double> Potential::step_samples(int steps, double x_end) const {
  const double h = x_end / steps;
  std::vector<double> out(3 * static_cast<std::size_t>(steps));
  if (kind_ == Kind::Cells) {
    for (int i = 0; i < steps; ++i) {
      const double v = (*this)((i + 0.5) * h);
      out[3 * i] = out[3 * i + 1] = out[3 * i + 2] = v;
    }
    return out;
  }
  double left = (*this)(0.0);
  for (int i = 0; i < steps; ++i) {
    // the last node is evaluated at exactly x_end to stay inside the domain
    const double right = (*this)(i + 1 == steps ? x_end : (i + 1) * h);
    out[3 * i] = left;
    out[3 * i + 1] = (*this)((i + 0.5) * h);
    out[3 * i + 2] = right;
    left = right;
  }
  return out;
}

double potential_eval(const Potential& q, double x) { return q(x); }

Potential symmetric_double(const Potential& q) {
  if (q.is_doubled()) throw DomainError("potential is already doubled");
  std::vector<double> v = q.values();
  switch (q.kind()) {
    case Potential::Kind::Cosine:
      // cos(m(2π - x)) = cos(mx): the same series is already symmetric about π
      break;
    case Potential::Kind::Cells:
      v.insert(v.end(), q.values().rbegin(), q.values().rend());
      break;
    case Potential::Kind::Grid:
      v.insert(v.end(), q.values().rbegin() + 1, q.values().rend());
      break;
  }
  return Potential(q.kind(), std::move(v), true);
}

}  // namespace slinv
