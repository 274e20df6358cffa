#include "slinv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slinv/error.hpp"

namespace slinv {

namespace {

constexpr int kMaxExpansions = 64;

// Brent's method on a bracket with f(a) < 0 < f(b).
template <class F>
double brent(F&& f, double a, double fa, double b, double fb, double rel_tol) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * rel_tol * std::max(1.0, std::abs(b));
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  return b;
}

[[noreturn]] void bracket_failure(int k, double lo, double hi, const char* why) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "failed to bracket eigenvalue " << k << " in [" << lo << ", " << hi << "]: " << why;
  throw BracketError(msg.str());
}

struct Bracket {
  double lo;
  double f_lo;
  double hi;
  double f_hi;
};

// Widen [lo, hi] upward until F(hi) > 0; F(lo) < 0 on entry.
template <class F>
Bracket expand_up(F&& mismatch, int k, Bracket b) {
  for (int i = 0; b.f_hi <= 0.0; ++i) {
    if (i == kMaxExpansions) bracket_failure(k, b.lo, b.hi, "upper bound did not grow past it");
    const double width = std::max(1.0, b.hi - b.lo);
    b.lo = b.hi;
    b.f_lo = b.f_hi;
    b.hi = b.lo + 2.0 * width;
    b.f_hi = mismatch(b.hi);
  }
  return b;
}

double initial_upper_guess(const Potential& q, int k) {
  const double scale = kPi / q.length();
  return q.max_abs() + (k + 1.0) * (k + 1.0) * scale * scale + 1.0;
}

}  // namespace

double weyl_m(const Potential& q, const LeftBoundary& lb, double lambda,
              const SpectralOptions& opts) {
  const ShootResult r = integrate(q, lb, lambda, q.length(), opts.shooting);
  const auto [y, dy] = r.state;
  if (std::abs(y) <= 1e-13 * std::hypot(y, dy)) {
    if (y == 0.0) return kInf;
    return std::copysign(kInf, y * dy);
  }
  return dy / y;
}

double eigenvalue(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc, int k,
                  const SpectralOptions& opts) {
  if (k < 0) throw DomainError("eigenvalue index must be nonnegative");
  const double target = k * kPi;
  auto mismatch = [&](double lambda) {
    return angle_mismatch(q, lb, rc, lambda, opts.shooting) - target;
  };

  // below every eigenvalue of index ≥ k: start at -(1 + max|q|)·10 and double downward
  Bracket b{};
  b.lo = -(1.0 + q.max_abs()) * 10.0;
  b.f_lo = mismatch(b.lo);
  bool have_hi = false;
  for (int i = 0; b.f_lo >= 0.0; ++i) {
    if (i == kMaxExpansions) bracket_failure(k, b.lo, b.hi, "lower bound did not drop below it");
    b.hi = b.lo;
    b.f_hi = b.f_lo;
    have_hi = true;
    b.lo *= 2.0;
    b.f_lo = mismatch(b.lo);
  }
  if (!have_hi) {
    b.hi = std::max(b.lo + 1.0, initial_upper_guess(q, k));
    b.f_hi = mismatch(b.hi);
  }
  b = expand_up(mismatch, k, b);
  return brent(mismatch, b.lo, b.f_lo, b.hi, b.f_hi, opts.rel_tol);
}

Spectrum spectrum(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc, int K,
                  const SpectralOptions& opts) {
  if (K < 0) throw DomainError("spectrum size K must be nonnegative");
  Spectrum out;
  out.eigenvalues.reserve(static_cast<std::size_t>(K) + 1);
  out.eigenvalues.push_back(eigenvalue(q, lb, rc, 0, opts));
  for (int k = 1; k <= K; ++k) {
    const double target = k * kPi;
    auto mismatch = [&](double lambda) {
      return angle_mismatch(q, lb, rc, lambda, opts.shooting) - target;
    };
    // D(λ_{k-1}) = (k-1)π, so the previous eigenvalue is a valid lower end
    Bracket b{};
    b.lo = out.eigenvalues.back();
    b.f_lo = -kPi;
    const double spacing = k >= 2 ? out[k - 1] - out[k - 2] : 1.0;
    b.hi = b.lo + std::max({1e-3, 1.5 * spacing, initial_upper_guess(q, k) - b.lo});
    b.f_hi = mismatch(b.hi);
    b = expand_up(mismatch, k, b);
    out.eigenvalues.push_back(brent(mismatch, b.lo, b.f_lo, b.hi, b.f_hi, opts.rel_tol));
  }
  return out;
}

std::vector<std::pair<double, double>> m_sample(const Potential& q, const LeftBoundary& lb,
                                                double lo, double hi, int n,
                                                const SpectralOptions& opts) {
  if (n < 2) throw DomainError("m_sample needs n >= 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double lambda = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    out.emplace_back(lambda, weyl_m(q, lb, lambda, opts));
  }
  return out;
}

Spectrum doubled_spectrum(const Potential& q, const RationalHerglotz& f, int K,
                          const SpectralOptions& opts) {
  const Potential doubled = symmetric_double(q);
  return spectrum(doubled, LeftBoundary(f), EndpointCondition(f), K, opts);
}

CorrespondenceReport correspondence_check(const Potential& q, const RationalHerglotz& f, int K,
                                          double tol, const SpectralOptions& opts) {
  if (K < 1) throw DomainError("correspondence check needs K >= 1");
  const int pairs = K / 2 + 1;
  const LeftBoundary lb(f);
  const Spectrum mu = doubled_spectrum(q, f, 2 * pairs - 1, opts);
  const Spectrum dirichlet = spectrum(q, lb, RightBoundaryValue::infinity(), pairs - 1, opts);
  const Spectrum neumann = spectrum(q, lb, RightBoundaryValue(0.0), pairs - 1, opts);

  CorrespondenceReport report;
  report.tol = tol;
  for (int i = 0; i < pairs; ++i) {
    CorrespondencePair p;
    p.i = i;
    p.mu_odd = mu[2 * i + 1];
    p.lambda_dirichlet = dirichlet[i];
    p.mu_even = mu[2 * i];
    p.lambda_neumann = neumann[i];
    p.gap_odd = std::abs(p.mu_odd - p.lambda_dirichlet);
    p.gap_even = std::abs(p.mu_even - p.lambda_neumann);
    report.max_gap = std::max({report.max_gap, p.gap_odd, p.gap_even});
    report.pairs.push_back(p);
  }
  report.pass = report.max_gap <= tol;
  return report;
}

}  // namespace slinv
