#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "slinv/herglotz.hpp"
#include "slinv/potential.hpp"
#include "slinv/shooting.hpp"

namespace slinv {

struct SpectralOptions {
  ShootingOptions shooting;
  /// Root tolerance |Δλ| ≤ rel_tol·max(1, |λ|).
  double rel_tol = 1e-12;
};

/// Eigenvalues λ_0 < λ_1 < ... ; the index is the position.
struct Spectrum {
  std::vector<double> eigenvalues;

  [[nodiscard]] std::size_t size() const { return eigenvalues.size(); }
  double operator[](std::size_t k) const { return eigenvalues[k]; }
};

/**
 * Weyl function m(λ) = φ'(π, λ)/φ(π, λ) for φ satisfying the left condition.
 * At a pole (|φ(π)| ≤ 1e-13·|(φ, φ')|) returns ±∞, the sign giving the side
 * of the pole the numerical λ fell on (-∞ left of it, +∞ right of it).
 */
double weyl_m(const Potential& q, const LeftBoundary& lb, double lambda,
              const SpectralOptions& opts = {});

/// λ_k for the problem on (0, q.length()) with the given right condition.
double eigenvalue(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc, int k,
                  const SpectralOptions& opts = {});

inline double eigenvalue(const Potential& q, const LeftBoundary& lb, RightBoundaryValue rb, int k,
                         const SpectralOptions& opts = {}) {
  return eigenvalue(q, lb, EndpointCondition(rb), k, opts);
}

/// λ_0..λ_K.
Spectrum spectrum(const Potential& q, const LeftBoundary& lb, const EndpointCondition& rc, int K,
                  const SpectralOptions& opts = {});

inline Spectrum spectrum(const Potential& q, const LeftBoundary& lb, RightBoundaryValue rb, int K,
                         const SpectralOptions& opts = {}) {
  return spectrum(q, lb, EndpointCondition(rb), K, opts);
}

/// n equally spaced samples (λ, m(λ)) over [lo, hi], endpoints included.
std::vector<std::pair<double, double>> m_sample(const Potential& q, const LeftBoundary& lb,
                                                double lo, double hi, int n,
                                                const SpectralOptions& opts = {});

/**
 * First K+1 eigenvalues of the symmetric continuation to (0, 2π): potential
 * symmetric_double(q), y'(0) = -f(λ) y(0) and y'(2π) = f(λ) y(2π).
 */
Spectrum doubled_spectrum(const Potential& q, const RationalHerglotz& f, int K,
                          const SpectralOptions& opts = {});

struct CorrespondencePair {
  int i = 0;
  double mu_odd = 0.0;            // μ_{2i+1} of the doubled problem
  double lambda_dirichlet = 0.0;  // λ_i(q, f, ∞)
  double mu_even = 0.0;           // μ_{2i}
  double lambda_neumann = 0.0;    // λ_i(q, f, 0)
  double gap_odd = 0.0;
  double gap_even = 0.0;
};

struct CorrespondenceReport {
  std::vector<CorrespondencePair> pairs;
  double max_gap = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/**
 * Compare the doubled spectrum against the two half-problem spectra:
 * μ_{2i} ↔ λ_i(q, f, 0) and μ_{2i+1} ↔ λ_i(q, f, ∞). Covers every i with
 * 2i ≤ K; the doubled spectrum is extended to the matching odd index so each
 * pair is complete.
 */
CorrespondenceReport correspondence_check(const Potential& q, const RationalHerglotz& f, int K,
                                          double tol, const SpectralOptions& opts = {});

}  // namespace slinv
