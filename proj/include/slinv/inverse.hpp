#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "slinv/herglotz.hpp"
#include "slinv/potential.hpp"
#include "slinv/spectral.hpp"

namespace slinv {

struct FixedIndexRecord {
  RightBoundaryValue b;
  double lambda = 0.0;
};

/// Eigenvalues of one fixed index k for several right-endpoint parameters b_j.
struct FixedIndexDataset {
  int k = 1;
  std::vector<FixedIndexRecord> records;
  std::string note;
};

/// Known forward problem (q, left condition) the data is checked against.
struct ReferenceProblem {
  Potential q;
  LeftBoundary left;
};

enum class ValidationRule {
  None,
  TooFewRecords,
  DistinctB,
  AntiMonotone,
  Containment,
  LowestIndexCap,
};

const char* to_string(ValidationRule rule);

struct ValidationReport {
  bool ok = true;
  ValidationRule failed = ValidationRule::None;
  std::string message;
};

/**
 * Check a fixed-index dataset against the monotone structure of the Weyl function.
 *
 * Rules, reported in this order:
 *   1. b_j pairwise distinct (∞ counts once).
 *   2. Sorted by b descending, λ strictly ascending. b = ∞ is the right end of
 *      the index-k interval and sorts below every finite b.
 *   3. With a reference problem, every finite-b λ_j lies strictly inside
 *      (λ_{k-1}(∞), λ_k(∞)) (λ_{-1} = -∞) and a b = ∞ record equals λ_k(∞).
 *   4. For k = 0 a cap must be supplied and every finite b_j ≤ cap.
 * At least two records are required.
 */
ValidationReport validate_fixed_index_data(const FixedIndexDataset& data,
                                           const std::optional<ReferenceProblem>& ref = {},
                                           std::optional<double> b_cap = {},
                                           const SpectralOptions& opts = {});

/// λ_k(q, lb, b_j) for every b_j; DataError if the b_j are not distinct.
FixedIndexDataset synth_data(const Potential& q, const LeftBoundary& lb, int k,
                             std::span<const RightBoundaryValue> b_list,
                             const SpectralOptions& opts = {});

/// f is known and held fixed.
struct FixedF {
  LeftBoundary left;
};
/// f ≡ h with h unknown.
struct ConstantF {
  double initial = 0.0;
};
/// f = aλ + c + Σ w_j/(d_j - λ) with a fixed; c, w_j (log-parametrized) and d_j unknown.
struct PoleResidueF {
  RationalHerglotz initial;
};
using FModel = std::variant<FixedF, ConstantF, PoleResidueF>;

struct ModelConfig {
  int M = 1;  // cosine coefficients c_0..c_{M-1}
  FModel f = FixedF{LeftBoundary::neumann()};
  double rho = 1e-8;  // penalty on c_1..c_{M-1}
  int max_iterations = 100;
  double tolerance = 1e-10;  // on the gradient of the regularized objective
  /// Permit more unknowns than records (for demonstrating non-uniqueness).
  bool allow_underdetermined = false;
  /// Upper bound on the b_j, required when k = 0.
  std::optional<double> b_cap;
  SpectralOptions spectral;
};

int parameter_count(const ModelConfig& cfg);

struct ReconstructionResult {
  Potential q_hat = Potential::zero();
  LeftBoundary f_hat;
  double residual = 0.0;  // RMS eigenvalue misfit
  int iterations = 0;
  bool converged = false;
  /// Regularized objective after the initial guess and every accepted step.
  std::vector<double> objective_history;
};

/**
 * Fit (q̂, f̂) to fixed-index data by damped Gauss-Newton, minimizing
 * Σ_j (λ_k(q̂, f̂, b_j) - λ_j)² + ρ Σ_{m≥1} c_m². Starts from q̂ = 0 and the
 * configured f̂. Throws DataError when the data fails validation or when the
 * unknowns outnumber the records (unless allow_underdetermined).
 */
ReconstructionResult reconstruct_fixed_index(const FixedIndexDataset& data,
                                             const ModelConfig& cfg);

/// DataError unless both lists are strictly increasing and zero_b[k] < dirichlet[k] < zero_b[k+1].
void check_interlacing(std::span<const double> dirichlet, std::span<const double> zero_b);

/// Fit (q̂, f̂) to the b = ∞ and b = 0 spectra with the same optimizer.
ReconstructionResult reconstruct_two_spectra(std::span<const double> dirichlet,
                                             std::span<const double> zero_b,
                                             const ModelConfig& cfg);

/// RMS of λ_k(q̂, f̂, b_j) - λ_j over the dataset.
double residual_norm(const Potential& q_hat, const LeftBoundary& f_hat,
                     const FixedIndexDataset& data, const SpectralOptions& opts = {});

}  // namespace slinv
