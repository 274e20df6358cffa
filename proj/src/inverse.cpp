#include "slinv/inverse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "slinv/error.hpp"

namespace slinv {

const char* to_string(ValidationRule rule) {
  switch (rule) {
    case ValidationRule::None:
      return "none";
    case ValidationRule::TooFewRecords:
      return "too-few-records";
    case ValidationRule::DistinctB:
      return "distinct-b";
    case ValidationRule::AntiMonotone:
      return "anti-monotone";
    case ValidationRule::Containment:
      return "containment";
    case ValidationRule::LowestIndexCap:
      return "lowest-index-cap";
  }
  return "unknown";
}

namespace {

ValidationReport fail(ValidationRule rule, std::string message) {
  return {false, rule, std::string(to_string(rule)) + ": " + std::move(message)};
}

std::string describe(const RightBoundaryValue& b) {
  if (b.is_infinite()) return "inf";
  std::ostringstream s;
  s.precision(17);
  s << b.value();
  return s.str();
}

// Order by b descending with ∞ below every finite value.
bool b_descending(const FixedIndexRecord& x, const FixedIndexRecord& y) {
  if (x.b.is_infinite()) return false;
  if (y.b.is_infinite()) return true;
  return x.b.value() > y.b.value();
}

}  // namespace

ValidationReport validate_fixed_index_data(const FixedIndexDataset& data,
                                           const std::optional<ReferenceProblem>& ref,
                                           std::optional<double> b_cap,
                                           const SpectralOptions& opts) {
  const auto& recs = data.records;
  if (recs.size() < 2) {
    return fail(ValidationRule::TooFewRecords, "need at least 2 records, got " +
                                                   std::to_string(recs.size()));
  }
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (recs[i].b == recs[j].b) {
        return fail(ValidationRule::DistinctB, "b = " + describe(recs[i].b) + " appears twice");
      }
    }
  }

  std::vector<FixedIndexRecord> sorted = recs;
  std::sort(sorted.begin(), sorted.end(), b_descending);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(sorted[i].lambda > sorted[i - 1].lambda)) {
      std::ostringstream s;
      s.precision(17);
      s << "b = " << describe(sorted[i - 1].b) << " > b = " << describe(sorted[i].b)
        << " but lambda " << sorted[i - 1].lambda << " >= " << sorted[i].lambda;
      return fail(ValidationRule::AntiMonotone, s.str());
    }
  }

  if (ref) {
    const RightBoundaryValue inf = RightBoundaryValue::infinity();
    const double upper = eigenvalue(ref->q, ref->left, inf, data.k, opts);
    const double lower = data.k == 0 ? -kInf : eigenvalue(ref->q, ref->left, inf, data.k - 1, opts);
    for (const auto& r : recs) {
      std::ostringstream s;
      s.precision(17);
      if (r.b.is_infinite()) {
        if (std::abs(r.lambda - upper) > 1e-8 * std::max(1.0, std::abs(upper))) {
          s << "b = inf record lambda " << r.lambda << " differs from lambda_k(inf) = " << upper;
          return fail(ValidationRule::Containment, s.str());
        }
      } else if (!(r.lambda > lower && r.lambda < upper)) {
        s << "lambda " << r.lambda << " at b = " << describe(r.b) << " outside (" << lower << ", "
          << upper << ")";
        return fail(ValidationRule::Containment, s.str());
      }
    }
  }

  if (data.k == 0) {
    if (!b_cap) {
      return fail(ValidationRule::LowestIndexCap,
                  "k = 0 data requires an explicit upper bound on the b_j");
    }
    for (const auto& r : recs) {
      if (!r.b.is_infinite() && r.b.value() > *b_cap) {
        return fail(ValidationRule::LowestIndexCap,
                    "b = " + describe(r.b) + " exceeds cap " + std::to_string(*b_cap));
      }
    }
  }
  return {};
}

FixedIndexDataset synth_data(const Potential& q, const LeftBoundary& lb, int k,
                             std::span<const RightBoundaryValue> b_list,
                             const SpectralOptions& opts) {
  for (std::size_t i = 0; i < b_list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (b_list[i] == b_list[j]) throw DataError("synth_data: b = " + describe(b_list[i]) + " repeated");
    }
  }
  FixedIndexDataset data;
  data.k = k;
  data.note = "synthetic";
  for (const auto& b : b_list) data.records.push_back({b, eigenvalue(q, lb, b, k, opts)});
  return data;
}

double residual_norm(const Potential& q_hat, const LeftBoundary& f_hat,
                     const FixedIndexDataset& data, const SpectralOptions& opts) {
  if (data.records.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : data.records) {
    const double d = eigenvalue(q_hat, f_hat, r.b, data.k, opts) - r.lambda;
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(data.records.size()));
}

int parameter_count(const ModelConfig& cfg) {
  return cfg.M + std::visit(
                     [](const auto& f) -> int {
                       using T = std::decay_t<decltype(f)>;
                       if constexpr (std::is_same_v<T, FixedF>) return 0;
                       if constexpr (std::is_same_v<T, ConstantF>) return 1;
                       if constexpr (std::is_same_v<T, PoleResidueF>) {
                         return 1 + 2 * static_cast<int>(f.initial.poles().size());
                       }
                     },
                     cfg.f);
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Parameter vector layout: [c_0..c_{M-1}, f-parameters].
struct Model {
  Potential q;
  LeftBoundary left;
};

Vec initial_parameters(const ModelConfig& cfg) {
  Vec p = Vec::Zero(parameter_count(cfg));
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantF>) p[cfg.M] = f.initial;
        if constexpr (std::is_same_v<T, PoleResidueF>) {
          p[cfg.M] = f.initial.constant_term();
          int i = cfg.M + 1;
          for (const auto& pole : f.initial.poles()) {
            p[i++] = std::log(pole.weight);
            p[i++] = pole.location;
          }
        }
      },
      cfg.f);
  return p;
}

Model decode(const ModelConfig& cfg, const Vec& p) {
  std::vector<double> coeffs(p.data(), p.data() + cfg.M);
  Model m{Potential::cosine(std::move(coeffs)), LeftBoundary::neumann()};
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FixedF>) m.left = f.left;
        if constexpr (std::is_same_v<T, ConstantF>) m.left = LeftBoundary::robin(p[cfg.M]);
        if constexpr (std::is_same_v<T, PoleResidueF>) {
          std::vector<Pole> poles;
          int i = cfg.M + 1;
          for (std::size_t j = 0; j < f.initial.poles().size(); ++j, i += 2) {
            poles.push_back({std::exp(p[i]), p[i + 1]});
          }
          m.left = LeftBoundary(RationalHerglotz(f.initial.slope(), p[cfg.M], std::move(poles)));
        }
      },
      cfg.f);
  return m;
}

using ResidualFn = std::function<Vec(const Model&)>;

struct Evaluation {
  Vec residual;
  double objective;
};

// Regularization acts on c_1..c_{M-1} only.
double penalty(const ModelConfig& cfg, const Vec& p) {
  double s = 0.0;
  for (int m = 1; m < cfg.M; ++m) s += p[m] * p[m];
  return cfg.rho * s;
}

std::optional<Evaluation> evaluate(const ModelConfig& cfg, const ResidualFn& fn, const Vec& p) {
  try {
    Vec r = fn(decode(cfg, p));
    if (!r.allFinite()) return std::nullopt;
    const double obj = r.squaredNorm() + penalty(cfg, p);
    return Evaluation{std::move(r), obj};
  } catch (const DomainError&) {
    return std::nullopt;  // e.g. trial step merged two poles of f
  } catch (const IntegrationError&) {
    return std::nullopt;
  } catch (const BracketError&) {
    return std::nullopt;
  }
}

ReconstructionResult levenberg_marquardt(const ModelConfig& cfg, const ResidualFn& fn) {
  const int n = parameter_count(cfg);
  Vec p = initial_parameters(cfg);
  auto current = evaluate(cfg, fn, p);
  if (!current) throw DataError("forward problem failed at the initial guess");

  ReconstructionResult result;
  result.objective_history.push_back(current->objective);

  Vec reg = Vec::Zero(n);
  for (int m = 1; m < cfg.M; ++m) reg[m] = cfg.rho;

  double mu = 0.0;
  for (int iter = 0; iter < cfg.max_iterations && !result.converged; ++iter) {
    result.iterations = iter + 1;
    const Vec& r = current->residual;
    Mat J(r.size(), n);
    for (int i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(p[i]));
      Vec pp = p;
      pp[i] += h;
      const Model m = decode(cfg, pp);
      J.col(i) = (fn(m) - r) / h;
    }

    const Mat A = J.transpose() * J + Mat(reg.asDiagonal());
    const Vec g = J.transpose() * r + reg.cwiseProduct(p);
    // a full Gauss-Newton first step can jump into a wrong basin; start at the curvature scale
    if (iter == 0) mu = std::max(A.diagonal().maxCoeff(), 1e-12);
    if (g.norm() <= cfg.tolerance) {
      result.converged = true;
      break;
    }

    int rejected = 0;
    while (true) {
      const Mat damped = A + mu * Mat::Identity(n, n);
      const Vec step = damped.ldlt().solve(-g);
      const Vec trial_p = p + step;
      auto trial = evaluate(cfg, fn, trial_p);
      if (trial && trial->objective < current->objective) {
        p = trial_p;
        current = std::move(trial);
        result.objective_history.push_back(current->objective);
        mu = std::max(mu / 10.0, 1e-15);
        break;
      }
      mu *= 10.0;
      if (++rejected >= 10) {
        result.converged = true;
        break;
      }
    }
  }

  const Model best = decode(cfg, p);
  result.q_hat = best.q;
  result.f_hat = best.left;
  result.residual = std::sqrt(current->residual.squaredNorm() /
                              static_cast<double>(std::max<Eigen::Index>(1, current->residual.size())));
  return result;
}

}  // namespace

ReconstructionResult reconstruct_fixed_index(const FixedIndexDataset& data,
                                             const ModelConfig& cfg) {
  if (cfg.M < 1) throw DomainError("model needs at least one cosine coefficient");
  if (cfg.rho < 0.0) throw DomainError("regularization weight must be nonnegative");
  const ValidationReport report = validate_fixed_index_data(data, std::nullopt, cfg.b_cap, cfg.spectral);
  if (!report.ok) throw DataError("invalid fixed-index data: " + report.message);
  const int n = parameter_count(cfg);
  if (!cfg.allow_underdetermined && n > static_cast<int>(data.records.size())) {
    throw DataError(std::to_string(n) + " unknown parameters exceed " +
                    std::to_string(data.records.size()) + " records");
  }

  const ResidualFn fn = [&](const Model& m) {
    Vec r(static_cast<Eigen::Index>(data.records.size()));
    for (std::size_t j = 0; j < data.records.size(); ++j) {
      const auto& rec = data.records[j];
      r[static_cast<Eigen::Index>(j)] = eigenvalue(m.q, m.left, rec.b, data.k, cfg.spectral) - rec.lambda;
    }
    return r;
  };
  return levenberg_marquardt(cfg, fn);
}

void check_interlacing(std::span<const double> dirichlet, std::span<const double> zero_b) {
  auto fail_with = [](const std::string& what) { throw DataError("spectra inconsistent: " + what); };
  if (dirichlet.empty() || zero_b.empty()) fail_with("both spectra must be nonempty");
  for (std::size_t i = 1; i < dirichlet.size(); ++i) {
    if (!(dirichlet[i] > dirichlet[i - 1])) fail_with("dirichlet spectrum not strictly increasing");
  }
  for (std::size_t i = 1; i < zero_b.size(); ++i) {
    if (!(zero_b[i] > zero_b[i - 1])) fail_with("zero-b spectrum not strictly increasing");
  }
  for (std::size_t k = 0; k < dirichlet.size(); ++k) {
    std::ostringstream s;
    s.precision(17);
    if (k < zero_b.size() && !(zero_b[k] < dirichlet[k])) {
      s << "zero_b[" << k << "] = " << zero_b[k] << " not below dirichlet[" << k
        << "] = " << dirichlet[k];
      fail_with(s.str());
    }
    if (k + 1 < zero_b.size() && !(dirichlet[k] < zero_b[k + 1])) {
      s << "dirichlet[" << k << "] = " << dirichlet[k] << " not below zero_b[" << k + 1
        << "] = " << zero_b[k + 1];
      fail_with(s.str());
    }
  }
}

ReconstructionResult reconstruct_two_spectra(std::span<const double> dirichlet,
                                             std::span<const double> zero_b,
                                             const ModelConfig& cfg) {
  if (cfg.M < 1) throw DomainError("model needs at least one cosine coefficient");
  check_interlacing(dirichlet, zero_b);
  const auto records = dirichlet.size() + zero_b.size();
  const int n = parameter_count(cfg);
  if (!cfg.allow_underdetermined && n > static_cast<int>(records)) {
    throw DataError(std::to_string(n) + " unknown parameters exceed " + std::to_string(records) +
                    " eigenvalues");
  }

  const ResidualFn fn = [&](const Model& m) {
    Vec r(static_cast<Eigen::Index>(records));
    const Spectrum d = spectrum(m.q, m.left, RightBoundaryValue::infinity(),
                                static_cast<int>(dirichlet.size()) - 1, cfg.spectral);
    const Spectrum z = spectrum(m.q, m.left, RightBoundaryValue(0.0),
                                static_cast<int>(zero_b.size()) - 1, cfg.spectral);
    Eigen::Index i = 0;
    for (std::size_t k = 0; k < dirichlet.size(); ++k) r[i++] = d[k] - dirichlet[k];
    for (std::size_t k = 0; k < zero_b.size(); ++k) r[i++] = z[k] - zero_b[k];
    return r;
  };
  return levenberg_marquardt(cfg, fn);
}

}  // namespace slinv
