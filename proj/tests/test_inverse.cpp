#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "slinv/error.hpp"
#include "slinv/inverse.hpp"
#include "test_support.hpp"

using namespace slinv;
using doctest::Approx;

namespace {

const RightBoundaryValue kInfB = RightBoundaryValue::infinity();

std::vector<RightBoundaryValue> b_values(std::initializer_list<double> bs) {
  return {bs.begin(), bs.end()};
}

// 12 distinct b in [-5, 5].
std::vector<RightBoundaryValue> twelve_b() {
  std::vector<RightBoundaryValue> out;
  for (int j = 0; j < 12; ++j) out.emplace_back(-5.0 + 10.0 * j / 11.0);
  return out;
}

FixedIndexDataset records(int k, std::initializer_list<std::pair<double, double>> rs) {
  FixedIndexDataset d;
  d.k = k;
  for (auto [b, l] : rs) d.records.push_back({RightBoundaryValue(b), l});
  return d;
}

ModelConfig fixed_f(int M, LeftBoundary left = LeftBoundary::neumann()) {
  ModelConfig cfg;
  cfg.M = M;
  cfg.f = FixedF{std::move(left)};
  return cfg;
}

}  // namespace

TEST_CASE("validation accepts points read off the free m-function") {
  const auto data = records(1, {{0.9635, 0.49}, {0.0, 1.0}, {-0.8718, 1.44}});
  const auto report = validate_fixed_index_data(data, ReferenceProblem{Potential::zero(), LeftBoundary::neumann()});
  CHECK(report.ok);
  CHECK(report.failed == ValidationRule::None);
}

TEST_CASE("validation rejections") {
  const auto anti = validate_fixed_index_data(records(1, {{1.0, 2.0}, {0.0, 1.0}}));
  CHECK_FALSE(anti.ok);
  CHECK(anti.failed == ValidationRule::AntiMonotone);

  const auto dup = validate_fixed_index_data(records(1, {{0.5, 1.0}, {0.5, 1.2}, {0.0, 1.3}}));
  CHECK_FALSE(dup.ok);
  CHECK(dup.failed == ValidationRule::DistinctB);

  FixedIndexDataset two_inf;
  two_inf.k = 1;
  two_inf.records = {{kInfB, 2.25}, {kInfB, 2.25}};
  CHECK(validate_fixed_index_data(two_inf).failed == ValidationRule::DistinctB);

  CHECK(validate_fixed_index_data(records(1, {{0.0, 1.0}})).failed == ValidationRule::TooFewRecords);

  // anti-monotone and inside (0.25, 2.25), but 2.5 is outside for the free problem
  const ReferenceProblem free{Potential::zero(), LeftBoundary::neumann()};
  const auto out = validate_fixed_index_data(records(1, {{1.0, 0.5}, {-9.0, 2.5}}), free);
  CHECK(out.failed == ValidationRule::Containment);

  // b = ∞ sorts below every finite b and must sit on λ_k(∞)
  FixedIndexDataset with_inf = records(1, {{0.0, 1.0}});
  with_inf.records.push_back({kInfB, 2.25});
  CHECK(validate_fixed_index_data(with_inf, free).ok);
  with_inf.records.back().lambda = 2.2;
  CHECK(validate_fixed_index_data(with_inf, free).failed == ValidationRule::Containment);
  with_inf.records.back().lambda = 0.9;
  CHECK(validate_fixed_index_data(with_inf).failed == ValidationRule::AntiMonotone);
}

TEST_CASE("k = 0 data needs a cap on b") {
  const auto data = synth_data(Potential::zero(), LeftBoundary::neumann(), 0, b_values({-1.0, 0.5, 2.0}));
  const auto no_cap = validate_fixed_index_data(data);
  CHECK_FALSE(no_cap.ok);
  CHECK(no_cap.failed == ValidationRule::LowestIndexCap);
  CHECK(validate_fixed_index_data(data, std::nullopt, 2.0).ok);
  CHECK(validate_fixed_index_data(data, std::nullopt, 1.0).failed == ValidationRule::LowestIndexCap);

  ModelConfig cfg = fixed_f(1);
  CHECK_THROWS_AS(reconstruct_fixed_index(data, cfg), DataError);
}

TEST_CASE("synth_data inverts the free m-function") {
  const auto data = synth_data(Potential::zero(), LeftBoundary::neumann(), 1, b_values({0.9635, 0.0, -0.8718}));
  REQUIRE(data.records.size() == 3);
  // closed-form m(λ) = -√λ tan(√λ π) solved by bracketing at these b
  CHECK(data.records[0].lambda == Approx(0.4899908361416868).epsilon(1e-9));
  CHECK(data.records[1].lambda == Approx(1.0).epsilon(1e-9));
  CHECK(data.records[2].lambda == Approx(1.4399811171227124).epsilon(1e-9));
  CHECK(std::abs(data.records[0].lambda - 0.49) < 1e-4);
  CHECK(std::abs(data.records[2].lambda - 1.44) < 1e-4);

  const auto shifted = synth_data(Potential::constant(2.0), LeftBoundary::neumann(), 1, b_values({0.0}));
  CHECK(shifted.records[0].lambda == Approx(3.0).epsilon(1e-10));

  CHECK_THROWS_AS(synth_data(Potential::zero(), LeftBoundary::neumann(), 1, b_values({1.0, 1.0})), DataError);
}

TEST_CASE("synthetic data on q = cos x is consistent with the oracle interval") {
  const auto q = Potential::cosine({0.0, 1.0});
  std::vector<RightBoundaryValue> bs;
  for (int j = 0; j < 10; ++j) bs.emplace_back(-5.0 + 10.0 * j / 9.0);
  const auto data = synth_data(q, LeftBoundary::neumann(), 1, bs);
  CHECK(validate_fixed_index_data(data, ReferenceProblem{q, LeftBoundary::neumann()}).ok);

  const auto fn = support::as_function(q);
  const double lower = oracle::fd_eigenvalue(fn, kPi, 0.0, std::nullopt, 0);
  const double upper = oracle::fd_eigenvalue(fn, kPi, 0.0, std::nullopt, 1);
  for (const auto& r : data.records) {
    CHECK(r.lambda > lower);
    CHECK(r.lambda < upper);
  }
}

TEST_CASE("synthetic data always validates against its generator") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ub(-6.0, 6.0);
  for (int trial = 0; trial < 4; ++trial) {
    const auto q = support::random_cosine(rng, 3);
    std::vector<RightBoundaryValue> bs;
    for (int j = 0; j < 5; ++j) bs.emplace_back(ub(rng));
    bs.push_back(kInfB);
    const int k = 1 + trial % 3;
    const auto lb = trial % 2 == 0 ? LeftBoundary::robin(0.4) : LeftBoundary::dirichlet();
    CHECK(validate_fixed_index_data(synth_data(q, lb, k, bs), ReferenceProblem{q, lb}).ok);
  }
}

TEST_CASE("residual_norm") {
  const auto q = Potential::cosine({0.5, -0.3});
  const auto data = synth_data(q, LeftBoundary::neumann(), 1, twelve_b());
  CHECK(residual_norm(q, LeftBoundary::neumann(), data) <= 1e-9);
  CHECK(residual_norm(q.shifted(1.0), LeftBoundary::neumann(), data) == Approx(1.0).epsilon(1e-8));
  CHECK(residual_norm(Potential::cosine({0.5, -0.25}), LeftBoundary::neumann(), data) > 1e-4);
}

TEST_CASE("zero potential round trip") {
  const auto data = synth_data(Potential::zero(), LeftBoundary::neumann(), 1,
                               b_values({-4.0, -2.5, -1.0, -0.2, 0.3, 1.1, 2.6, 4.5}));
  const auto r = reconstruct_fixed_index(data, fixed_f(3));
  CHECK(r.converged);
  CHECK(r.residual <= 1e-9);
  for (double c : r.q_hat.values()) CHECK(std::abs(c) <= 1e-6);
}

TEST_CASE("cosine coefficients are recovered from fixed-index data") {
  const auto data = synth_data(Potential::cosine({0.5, -0.3}), LeftBoundary::neumann(), 1, twelve_b());
  const auto r = reconstruct_fixed_index(data, fixed_f(2));
  CHECK(r.converged);
  CHECK(r.residual <= 1e-8);
  CHECK(r.q_hat.values()[0] == Approx(0.5).epsilon(1e-3));
  CHECK(std::abs(r.q_hat.values()[1] + 0.3) <= 1e-3);
  CHECK(r.f_hat == LeftBoundary::neumann());

  // accepted steps never increase the regularized objective
  for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
    CHECK(r.objective_history[i] <= r.objective_history[i - 1]);
  }
}

TEST_CASE("an unknown constant f is recovered") {
  const auto data = synth_data(Potential::zero(), LeftBoundary::robin(1.0), 1, twelve_b());
  ModelConfig cfg;
  cfg.M = 2;
  cfg.f = ConstantF{0.0};
  const auto r = reconstruct_fixed_index(data, cfg);
  CHECK(r.converged);
  CHECK(std::abs(r.f_hat.herglotz().constant_term() - 1.0) <= 1e-3);
  for (double c : r.q_hat.values()) CHECK(std::abs(c) <= 1e-3);
}

TEST_CASE("a one-pole f is recovered") {
  const LeftBoundary truth(RationalHerglotz(0.0, 0.2, {{0.5, 3.0}}));
  const auto data = synth_data(Potential::constant(0.3), truth, 1, twelve_b());
  ModelConfig cfg;
  cfg.M = 1;
  cfg.f = PoleResidueF{RationalHerglotz(0.0, 0.0, {{0.3, 2.5}})};
  const auto r = reconstruct_fixed_index(data, cfg);
  CHECK(r.converged);
  const auto& f = r.f_hat.herglotz();
  REQUIRE(f.poles().size() == 1);
  CHECK(std::abs(f.constant_term() - 0.2) <= 1e-3);
  CHECK(std::abs(f.poles()[0].weight - 0.5) <= 1e-3);
  CHECK(std::abs(f.poles()[0].location - 3.0) <= 1e-3);
  CHECK(std::abs(r.q_hat.values()[0] - 0.3) <= 1e-3);
}

TEST_CASE("reconstruction input errors") {
  const auto data = synth_data(Potential::zero(), LeftBoundary::neumann(), 1, b_values({-1.0, 0.0, 1.0}));
  CHECK_THROWS_AS(reconstruct_fixed_index(data, fixed_f(4)), DataError);
  CHECK_THROWS_AS(reconstruct_fixed_index(records(1, {{1.0, 2.0}, {0.0, 1.0}}), fixed_f(1)), DataError);
  ModelConfig bad = fixed_f(0);
  CHECK_THROWS_AS(reconstruct_fixed_index(data, bad), DomainError);
  CHECK(parameter_count(fixed_f(3)) == 3);
  ModelConfig poles;
  poles.M = 2;
  poles.f = PoleResidueF{RationalHerglotz(0.0, 0.0, {{1.0, 1.0}, {1.0, 4.0}})};
  CHECK(parameter_count(poles) == 7);
}

TEST_CASE("finitely many b_j leave q undetermined") {
  const auto generator = Potential::cosine({0.5, -0.3, 0.4, 0.3, -0.2});
  const auto data = synth_data(generator, LeftBoundary::neumann(), 1, b_values({-2.0, 0.0, 2.0}));
  ModelConfig cfg = fixed_f(5);
  cfg.rho = 0.0;
  cfg.allow_underdetermined = true;
  const auto r = reconstruct_fixed_index(data, cfg);
  CHECK(r.residual <= 1e-8);
  double dist = 0.0;
  for (int m = 0; m < 5; ++m) dist += std::pow(r.q_hat.values()[m] - generator.values()[m], 2);
  CHECK(std::sqrt(dist) >= 1e-2);
}

TEST_CASE("two-spectra reconstruction") {
  const double dir[] = {0.25, 2.25, 6.25, 12.25};
  const double neu[] = {0.0, 1.0, 4.0, 9.0};
  const auto r = reconstruct_two_spectra(dir, neu, fixed_f(3));
  CHECK(r.converged);
  CHECK(r.residual <= 1e-9);
  for (double c : r.q_hat.values()) CHECK(std::abs(c) <= 1e-6);

  const double bad_dir[] = {0.25, 2.25};
  const double bad_neu[] = {1.0, 4.0};
  CHECK_THROWS_AS(reconstruct_two_spectra(bad_dir, bad_neu, fixed_f(1)), DataError);
  const double not_sorted[] = {2.25, 0.25};
  CHECK_THROWS_AS(check_interlacing(not_sorted, neu), DataError);
  CHECK_NOTHROW(check_interlacing(dir, neu));
}

TEST_CASE("two spectra of a cosine potential recover it") {
  const auto q = Potential::cosine({0.5, -0.3});
  const auto dir = spectrum(q, LeftBoundary::neumann(), kInfB, 8);
  const auto neu = spectrum(q, LeftBoundary::neumann(), RightBoundaryValue(0.0), 8);
  const auto r = reconstruct_two_spectra(dir.eigenvalues, neu.eigenvalues, fixed_f(2));
  CHECK(r.converged);
  CHECK(std::abs(r.q_hat.values()[0] - 0.5) <= 1e-3);
  CHECK(std::abs(r.q_hat.values()[1] + 0.3) <= 1e-3);
}
