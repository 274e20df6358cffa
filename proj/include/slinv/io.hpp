#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slinv/herglotz.hpp"
#include "slinv/inverse.hpp"
#include "slinv/potential.hpp"
#include "slinv/spectral.hpp"

namespace slinv {

/// Forward problem on (0, π): potential, left condition and right parameter b.
struct ProblemSpec {
  Potential q = Potential::zero();
  LeftBoundary left;
  RightBoundaryValue b = RightBoundaryValue::infinity();
};

struct TwoSpectraInput {
  std::vector<double> dirichlet;
  std::vector<double> zero_b;
};

// JSON conversions. Parsers throw FormatError on schema violations and let
// DomainError through for values that break a type invariant.
using Json = nlohmann::json;

Potential potential_from_json(const Json& j);
Json to_json(const Potential& q);

LeftBoundary left_from_json(const Json& j);
Json to_json(const LeftBoundary& lb);

RightBoundaryValue right_from_json(const Json& j);
Json to_json(const RightBoundaryValue& b);

ProblemSpec problem_from_json(const Json& j);

FixedIndexDataset dataset_from_json(const Json& j);
Json to_json(const FixedIndexDataset& d);

ModelConfig model_from_json(const Json& j);
TwoSpectraInput two_spectra_from_json(const Json& j);

Json to_json(const ReconstructionResult& r);
Json to_json(const CorrespondenceReport& r);
Json to_json(const ValidationReport& r);

/// Read and parse a JSON file; FormatError if unreadable or malformed.
Json read_json_file(const std::string& path);

/// Locale-independent, 17 significant digits (%.17g style); ±inf as "inf"/"-inf".
std::string format_double(double v);

/// "k,lambda" rows.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
/// "lambda,m" rows.
void write_m_samples_csv(std::ostream& os, const std::vector<std::pair<double, double>>& samples);

}  // namespace slinv
