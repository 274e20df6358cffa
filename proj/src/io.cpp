#include "slinv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "slinv/error.hpp"

namespace slinv {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding \"") + name + "\"");
  const auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

// JSON has no infinity; non-finite values become "inf"/"-inf" strings.
Json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

// Type invariants broken by file contents are malformed input, not numerical failures.
template <class F>
auto checked(F&& build) {
  try {
    return build();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Potential potential_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (!type.is_string()) throw FormatError("q.type must be a string");
  const auto values = numbers(field(j, "values"), "q.values");
  const auto t = type.get<std::string>();
  if (t == "cosine") return checked([&] { return Potential::cosine(values); });
  if (t == "cells") return checked([&] { return Potential::cells(values); });
  if (t == "grid") return checked([&] { return Potential::grid(values); });
  throw FormatError("q.type must be one of cosine, cells, grid; got \"" + t + "\"");
}

Json to_json(const Potential& q) {
  const char* type = "cosine";
  if (q.kind() == Potential::Kind::Cells) type = "cells";
  if (q.kind() == Potential::Kind::Grid) type = "grid";
  return Json{{"type", type}, {"values", q.values()}};
}

LeftBoundary left_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "dirichlet") return LeftBoundary::dirichlet();
    throw FormatError("left must be \"dirichlet\" or a Herglotz object");
  }
  if (!j.is_object()) throw FormatError("left must be \"dirichlet\" or a Herglotz object");
  const double a = j.contains("slope") ? number(j["slope"], "left.slope") : 0.0;
  const double c = j.contains("const") ? number(j["const"], "left.const") : 0.0;
  std::vector<Pole> poles;
  if (j.contains("poles")) {
    if (!j["poles"].is_array()) throw FormatError("left.poles must be an array");
    for (const auto& p : j["poles"]) {
      poles.push_back({number(field(p, "w"), "pole w"), number(field(p, "d"), "pole d")});
    }
  }
  return checked([&] { return LeftBoundary(RationalHerglotz(a, c, std::move(poles))); });
}

Json to_json(const LeftBoundary& lb) {
  if (lb.is_dirichlet()) return "dirichlet";
  const auto& f = lb.herglotz();
  Json poles = Json::array();
  for (const auto& p : f.poles()) poles.push_back({{"w", p.weight}, {"d", p.location}});
  return Json{{"slope", f.slope()}, {"const", f.constant_term()}, {"poles", poles}};
}

RightBoundaryValue right_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return RightBoundaryValue::infinity();
    throw FormatError("b must be a number or \"inf\"");
  }
  return RightBoundaryValue(number(j, "b"));
}

Json to_json(const RightBoundaryValue& b) {
  if (b.is_infinite()) return "inf";
  return b.value();
}

ProblemSpec problem_from_json(const Json& j) {
  ProblemSpec p;
  p.q = potential_from_json(field(j, "q"));
  p.left = left_from_json(field(j, "left"));
  if (j.contains("b")) p.b = right_from_json(j["b"]);
  return p;
}

FixedIndexDataset dataset_from_json(const Json& j) {
  FixedIndexDataset d;
  d.k = integer(field(j, "k"), "k");
  if (d.k < 0) throw FormatError("k must be nonnegative");
  const Json& recs = field(j, "records");
  if (!recs.is_array()) throw FormatError("records must be an array");
  for (const auto& r : recs) {
    d.records.push_back({right_from_json(field(r, "b")), number(field(r, "lambda"), "lambda")});
  }
  if (j.contains("note") && j["note"].is_string()) d.note = j["note"].get<std::string>();
  return d;
}

Json to_json(const FixedIndexDataset& d) {
  Json recs = Json::array();
  for (const auto& r : d.records) recs.push_back({{"b", to_json(r.b)}, {"lambda", r.lambda}});
  Json j{{"k", d.k}, {"records", recs}};
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

ModelConfig model_from_json(const Json& j) {
  ModelConfig cfg;
  if (!j.is_object()) throw FormatError("model config must be an object");
  cfg.M = integer(field(j, "M"), "M");
  if (cfg.M < 1) throw FormatError("M must be at least 1");
  if (j.contains("f")) {
    const Json& f = j["f"];
    const Json& type = field(f, "type");
    if (!type.is_string()) throw FormatError("f.type must be a string");
    const auto t = type.get<std::string>();
    if (t == "fixed") {
      cfg.f = FixedF{left_from_json(field(f, "left"))};
    } else if (t == "constant") {
      cfg.f = ConstantF{f.contains("initial") ? number(f["initial"], "f.initial") : 0.0};
    } else if (t == "poles") {
      const LeftBoundary init = left_from_json(field(f, "initial"));
      if (init.is_dirichlet()) throw FormatError("f.initial of a pole model must be a Herglotz object");
      cfg.f = PoleResidueF{init.herglotz()};
    } else {
      throw FormatError("f.type must be one of fixed, constant, poles; got \"" + t + "\"");
    }
  }
  if (j.contains("rho")) cfg.rho = number(j["rho"], "rho");
  if (cfg.rho < 0.0) throw FormatError("rho must be nonnegative");
  if (j.contains("max_iterations")) cfg.max_iterations = integer(j["max_iterations"], "max_iterations");
  if (j.contains("tolerance")) cfg.tolerance = number(j["tolerance"], "tolerance");
  if (j.contains("allow_underdetermined")) {
    if (!j["allow_underdetermined"].is_boolean()) throw FormatError("allow_underdetermined must be a boolean");
    cfg.allow_underdetermined = j["allow_underdetermined"].get<bool>();
  }
  if (j.contains("b_cap")) cfg.b_cap = number(j["b_cap"], "b_cap");
  if (j.contains("base_steps")) cfg.spectral.shooting.base_steps = integer(j["base_steps"], "base_steps");
  return cfg;
}

TwoSpectraInput two_spectra_from_json(const Json& j) {
  return {numbers(field(j, "dirichlet"), "dirichlet"), numbers(field(j, "zero_b"), "zero_b")};
}

Json to_json(const ReconstructionResult& r) {
  return Json{{"q_hat", to_json(r.q_hat)},
              {"f_hat", to_json(r.f_hat)},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"objective_history", r.objective_history}};
}

Json to_json(const CorrespondenceReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"i", p.i},
                     {"mu_odd", p.mu_odd},
                     {"lambda_dirichlet", p.lambda_dirichlet},
                     {"mu_even", p.mu_even},
                     {"lambda_neumann", p.lambda_neumann},
                     {"gaps", {p.gap_odd, p.gap_even}}});
  }
  return Json{{"pairs", pairs}, {"max_gap", finite_or_string(r.max_gap)}, {"tol", r.tol}, {"pass", r.pass}};
}

Json to_json(const ValidationReport& r) {
  return Json{{"ok", r.ok}, {"failed", to_string(r.failed)}, {"message", r.message}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "k,lambda\n";
  for (std::size_t k = 0; k < s.size(); ++k) os << k << ',' << format_double(s[k]) << '\n';
}

void write_m_samples_csv(std::ostream& os, const std::vector<std::pair<double, double>>& samples) {
  os << "lambda,m\n";
  for (const auto& [lambda, m] : samples) os << format_double(lambda) << ',' << format_double(m) << '\n';
}

}  // namespace slinv
