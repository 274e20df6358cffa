#include "slinv/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "slinv/error.hpp"
#include "slinv/io.hpp"

namespace slinv {

namespace {

constexpr int kFailure = 1;
constexpr int kMalformed = 2;

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw FormatError("not a decimal number: \"" + std::string(text) + "\"");
  return v;
}

RightBoundaryValue parse_b(std::string_view text) {
  if (text == "inf") return RightBoundaryValue::infinity();
  return RightBoundaryValue(parse_number(text));
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Writes to `path`, or to `out` when path is "-".
void emit(const std::string& path, std::ostream& out, const std::string& content) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Options {
  std::string spec;
  std::string out;
  std::string model;
  std::string b;
  std::string interval;
  int k = 1;
  int K = 0;
  int n = 2;
  double tol = 1e-6;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forward and inverse spectral solver for Sturm-Liouville problems with Herglotz boundary conditions", "slinv"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_io = [&](CLI::App* cmd, const char* spec_help) {
    cmd->add_option("--spec", o.spec, spec_help)->required();
    cmd->add_option("--out", o.out, "Output path, - for stdout")->required();
  };

  auto* forward = app.add_subcommand("forward", "Eigenvalues lambda_0..lambda_K as CSV");
  add_io(forward, "Problem JSON");
  forward->add_option("--K", o.K, "Highest eigenvalue index")->required();
  forward->add_option("--b", o.b, "Override the right boundary value (number or inf)");

  auto* weyl = app.add_subcommand("weyl-sample", "Sample the Weyl function as CSV");
  add_io(weyl, "Problem JSON");
  weyl->add_option("--interval", o.interval, "LO,HI")->required();
  weyl->add_option("--n", o.n, "Number of samples")->required();

  auto* dbl = app.add_subcommand("double-check", "Symmetric doubling correspondence report");
  add_io(dbl, "Problem JSON with a Herglotz left condition");
  dbl->add_option("--K", o.K, "Highest doubled-problem index")->required();
  dbl->add_option("--tol", o.tol, "Pass threshold on the largest gap");

  auto* synth = app.add_subcommand("synth-data", "Generate a fixed-index dataset");
  add_io(synth, "Problem JSON");
  synth->add_option("--k", o.k, "Eigenvalue index")->required();
  synth->add_option("--b", o.b, "Comma-separated b values (numbers or inf)")->required();

  auto* invert = app.add_subcommand("invert", "Reconstruct from a fixed-index dataset");
  add_io(invert, "Dataset JSON");
  invert->add_option("--model", o.model, "Model config JSON")->required();

  auto* two = app.add_subcommand("two-spectra", "Reconstruct from the b = inf and b = 0 spectra");
  add_io(two, "Two-spectra JSON");
  two->add_option("--model", o.model, "Model config JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }

  try {
    if (forward->parsed()) {
      ProblemSpec p = problem_from_json(read_json_file(o.spec));
      if (!o.b.empty()) p.b = parse_b(o.b);
      if (o.K < 0) throw FormatError("--K must be nonnegative");
      std::ostringstream csv;
      write_spectrum_csv(csv, spectrum(p.q, p.left, p.b, o.K));
      emit(o.out, out, csv.str());
      return 0;
    }
    if (weyl->parsed()) {
      const ProblemSpec p = problem_from_json(read_json_file(o.spec));
      const auto bounds = split(o.interval, ',');
      if (bounds.size() != 2) throw FormatError("--interval expects LO,HI");
      if (o.n < 2) throw FormatError("--n must be at least 2");
      std::ostringstream csv;
      write_m_samples_csv(csv, m_sample(p.q, p.left, parse_number(bounds[0]), parse_number(bounds[1]), o.n));
      emit(o.out, out, csv.str());
      return 0;
    }
    if (dbl->parsed()) {
      const ProblemSpec p = problem_from_json(read_json_file(o.spec));
      if (p.left.is_dirichlet()) throw DataError("doubling requires a Herglotz left condition, got dirichlet");
      const CorrespondenceReport report = correspondence_check(p.q, p.left.herglotz(), o.K, o.tol);
      emit(o.out, out, dump(to_json(report)));
      if (!report.pass) {
        err << "error: correspondence max_gap " << format_double(report.max_gap) << " exceeds tol "
            << format_double(o.tol) << "\n";
        return kFailure;
      }
      return 0;
    }
    if (synth->parsed()) {
      const ProblemSpec p = problem_from_json(read_json_file(o.spec));
      std::vector<RightBoundaryValue> bs;
      for (auto part : split(o.b, ',')) bs.push_back(parse_b(part));
      emit(o.out, out, dump(to_json(synth_data(p.q, p.left, o.k, bs))));
      return 0;
    }
    if (invert->parsed() || two->parsed()) {
      const ModelConfig cfg = model_from_json(read_json_file(o.model));
      const Json input = read_json_file(o.spec);
      ReconstructionResult r;
      if (invert->parsed()) {
        r = reconstruct_fixed_index(dataset_from_json(input), cfg);
      } else {
        const TwoSpectraInput s = two_spectra_from_json(input);
        r = reconstruct_two_spectra(s.dirichlet, s.zero_b, cfg);
      }
      emit(o.out, out, dump(to_json(r)));
      if (!r.converged) {
        err << "error: reconstruction did not converge after " << r.iterations << " iterations\n";
        return kFailure;
      }
      return 0;
    }
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kMalformed;
}

}  // namespace slinv
