// tri-contract: validate finite metric spaces, certify the triangle
// contraction inequality, run the Picard solver, enumerate fixed points,
// reproduce the bundled examples, and generate random instances.
//
// Exit codes: 0 = success / affirmative verdict; 1 = negative mathematical
// verdict (invalid metric, not contracting, no fixed point); 2 = usage or
// parse error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tricontract/tricontract.hpp>

namespace {

using namespace tricontract;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_json(const nlohmann::ordered_json& j) {
  std::cout << j.dump(2) << "\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string ok_violated(bool b) { return b ? "ok" : "violated"; }

std::string join_labels(const std::array<std::string, 3>& t) {
  return t[0] + ", " + t[1] + ", " + t[2];
}

// --- text renderers ---------------------------------------------------------

void render_validation_text(const FiniteMetricSpace& space,
                            const MetricValidationReport& report) {
  std::cout << "points: " << space.size() << "\n"
            << "zero diagonal: " << ok_violated(report.zero_diagonal_ok) << "\n"
            << "symmetry: " << ok_violated(report.symmetric_ok) << "\n"
            << "positivity: " << ok_violated(report.positivity_ok) << "\n"
            << "triangle inequality: " << ok_violated(report.triangle_ok)
            << "\n";
  for (const auto& v : report.violations) {
    std::cout << "  violation (" << v.axiom << "):";
    for (const auto& p : v.points) std::cout << " " << p;
    std::cout << " observed";
    for (double x : v.observed) std::cout << " " << format_number(x);
    std::cout << "\n";
  }
  std::cout << "verdict: " << (report.all_ok() ? "valid metric" : "not a metric")
            << "\n";
}

void render_certificate_text(const ContractionCertificate& cert) {
  std::cout << "phi: " << to_string(cert.phi) << "\n"
            << "alpha_star: " << format_number(cert.alpha_star) << "\n"
            << "witness: " << join_labels(cert.witness) << "\n"
            << "contracting: " << yes_no(cert.contracting) << "\n"
            << "triples checked: " << cert.triples_checked << "\n";
}

void render_triples_text(const std::vector<TripleEvaluation>& rows,
                         const std::string& header) {
  std::cout << header << "\n";
  for (const auto& row : rows) {
    std::cout << "  " << row.points[0] << " " << row.points[1] << " "
              << row.points[2] << ": image=" << format_number(row.phi_image)
              << " preimage=" << format_number(row.phi_preimage)
              << " ratio=" << format_number(row.ratio) << "\n";
  }
}

void render_periodicity_text(const PeriodicityReport& report) {
  std::cout << "fixed points:";
  if (report.fixed_points.empty()) std::cout << " (none)";
  for (const auto& p : report.fixed_points) std::cout << " " << p;
  std::cout << "\nperiod-2 points:";
  if (report.period2_points.empty()) std::cout << " (none)";
  for (const auto& p : report.period2_points) std::cout << " " << p;
  std::cout << "\n";
}

void render_trace_text(const FiniteTrace& trace) {
  std::cout << "orbit:";
  std::string sep = " ";
  for (const auto& p : trace.steps) {
    std::cout << sep << p;
    sep = " -> ";
  }
  std::cout << "\nd0: " << format_number(trace.d0) << "\nd_seq:";
  if (trace.d_seq.empty()) std::cout << " (empty)";
  for (double d : trace.d_seq) std::cout << " " << format_number(d);
  std::cout << "\n";
  if (const auto* fp = std::get_if<FixedPointReached<std::string>>(&trace.verdict)) {
    std::cout << "verdict: fixed point " << fp->point << "\n";
  } else if (const auto* p2 =
                 std::get_if<Period2Detected<std::string>>(&trace.verdict)) {
    std::cout << "verdict: period-2 cycle " << p2->first << " <-> " << p2->second
              << " (no fixed point on this orbit)\n";
  } else if (const auto* tol =
                 std::get_if<ToleranceReached<std::string>>(&trace.verdict)) {
    std::cout << "verdict: tolerance reached at " << tol->point << " (bound "
              << format_number(tol->bound) << ")\n";
  } else {
    std::cout << "verdict: iteration budget exhausted\n";
  }
}

// --- verbs ------------------------------------------------------------------

const SelfMap& require_map(const ParsedDocument& doc) {
  if (!doc.map) throw error("input document has no \"map\"");
  return *doc.map;
}

int cmd_validate(const std::string& input, const std::string& format) {
  const ParsedDocument doc = parse_space_unvalidated(read_file(input));
  const MetricValidationReport report = validate_metric(doc.space);
  if (format == "json") {
    nlohmann::ordered_json j = validation_to_json(report);
    j["points"] = doc.space.size();
    emit_json(j);
  } else {
    render_validation_text(doc.space, report);
  }
  return report.all_ok() ? 0 : 1;
}

int cmd_certify(const std::string& input, const std::string& phi_text,
                const std::optional<double>& alpha, const std::string& format) {
  const ParsedDocument doc = parse_space(read_file(input));
  const SelfMap& map = require_map(doc);
  const PhiSpec phi = parse_phi_spec(phi_text);

  if (alpha) {
    const auto violations = check_contraction(doc.space, map, phi, *alpha);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["phi"] = to_string(phi);
      j["alpha"] = *alpha;
      j["violations"] = violations_to_json(violations);
      j["ok"] = violations.empty();
      emit_json(j);
    } else {
      std::cout << "phi: " << to_string(phi) << "\n"
                << "alpha: " << format_number(*alpha) << "\n";
      render_triples_text(violations, "violations: " +
                                          std::to_string(violations.size()));
      std::cout << "verdict: "
                << (violations.empty() ? "inequality holds" : "inequality violated")
                << "\n";
    }
    return violations.empty() ? 0 : 1;
  }

  const ContractionCertificate cert = certify(doc.space, map, phi);
  if (format == "json") {
    emit_json(certificate_to_json(cert));
  } else {
    render_certificate_text(cert);
  }
  return cert.contracting ? 0 : 1;
}

int cmd_solve(const std::string& input, const std::string& phi_text,
              const std::string& start, double eps, std::size_t max_iter,
              const std::string& format) {
  const ParsedDocument doc = parse_space(read_file(input));
  const SelfMap& map = require_map(doc);
  const PhiSpec phi = parse_phi_spec(phi_text);
  if (!doc.space.contains(start)) {
    throw lookup_error("start point \"" + start + "\" is not in the space");
  }

  const ContractionCertificate cert = certify(doc.space, map, phi);
  if (!cert.contracting) {
    if (format == "json") {
      nlohmann::ordered_json j;
      j["certificate"] = certificate_to_json(cert);
      j["trace"] = nullptr;
      emit_json(j);
    } else {
      render_certificate_text(cert);
      std::cout << "verdict: not contracting; iteration refused\n";
    }
    return 1;
  }

  const FiniteTrace trace =
      picard_iterate(doc.space, map, start, cert, eps, max_iter);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["certificate"] = certificate_to_json(cert);
    j["trace"] = trace_to_json(trace);
    emit_json(j);
  } else {
    render_certificate_text(cert);
    render_trace_text(trace);
  }
  const bool positive =
      std::holds_alternative<FixedPointReached<std::string>>(trace.verdict) ||
      std::holds_alternative<ToleranceReached<std::string>>(trace.verdict);
  return positive ? 0 : 1;
}

int cmd_fixed_points(const std::string& input, const std::string& format) {
  const ParsedDocument doc = parse_space(read_file(input));
  const SelfMap& map = require_map(doc);
  const PeriodicityReport report = periodicity_report(doc.space, map);
  if (format == "json") {
    emit_json(periodicity_to_json(report));
  } else {
    render_periodicity_text(report);
  }
  return report.fixed_points.empty() ? 1 : 0;
}

int cmd_examples(const std::string& which, const std::string& format) {
  const ParsedDocument doc = (which == "2.1") ? example_2_1() : example_2_2();
  const SelfMap& map = require_map(doc);
  const MetricValidationReport validation = validate_metric(doc.space);
  const PeriodicityReport periodicity = periodicity_report(doc.space, map);

  // The functional each instance is known for: the max criterion for the
  // five-point instance, the squared-sum-of-roots values for the four-point
  // one.
  const PhiSpec highlight =
      (which == "2.1") ? PhiSpec::max() : PhiSpec::sqrt_sum_squared();
  const std::vector<PhiSpec> all = {PhiSpec::sum(), PhiSpec::max(),
                                    PhiSpec::pnorm(2),
                                    PhiSpec::sqrt_sum_squared()};

  std::vector<ContractionCertificate> certs;
  certs.reserve(all.size());
  for (const auto& phi : all) certs.push_back(certify(doc.space, map, phi));
  const auto rows = evaluate_triples(doc.space, map, highlight);

  if (format == "json") {
    nlohmann::ordered_json j;
    j["example"] = which;
    j["points"] = doc.space.labels();
    j["validation"] = validation_to_json(validation);
    j["certificates"] = nlohmann::ordered_json::array();
    for (const auto& cert : certs) {
      j["certificates"].push_back(certificate_to_json(cert));
    }
    j["triple_values"] = nlohmann::ordered_json::object();
    j["triple_values"]["phi"] = to_string(highlight);
    j["triple_values"]["rows"] = violations_to_json(rows);
    j["periodicity"] = periodicity_to_json(periodicity);
    emit_json(j);
  } else {
    std::cout << "example: " << which << "\n";
    std::cout << "points:";
    for (const auto& p : doc.space.labels()) std::cout << " " << p;
    std::cout << "\nmetric: " << (validation.all_ok() ? "valid" : "INVALID")
              << "\n\n";
    for (const auto& cert : certs) {
      render_certificate_text(cert);
      std::cout << "\n";
    }
    render_triples_text(rows, "triple values (phi=" + to_string(highlight) + "):");
    std::cout << "\n";
    render_periodicity_text(periodicity);
  }
  return 0;
}

int cmd_random(std::size_t n, std::uint64_t seed,
               const std::optional<std::string>& out) {
  const FiniteMetricSpace space = random_finite_metric(n, seed);
  const std::string doc = serialize_space(space);
  if (out) {
    std::ofstream f(*out, std::ios::binary);
    if (!f) throw error("cannot write output file: " + *out);
    f << doc;
  } else {
    std::cout << doc;
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"certification and fixed-point tooling for mappings contracting "
               "triangles on finite metric spaces"};
  app.require_subcommand(1);

  const auto add_format = [](CLI::App* sub, std::string& fmt) {
    sub->add_option("--format", fmt, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  // validate
  std::string v_input, v_format = "text";
  auto* validate = app.add_subcommand("validate", "check the metric axioms");
  validate->add_option("--input", v_input, "instance file")->required();
  add_format(validate, v_format);

  // certify
  std::string c_input, c_phi = "sum", c_format = "text";
  double c_alpha_value = 0.0;
  auto* certify_cmd =
      app.add_subcommand("certify", "compute the minimal contraction constant");
  certify_cmd->add_option("--input", c_input, "instance file")->required();
  certify_cmd->add_option("--phi", c_phi, "functional: sum|max|pnorm:<p>|sqrtsq");
  auto* alpha_opt = certify_cmd->add_option(
      "--alpha", c_alpha_value, "check the inequality at this constant");
  add_format(certify_cmd, c_format);

  // solve
  std::string s_input, s_phi = "sum", s_start, s_format = "text";
  double s_eps = 1e-6;
  std::size_t s_max_iter = kDefaultMaxIterations;
  auto* solve = app.add_subcommand("solve", "run the Picard iteration");
  solve->add_option("--input", s_input, "instance file")->required();
  solve->add_option("--phi", s_phi, "functional: sum|max|pnorm:<p>|sqrtsq");
  solve->add_option("--start", s_start, "start point label")->required();
  solve->add_option("--eps", s_eps, "stopping tolerance");
  solve->add_option("--max-iter", s_max_iter, "iteration budget");
  add_format(solve, s_format);

  // fixed-points
  std::string f_input, f_format = "text";
  auto* fixed = app.add_subcommand("fixed-points",
                                   "enumerate fixed and period-2 points");
  fixed->add_option("--input", f_input, "instance file")->required();
  add_format(fixed, f_format);

  // examples
  std::string e_which, e_format = "text";
  auto* examples = app.add_subcommand("examples", "run a bundled instance");
  examples->add_option("which", e_which, "2.1 or 2.2")
      ->required()
      ->check(CLI::IsMember({"2.1", "2.2"}));
  add_format(examples, e_format);

  // random
  std::size_t r_n = 0;
  std::uint64_t r_seed = 0;
  std::string r_out;
  auto* random_cmd =
      app.add_subcommand("random", "generate a random valid instance");
  random_cmd->add_option("--n", r_n, "number of points (>= 3)")->required();
  random_cmd->add_option("--seed", r_seed, "RNG seed")->required();
  auto* out_opt = random_cmd->add_option("--out", r_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(v_input, v_format);
    if (certify_cmd->parsed()) {
      std::optional<double> alpha;
      if (alpha_opt->count() > 0) alpha = c_alpha_value;
      return cmd_certify(c_input, c_phi, alpha, c_format);
    }
    if (solve->parsed()) {
      return cmd_solve(s_input, s_phi, s_start, s_eps, s_max_iter, s_format);
    }
    if (fixed->parsed()) return cmd_fixed_points(f_input, f_format);
    if (examples->parsed()) return cmd_examples(e_which, e_format);
    if (random_cmd->parsed()) {
      std::optional<std::string> out;
      if (out_opt->count() > 0) out = r_out;
      return cmd_random(r_n, r_seed, out);
    }
  } catch (const metric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
