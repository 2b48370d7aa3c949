#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gauge/dominance.hpp"
#include "gauge/duality.hpp"
#include "gauge/io.hpp"
#include "gauge/norms.hpp"
#include "gauge/verify.hpp"

namespace {

using namespace gauge;

struct CommonOpts {
  std::string matrix_path, step_path, simple_path;
  std::string spec_text;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 42;
  bool seed_given = false;
  int budget = 4000;
  double tol = 0.01;
};

void add_operand_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--matrix", o.matrix_path, "matrix operand (.json or .csv)");
  cmd->add_option("--step", o.step_path, "step-function operand (.json)");
  cmd->add_option("--simple", o.simple_path, "simple-operator operand (.json)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
  cmd->add_option("--format", o.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_seed_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "random seed")->each([&o](const std::string&) {
    o.seed_given = true;
  });
  cmd->add_option("--budget", o.budget, "sampling budget");
}

// GAUGENORM_SEED overrides the built-in default but never an explicit --seed.
void resolve_seed(CommonOpts& o) {
  if (o.seed_given) return;
  if (const char* env = std::getenv("GAUGENORM_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw parameter_error("GAUGENORM_SEED must be an integer");
    }
  }
}

SNumberCurve curve_from_flags(const CommonOpts& o) {
  int given = !o.matrix_path.empty() + !o.step_path.empty() + !o.simple_path.empty();
  if (given != 1)
    throw parameter_error("exactly one of --matrix/--step/--simple is required");
  if (!o.matrix_path.empty()) return mu_of_matrix(load_matrix(o.matrix_path));
  if (!o.step_path.empty()) return mu_of_step(load_step(o.step_path));
  return mu_of_simple(load_simple(o.simple_path));
}

void emit(const CommonOpts& o, const std::string& doc) {
  if (o.out_path.empty()) {
    std::cout << doc << "\n";
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw input_error(o.out_path + ": cannot open for writing");
  out << doc << "\n";
}

int run_verify(const CommonOpts& o, bool budget_given, bool tol_given) {
  VerifyOptions vo;
  vo.seed = o.seed;
  if (tol_given) vo.sampled_tol = o.tol;
  if (budget_given) vo.budget_override = o.budget;
  std::vector<CheckResult> checks = run_verification(vo);

  int failed = 0;
  std::ostringstream json, csv;
  json << "{\"checks\": [";
  csv << "name,passed,trials,max_deviation,elapsed_seconds\n";
  for (size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& c = checks[i];
    if (!c.passed) ++failed;
    std::fprintf(stderr, "%-28s %s  trials=%-6ld dev=%.3g  %.2fs\n",
                 c.name.c_str(), c.passed ? "pass" : "FAIL", c.trials,
                 c.max_deviation, c.elapsed_seconds);
    json << (i ? ", " : "") << "{\"name\": \"" << c.name << "\", \"passed\": "
         << (c.passed ? "true" : "false") << ", \"trials\": " << c.trials
         << ", \"max_deviation\": " << format_number(c.max_deviation)
         << ", \"elapsed_seconds\": " << format_number(c.elapsed_seconds)
         << ", \"detail\": \"" << c.detail << "\"}";
    csv << c.name << "," << (c.passed ? "true" : "false") << "," << c.trials
        << "," << format_number(c.max_deviation) << ","
        << format_number(c.elapsed_seconds) << "\n";
  }
  json << "], \"passed\": " << (checks.size() - failed)
       << ", \"failed\": " << failed << "}";
  emit(o, o.format == "csv" ? csv.str() : json.str());
  return failed == 0 ? 0 : 1;
}

int dispatch(int argc, char** argv) {
  CLI::App app{
      "gaugenorm: s-number curves, Ky Fan / gauge / Lp norms, dual norms, "
      "majorization checks and a property verification suite for complex "
      "matrices and step functions"};
  app.require_subcommand(1);
  CommonOpts o;

  auto* snumbers = app.add_subcommand("snumbers", "s-number curve of an operand");
  add_operand_flags(snumbers, o);
  add_output_flags(snumbers, o);

  auto* norm = app.add_subcommand("norm", "evaluate a norm on an operand");
  add_operand_flags(norm, o);
  add_output_flags(norm, o);
  norm->add_option("--spec", o.spec_text, "norm spec")->required();

  auto* dual = app.add_subcommand("dual", "dual norm of a simple operator");
  dual->add_option("--simple", o.simple_path, "simple operator (.json)")->required();
  dual->add_option("--spec", o.spec_text, "norm spec")->required();
  bool second = false;
  dual->add_flag("--second", second, "evaluate the second dual instead");
  add_output_flags(dual, o);
  add_seed_flags(dual, o);

  auto* dominate =
      app.add_subcommand("dominate", "Ky Fan dominance of --left by --right");
  std::string left_path, right_path;
  dominate->add_option("--left", left_path, "left operand")->required();
  dominate->add_option("--right", right_path, "right operand")->required();
  int family = 0;
  dominate->add_option("--family", family,
                       "also test this many random gauge norms when dominated");
  add_output_flags(dominate, o);
  add_seed_flags(dominate, o);

  auto* reconstruct = app.add_subcommand(
      "reconstruct", "rebuild a norm value from pairings against its dual ball");
  add_operand_flags(reconstruct, o);
  reconstruct->add_option("--spec", o.spec_text, "norm spec")->required();
  add_output_flags(reconstruct, o);
  add_seed_flags(reconstruct, o);

  auto* verify = app.add_subcommand("verify", "run the property suite");
  add_output_flags(verify, o);
  add_seed_flags(verify, o);
  auto* tol_opt =
      verify->add_option("--tol", o.tol, "sampled-agreement tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, returns 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }
  resolve_seed(o);

  if (snumbers->parsed()) {
    SNumberCurve mu = curve_from_flags(o);
    emit(o, o.format == "csv" ? curve_to_csv(mu) : curve_to_json(mu));
    return 0;
  }
  if (norm->parsed()) {
    NormSpec spec = NormSpec::parse(o.spec_text);
    double value = evaluate_norm(spec, curve_from_flags(o));
    emit(o, o.format == "csv"
                ? "value," + format_number(value) + "\n"
                : "{\"value\": " + format_number(value) + "}");
    return 0;
  }
  if (dual->parsed()) {
    NormSpec spec = NormSpec::parse(o.spec_text);
    SimpleOperator a = load_simple(o.simple_path);
    DualEstimate est = second ? second_dual(a, spec, o.budget, o.seed)
                              : dual_norm(a, spec, o.budget, o.seed);
    emit(o, o.format == "csv" ? dual_estimate_to_csv(est)
                              : dual_estimate_to_json(est));
    return 0;
  }
  if (dominate->parsed()) {
    SNumberCurve lhs = load_operand(left_path).curve();
    SNumberCurve rhs = load_operand(right_path).curve();
    DominanceReport rep = ky_fan_dominates(lhs, rhs);
    if (family > 0 && rep.dominates)
      rep = dominance_transfer(lhs, rhs, family, o.seed);
    emit(o, o.format == "csv" ? dominance_report_to_csv(rep)
                              : dominance_report_to_json(rep));
    return 0;
  }
  if (reconstruct->parsed()) {
    NormSpec spec = NormSpec::parse(o.spec_text);
    auto [estimate, truth] =
        reconstruct_norm(curve_from_flags(o), spec, o.budget, o.seed);
    emit(o, o.format == "csv"
                ? "estimate," + format_number(estimate) + "\ntruth," +
                      format_number(truth) + "\n"
                : "{\"estimate\": " + format_number(estimate) +
                      ", \"truth\": " + format_number(truth) + "}");
    return 0;
  }
  return run_verify(o, verify->count("--budget") > 0, tol_opt->count() > 0);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
