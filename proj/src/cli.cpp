#include "relspec/cli.hpp"

#include <CLI11.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "relspec/banded.hpp"
#include "relspec/io.hpp"
#include "relspec/spectra.hpp"
#include "relspec/verify.hpp"

namespace relspec::cli {

namespace {

using io::json;

std::vector<double> number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError(std::string(what) + ": bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Bounds parse_bounds(const std::string& text) {
  const auto v = number_list(text, "--bounds");
  if (v.size() != 4) throw InputError("--bounds expects re0,re1,im0,im1");
  Bounds b{v[0], v[1], v[2], v[3]};
  b.validate();
  return b;
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto v = number_list(text, "--res");
  if (v.empty() || v.size() > 2) throw InputError("--res expects nx,ny");
  for (const double x : v) {
    if (x != std::floor(x) || x < 1 || x > 1e6) throw InputError("--res entries must be positive integers");
  }
  return {static_cast<int>(v[0]), static_cast<int>(v.size() == 2 ? v[1] : v[0])};
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  for (const double x : number_list(text, "--trunc")) {
    if (x != std::floor(x) || x < 1 || x > 1e5) throw InputError("--trunc entries must be positive integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::string summary_path_for(const std::string& csv) {
  const auto dot = csv.rfind('.');
  const auto slash = csv.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? csv.substr(0, dot) : csv) + ".summary.json";
}

struct Options {
  std::string input;
  std::string out;
  std::string summary;
  std::string bounds = "-2,2,-2,2";
  std::string res = "128,128";
  std::string lambda;
  std::string mu;
  std::string suite;
  std::string trunc;
  std::uint64_t seed = 0;
  std::int64_t trials = 100;
  unsigned threads = 0;
};

int cmd_classify(const Options& o, std::ostream& out) {
  const Relation t = io::relation_from_json(io::read_json_file(o.input));
  if (!t.square()) throw InputError("classify: relation must be square (dim_x == dim_y)");
  json points = json::array();
  if (!o.lambda.empty()) {
    for (const cplx l : io::parse_complex_list(o.lambda)) {
      const PointClass pc = classify_point(t, l);
      points.push_back({{"lambda", io::complex_to_json(l)},
                        {"fredholm", io::fredholm_to_json(pc.fredholm)},
                        {"in_resolvent", pc.in_resolvent}});
    }
  }
  const FiniteEssentialSpectra ess = finite_essential_spectra(t);
  json report = {{"dim_x", t.dim_x()},
                 {"dim_y", t.dim_y()},
                 {"graph_dim", t.graph().dim()},
                 {"spectrum", io::spectrum_to_json(spectrum(t))},
                 {"essential", {{"e1_e2_e3", "empty"},
                                {"e4", ess.e4_all_of_C ? "all_of_C" : "empty"},
                                {"e5", ess.e5_all_of_C ? "all_of_C" : "empty"}}},
                 {"points", points}};
  emit(o.out, io::dump(report), out);
  return kExitOk;
}

int cmd_essential(const Options& o, std::ostream& out) {
  const BandedModel m = io::model_from_json(io::read_json_file(o.input));
  const Bounds b = parse_bounds(o.bounds);
  const auto [nx, ny] = parse_resolution(o.res);
  RegionOptions opt;
  opt.threads = o.threads;
  if (!o.trunc.empty()) opt.trunc_sizes = parse_sizes(o.trunc);
  const RegionGrid g = essential_region(m, b, nx, ny, opt);
  emit(o.out, io::grid_csv(g), out);
  std::string summary = o.summary;
  if (summary.empty() && !o.out.empty()) summary = summary_path_for(o.out);
  if (!summary.empty()) io::write_text_file(summary, io::dump(io::grid_summary(g)));
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.suite.empty()) throw InputError("verify: --suite is required");
  const SuiteReport r = run_suite(o.suite, o.seed, o.trials, o.threads);
  emit(o.out, io::dump(report_to_json(r)), out);
  return r.pass() ? kExitOk : kExitSuiteFailure;
}

int cmd_mobius(const Options& o, std::ostream& out) {
  if (o.mu.empty()) throw InputError("mobius: --mu is required");
  const cplx mu = io::parse_complex(o.mu);
  const json in = io::read_json_file(o.input);
  if (in.is_object() && in.contains("space")) {
    const BandedModel m = io::model_from_json(in);
    emit(o.out, io::dump(io::model_to_json(mobius_laurent(m, mu))), out);
    return kExitOk;
  }
  const Relation t = io::relation_from_json(in);
  json report = {{"mu", io::complex_to_json(mu)},
                 {"resolvent", io::relation_to_json(mobius_resolvent(t, mu))}};
  json checks = json::array();
  if (!o.lambda.empty()) {
    for (const cplx l : io::parse_complex_list(o.lambda)) {
      const FactorCheck f = mobius_factor_check(t, mu, l);
      checks.push_back({{"lambda", io::complex_to_json(l)}, {"holds", f.holds}, {"residual", f.residual}});
    }
  }
  report["factorization"] = checks;
  emit(o.out, io::dump(report), out);
  return kExitOk;
}

int cmd_perturb(const Options& o, std::ostream& out) {
  const Relation t = io::relation_from_json(io::read_json_file(o.input));
  const Relation s = gen_small_perturbation(t, o.seed);
  const Relation u = add(t, s);
  json report = {{"S", io::relation_to_json(s)},
                 {"T_plus_S", io::relation_to_json(u)},
                 {"fredholm_T", io::fredholm_to_json(fredholm(t))},
                 {"fredholm_T_plus_S", io::fredholm_to_json(fredholm(u))},
                 {"rel_norm_S", rel_norm(s)},
                 {"min_modulus_T", min_modulus(t)}};
  emit(o.out, io::dump(report), out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear relations, Fredholm classification and essential spectra of banded models"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "Fredholm data of lambda - T and the spectrum of T");
  classify->add_option("--input", o.input, "Relation JSON")->required();
  classify->add_option("--lambda", o.lambda, "Comma-separated complex points, e.g. 1,5,0.5+1i");
  classify->add_option("--out", o.out, "Output JSON (default: stdout)");

  auto* essential = app.add_subcommand("essential", "Rasterize the essential spectra of a banded model");
  essential->add_option("--input", o.input, "Model JSON")->required();
  essential->add_option("--bounds", o.bounds, "re0,re1,im0,im1");
  essential->add_option("--res", o.res, "nx,ny (each 32..2048)");
  essential->add_option("--out", o.out, "Output CSV (default: stdout)");
  essential->add_option("--summary", o.summary, "Summary JSON (default: next to --out)");
  essential->add_option("--trunc", o.trunc, "Truncation sizes for eigenvalue detection");
  essential->add_option("--threads", o.threads, "Worker threads (0: RELSPEC_THREADS or all cores)");

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", o.suite, "Suite name or 'all'")->required();
  verify->add_option("--seed", o.seed, "Seed");
  verify->add_option("--trials", o.trials, "Trials per suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", o.out, "Output JSON (default: stdout)");
  verify->add_option("--threads", o.threads, "Worker threads (0: RELSPEC_THREADS or all cores)");

  auto* mobius = app.add_subcommand("mobius", "Resolvent relation T_mu, or T_mu of a Laurent model");
  mobius->add_option("--input", o.input, "Relation or model JSON")->required();
  mobius->add_option("--mu", o.mu, "Point of the resolvent set")->required();
  mobius->add_option("--lambda", o.lambda, "Points for the factorization check");
  mobius->add_option("--out", o.out, "Output JSON (default: stdout)");

  auto* perturb = app.add_subcommand("perturb", "Draw a small perturbation S of T");
  perturb->add_option("--input", o.input, "Relation JSON")->required();
  perturb->add_option("--seed", o.seed, "Seed");
  perturb->add_option("--out", o.out, "Output JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) return cmd_classify(o, out);
    if (*essential) return cmd_essential(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*mobius) return cmd_mobius(o, out);
    if (*perturb) return cmd_perturb(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace relspec::cli
