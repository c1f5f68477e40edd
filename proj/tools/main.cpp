// eink: invariant reports and verification suites for modified Einstein tensors
// on built-in metric families.
//
// Exit codes: 0 success, 1 configuration error, 2 verification failures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eink/families.hpp"
#include "eink/integrals.hpp"
#include "eink/invariants.hpp"
#include "eink/serialize.hpp"
#include "eink/verify.hpp"

namespace {

using namespace eink;

struct CommonOpts {
  std::string output;
  std::string format = "json";
  int grid = 48;
  std::uint64_t seed = 42;
};

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output file '" + opts.output + "'");
  out << text;
}

FamilyDescriptor descriptor_from_flags(const std::string& family,
                                       const std::map<std::string, double>& given) {
  FamilyDescriptor d;
  d.name = family_from_name(family);
  d.params = given;
  return d;
}

int run_report(const CommonOpts& opts, const FamilyDescriptor& d,
               const std::vector<double>& ks) {
  const FamilyInstance inst = make_family(d);
  InvariantReport rep;
  std::vector<std::pair<double, double>> k_eigs;
  if (inst.field) {
    const GridSample scan = make_scan_grid(inst.field->chart, opts.grid);
    rep = invariant_report(*inst.field, scan, true);
    for (double k : ks) {
      double worst = std::numeric_limits<double>::infinity();
      VecXd x;
      for (std::size_t i = 0; i < scan.size(); ++i) {
        scan.point_at(i, x);
        const CurvatureData c = curvature_at(*inst.field, x);
        worst = std::min(worst,
                         spectrum_rel(ein_k(point_data(c), k), c.g).minCoeff());
      }
      k_eigs.emplace_back(k, worst);
    }
  } else {
    const PointData p = inst.ref.point();
    rep.ein_upper = ein_pointwise(p);
    rep.ein_lower = ein_lower_pointwise(p);
    rep.scal_min = rep.scal_max = inst.ref.scal;
    VecXd rho = spectrum_rel({p.ric}, p.g);
    rep.rho_min = rho[0];
    rep.rho_max = rho[p.dim() - 1];
    rep.grid = 0;  // closed form
    rep.delta_upper = 0.0;
    rep.delta_lower = 0.0;
    for (double k : ks) k_eigs.emplace_back(k, inst.ref.ein_min_eig(k));
  }
  if (opts.format == "csv")
    emit(opts, report_csv_header() + "\n" + report_to_csv(d, rep, k_eigs));
  else
    emit(opts, report_to_json(d, rep, k_eigs));
  return 0;
}

int run_berger_table(const CommonOpts& opts, int paper_n, const std::vector<double>& ts,
                     bool numeric) {
  std::ostringstream os;
  os.precision(12);
  const bool chart = numeric && paper_n == 1;
  os << "n,t,ein_upper,ein_lower";
  if (chart) os << ",chart_ein_upper,chart_ein_lower,grid";
  os << "\n";
  for (double t : ts) {
    const ReferenceData ref =
        make_family({Family::berger, {{"n", double(paper_n)}, {"t", t}}}).ref;
    os << paper_n << "," << t << "," << ref.ein_upper() << "," << ref.ein_lower().str();
    if (chart) {
      const MetricField field = canonical_variation_s3(t);
      const InvariantReport rep =
          invariant_report(field, make_scan_grid(field.chart, opts.grid), false);
      os << "," << rep.ein_upper << "," << rep.ein_lower.str() << "," << opts.grid;
    }
    os << "\n";
  }
  emit(opts, os.str());
  return 0;
}

int emit_suites(const CommonOpts& opts, const std::vector<SuiteResult>& suites) {
  if (opts.format == "csv")
    emit(opts, checks_to_csv(suites));
  else
    emit(opts, suites_to_json(suites));
  int failures = 0;
  for (const auto& s : suites) {
    int bad = 0;
    for (const auto& c : s.checks)
      if (!c.pass) ++bad;
    failures += bad;
    std::fprintf(stderr, "[%s] %zu checks, %d failures\n", s.suite.c_str(),
                 s.checks.size(), bad);
  }
  return failures == 0 ? 0 : 2;
}

int run_tube_command(const CommonOpts& opts, const std::string& ambient, double radius,
                     const std::vector<double>& rs) {
  std::ostringstream os;
  os.precision(12);
  os << "[";
  bool first = true;
  for (double r : rs) {
    if (!first) os << ",";
    first = false;
    if (ambient == "sphere5") {
      const TubeScalarReport rep = tube_total_scalar({TubeAmbient::sphere5, radius, r}, 16);
      os << "\n {\"ambient\":\"sphere5\",\"radius\":" << radius << ",\"r\":" << r
         << ",\"totalscal_numeric\":" << rep.numeric
         << ",\"totalscal_flat\":" << rep.flat_reference
         << ",\"solid_numeric\":" << rep.solid_numeric
         << ",\"solid_flat\":" << rep.solid_flat << "}";
    } else {
      const TubeAmbient amb =
          ambient == "flat3" ? TubeAmbient::flat3 : TubeAmbient::sphere3;
      const TubeVolumeReport rep = tube_volume({amb, radius, r}, opts.grid);
      os << "\n {\"ambient\":\"" << ambient << "\",\"radius\":" << radius
         << ",\"r\":" << r << ",\"hyp_numeric\":" << rep.hyp_numeric
         << ",\"hyp_flat\":" << rep.hyp_flat
         << ",\"solid_numeric\":" << rep.solid_numeric
         << ",\"solid_flat\":" << rep.solid_flat
         << ",\"hotelling_prediction\":" << rep.hotelling_prediction << "}";
    }
  }
  os << "\n]\n";
  emit(opts, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modified Einstein tensor workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts opts;
  app.add_option("--output", opts.output, "write the report to this path (default stdout)");
  app.add_option("--format", opts.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--grid", opts.grid, "points per axis (>= 8)")->check(CLI::Range(8, 4096));
  app.add_option("--seed", opts.seed, "PRNG seed for randomized suites");

  // report
  auto* report = app.add_subcommand("report", "invariant report for a built-in family");
  std::string family = "sphere";
  report->add_option("--family", family, "sphere|torus|hyperbolic|berger|product|cylinder_model|spaceform_product")
      ->required();
  std::map<std::string, std::optional<double>> flag_params;
  for (const char* key : {"n", "t", "radius", "lambda", "p", "q", "mu", "period"})
    flag_params[key] = std::nullopt;
  std::vector<CLI::Option*> param_opts;
  for (auto& [key, slot] : flag_params)
    report->add_option_function<double>(
        "--" + key, [&slot = slot](double v) { slot = v; }, "family parameter " + key);
  std::vector<double> ks;
  report->add_option("--k", ks, "k values for Ein_k minimum-eigenvalue rows")
      ->delimiter(',');

  // berger-table
  auto* berger = app.add_subcommand("berger-table", "five-regime invariant table");
  int paper_n = 1;
  std::vector<double> ts;
  bool no_chart = false;
  berger->add_option("--n", paper_n, "base complex dimension (sphere dim 2n+1)")
      ->check(CLI::Range(1, 8));
  berger->add_option("--t", ts, "comma-separated canonical-variation parameters")
      ->required()
      ->delimiter(',');
  berger->add_flag("--no-chart", no_chart, "skip the numerical chart columns");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  int dim = 0;
  int samples = 10000;
  verify->add_option("--suite", suite,
                     "identities|implications|cone|mkl|gauss-bonnet|gradient|tube|berger|spheres|families|all");
  verify->add_option("--dim", dim, "dimension (0 = 3..6)")->check(CLI::Range(0, 8));
  verify->add_option("--samples", samples, "random samples per check")
      ->check(CLI::PositiveNumber);

  // gauss-bonnet
  app.add_subcommand("gauss-bonnet", "Euler characteristic and signature-bound checks");

  // tube
  auto* tube = app.add_subcommand("tube", "tube volume / total scalar comparisons");
  std::string ambient = "sphere3";
  double tube_radius = 1.0;
  std::vector<double> rs = {0.3, 0.2, 0.1};
  tube->add_option("--ambient", ambient, "sphere3|flat3|sphere5")
      ->check(CLI::IsMember({"sphere3", "flat3", "sphere5"}));
  tube->add_option("--radius", tube_radius, "ambient radius")->check(CLI::PositiveNumber);
  tube->add_option("--r", rs, "comma-separated tube radii")->delimiter(',');

  // gradient
  auto* gradient = app.add_subcommand("gradient", "variational identity residuals");
  std::vector<double> grad_ks = {0.5, 1.0, 1.5, 2.0, 2.5};
  gradient->add_option("--k", grad_ks, "comma-separated k values in (0, 3)")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    for (double k : ks)
      if (!std::isfinite(k)) throw std::invalid_argument("k values must be finite");

    if (report->parsed()) {
      std::map<std::string, double> params;
      for (const auto& [key, slot] : flag_params)
        if (slot) params[key] = *slot;
      return run_report(opts, descriptor_from_flags(family, params), ks);
    }
    if (berger->parsed()) {
      if (opts.format == "json")
        opts.format = "csv";  // table command is CSV-shaped
      return run_berger_table(opts, paper_n, ts, !no_chart);
    }
    if (verify->parsed())
      return emit_suites(opts, run_suites(suite, dim, samples, opts.seed, opts.grid));
    if (app.get_subcommand("gauss-bonnet")->parsed())
      return emit_suites(opts, {run_gauss_bonnet_suite(opts.grid)});
    if (tube->parsed()) return run_tube_command(opts, ambient, tube_radius, rs);
    if (gradient->parsed())
      return emit_suites(opts, {run_gradient_suite(grad_ks, opts.grid, opts.seed)});
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
