// Command-line front end: density/distance/qc evaluation, scalar field export,
// root constants, and the randomized verification suites.
//
// Exit codes: 0 success, 1 verification failures, 2 usage or input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypmetrics/constants.hpp"
#include "hypmetrics/density.hpp"
#include "hypmetrics/domain_io.hpp"
#include "hypmetrics/field.hpp"
#include "hypmetrics/geodesic.hpp"
#include "hypmetrics/geometry.hpp"
#include "hypmetrics/qcmaps.hpp"
#include "hypmetrics/verify.hpp"

namespace hm = hypmetrics;
using hm::Json;

namespace {

hm::Vector parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw hm::DomainError("coordinates_numeric",
                            "cannot parse coordinate '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
      ++pos;
    if (pos != item.size())
      throw hm::DomainError("coordinates_numeric",
                            "trailing characters in coordinate '" + item + "'");
    vals.push_back(v);
  }
  if (vals.size() < 2)
    throw hm::DomainError("coordinates_dim",
                          "a point needs at least two coordinates");
  hm::Vector x(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) x[static_cast<int>(i)] = vals[i];
  return x;
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw hm::DomainError("grid_counts", "cannot parse count '" + item + "'");
    }
  }
  return vals;
}

hm::DensityKind density_kind(const std::string& name) {
  if (name == "lambda") return hm::DensityKind::lambda;
  if (name == "lambda1") return hm::DensityKind::lambda_prime;
  if (name == "lambda2") return hm::DensityKind::lambda_pprime;
  throw hm::DomainError("kind_unknown", "unknown density kind '" + name + "'");
}

hm::MetricKind metric_kind(const std::string& name) {
  if (name == "d") return hm::MetricKind::d_lambda;
  if (name == "d1") return hm::MetricKind::d_lambda_prime;
  if (name == "d2") return hm::MetricKind::d_lambda_pprime;
  if (name == "quasihyperbolic") return hm::MetricKind::quasihyperbolic;
  throw hm::DomainError("kind_unknown", "unknown metric kind '" + name + "'");
}

void emit(const Json& j, bool quiet) {
  if (!quiet) std::cout << j.dump(2) << "\n";
}

struct CommonOpts {
  bool quiet = false;
  std::string output = "json";
};

int run_density(const std::string& domain_path, const std::string& point,
                const std::string& kind, int budget, std::uint64_t seed,
                const CommonOpts& common) {
  const hm::DomainSpec domain = hm::load_domain(domain_path);
  const hm::Vector z = parse_point(point);
  hm::SamplingBudget b;
  b.samples = budget;
  b.seed = seed;
  const hm::DensityValue val =
      hm::eval_density(domain, z, density_kind(kind), b);
  Json j{{"kind", kind},
         {"value", val.value},
         {"reciprocal", val.reciprocal},
         {"witness_a", hm::to_json(val.witness_a)},
         {"witness_b", hm::to_json(val.witness_b)},
         {"exceptional_midpoint", val.exceptional_midpoint},
         {"boundary_dist", hm::dist_to_complement(domain, z)},
         {"beta", hm::beta(domain, z)}};
  emit(j, common.quiet);
  return 0;
}

int run_distance(const std::string& domain_path, const std::string& from,
                 const std::string& to, const std::string& kind, double h,
                 int refinements, int budget, std::uint64_t seed,
                 const CommonOpts& common) {
  const hm::DomainSpec domain = hm::load_domain(domain_path);
  const hm::Vector z = parse_point(from);
  const hm::Vector w = parse_point(to);
  hm::GraphParams params;
  if (h > 0.0) params.h = h;
  if (refinements >= 0) params.refinements = refinements;
  params.budget.samples = budget;
  params.budget.seed = seed;
  const hm::DistanceResult res =
      hm::distance(domain, z, w, metric_kind(kind), params);
  Json path = Json::array();
  for (const hm::Vector& p : res.path) path.push_back(hm::to_json(p));
  Json j{{"kind", kind},
         {"value", res.value},
         {"refinement_level", res.refinement_level},
         {"is_upper_bound", res.is_upper_bound},
         {"path", path}};
  emit(j, common.quiet);
  return 0;
}

int run_qc(const std::string& map_path, const std::string& domain_path,
           const std::string& point, const std::string& from,
           const std::string& to, double h, int refinements, int budget,
           std::uint64_t seed, const CommonOpts& common) {
  const hm::DomainSpec domain = hm::load_domain(domain_path);
  const hm::QcMap map = hm::load_qcmap(map_path, domain.dim());
  const hm::Dilatation dil = hm::dilatation(map, domain.dim());
  Json dil_json{{"outer", dil.outer},
                {"inner", dil.inner},
                {"maximal", dil.maximal},
                {"alpha", dil.alpha}};
  if (!point.empty()) {
    const hm::Vector z = parse_point(point);
    hm::SamplingBudget b;
    b.samples = budget;
    b.seed = seed;
    const double ratio = hm::check_qc1(map, domain, z);
    Json j{{"mode", "pointwise"},
           {"ratio", ratio},
           {"image_point", hm::to_json(hm::apply(map, z))},
           {"dilatation", dil_json}};
    emit(j, common.quiet);
    return 0;
  }
  if (from.empty() || to.empty())
    throw hm::DomainError("qc_arguments",
                          "qc needs either --point or both --from and --to");
  const hm::Vector z = parse_point(from);
  const hm::Vector w = parse_point(to);
  hm::GraphParams params;
  if (h > 0.0) params.h = h;
  if (refinements >= 0) params.refinements = refinements;
  params.budget.samples = budget;
  params.budget.seed = seed;
  const hm::Qc2Result res = hm::check_qc2(map, domain, z, w, params);
  Json j{{"mode", "distance"},
         {"lhs", res.lhs},
         {"rhs_budget", res.rhs_budget},
         {"source_distance", res.source_distance},
         {"alpha", res.alpha},
         {"ratio", res.rhs_budget > 0.0 ? res.lhs / res.rhs_budget : 0.0},
         {"dilatation", dil_json}};
  emit(j, common.quiet);
  return 0;
}

int run_roots(const CommonOpts& common) {
  const auto root_json = [](const hm::RootResult& r) {
    return Json{{"value", r.value},
                {"residual", r.residual},
                {"iterations", r.iterations}};
  };
  Json j{{"t0", root_json(hm::solve_t0())},
         {"log_reciprocal", root_json(hm::solve_log_reciprocal())},
         {"midpoint", root_json(hm::solve_midpoint_eq())},
         {"planar_comparison_k", hm::planar_comparison_k()}};
  emit(j, common.quiet);
  return 0;
}

int run_field(const std::string& domain_path, const std::string& kind,
              const std::string& lo, const std::string& hi,
              const std::string& counts, int budget, std::uint64_t seed,
              const std::string& out_path, const CommonOpts& common) {
  const hm::DomainSpec domain = hm::load_domain(domain_path);
  hm::GridSpec grid;
  grid.lo = parse_point(lo);
  grid.hi = parse_point(hi);
  grid.counts = parse_counts(counts);
  hm::SamplingBudget b;
  b.samples = budget;
  b.seed = seed;
  const std::vector<hm::FieldRow> rows =
      hm::field(domain, density_kind(kind), grid, b);
  if (out_path.empty()) {
    hm::write_field_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out)
      throw hm::DomainError("output_unwritable",
                            "cannot open '" + out_path + "' for writing");
    hm::write_field_csv(out, rows);
    if (!common.quiet)
      std::cout << rows.size() << " rows written to " << out_path << "\n";
  }
  return 0;
}

Json report_json(const hm::VerifyReport& rep) {
  Json failures = Json::array();
  for (const hm::VerifyFailure& f : rep.failures) {
    Json detail = Json::parse(f.detail, nullptr, false);
    failures.push_back(Json{{"case", f.case_id},
                            {"expected", f.expected},
                            {"observed", f.observed},
                            {"detail", detail.is_discarded() ? Json(f.detail)
                                                             : detail}});
  }
  return Json{{"suite", rep.suite},
              {"cases", rep.cases},
              {"failures", failures},
              {"extremes", rep.extremes},
              {"passed", rep.passed()}};
}

int run_verify(std::uint64_t seed, const std::string& suite,
               const CommonOpts& common) {
  std::vector<hm::VerifyReport> reports;
  if (suite.empty()) {
    reports = hm::verify_all(seed);
  } else if (suite == "density-chain") {
    reports.push_back(hm::verify_density_chain(seed, 100));
  } else if (suite == "domain-monotonicity") {
    reports.push_back(hm::verify_domain_monotonicity(seed, 40));
  } else if (suite == "small-ball-example") {
    reports.push_back(hm::verify_small_ball_example());
  } else if (suite == "two-point-example") {
    reports.push_back(hm::verify_two_point_example());
  } else if (suite == "distance-chain") {
    reports.push_back(hm::verify_distance_chain(seed, 6));
  } else if (suite == "witness-classification") {
    reports.push_back(hm::verify_witness_classification(seed, 60));
  } else if (suite == "density-continuity") {
    reports.push_back(hm::verify_density_continuity(seed, 100));
  } else if (suite == "objective-monotonicity") {
    reports.push_back(hm::verify_objective_monotonicity(seed, 10000));
  } else if (suite == "disk-sandwich") {
    reports.push_back(hm::verify_disk_sandwich(200, seed));
  } else if (suite == "qc-pointwise") {
    reports.push_back(hm::verify_qc_pointwise(seed, 30));
  } else if (suite == "qc-distance") {
    reports.push_back(hm::verify_qc_distance(seed, 4));
  } else if (suite == "roots") {
    reports.push_back(hm::verify_roots());
  } else {
    throw hm::DomainError("suite_unknown", "unknown suite '" + suite + "'");
  }

  bool all_passed = true;
  if (common.output == "json") {
    Json arr = Json::array();
    for (const hm::VerifyReport& rep : reports) {
      arr.push_back(report_json(rep));
      all_passed = all_passed && rep.passed();
    }
    emit(arr, common.quiet);
  } else {
    for (const hm::VerifyReport& rep : reports) {
      all_passed = all_passed && rep.passed();
      if (!common.quiet) {
        std::cout << (rep.passed() ? "[PASS] " : "[FAIL] ") << rep.suite
                  << " (" << rep.cases << " cases";
        if (!rep.failures.empty())
          std::cout << ", " << rep.failures.size() << " failures";
        std::cout << ")\n";
        for (const hm::VerifyFailure& f : rep.failures)
          std::cout << "    " << f.case_id << ": expected " << f.expected
                    << ", observed " << f.observed << "\n";
      }
    }
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic-type metric densities, distances, and checks"};
  app.require_subcommand(0, 1);
  // free the short -h for the lattice-spacing option below
  app.set_help_flag("--help", "print this help message and exit");
  // let --quiet/--output appear after a subcommand too
  app.fallthrough();
  CommonOpts common;
  app.add_flag("--quiet", common.quiet, "suppress normal output");
  app.add_option("--output", common.output, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string domain_path, map_path, point, from, to;
  std::string kind = "lambda";
  std::string metric = "d";
  std::string lo, hi, counts, out_path, suite;
  int budget = 2048;
  int refinements = -1;
  double h = 0.0;
  std::uint64_t seed = 0;

  CLI::App* density = app.add_subcommand("density", "evaluate a density at a point");
  density->add_option("--domain", domain_path, "domain JSON file")->required();
  density->add_option("--point", point, "comma-separated coordinates")->required();
  density->add_option("--kind", kind, "lambda|lambda1|lambda2")
      ->check(CLI::IsMember({"lambda", "lambda1", "lambda2"}));
  density->add_option("--budget", budget, "search budget (samples)");
  density->add_option("--seed", seed, "search seed");

  CLI::App* dist = app.add_subcommand("distance", "integrated distance between two points");
  dist->set_help_flag("--help", "print help");
  dist->add_option("--domain", domain_path, "domain JSON file")->required();
  dist->add_option("--from", from, "start point")->required();
  dist->add_option("--to", to, "end point")->required();
  dist->add_option("--kind", metric, "d|d1|d2|quasihyperbolic")
      ->check(CLI::IsMember({"d", "d1", "d2", "quasihyperbolic"}));
  dist->add_option("--h", h, "initial lattice spacing");
  dist->add_option("--refinements", refinements, "refinement rounds");
  dist->add_option("--budget", budget, "density search budget per quadrature node");
  dist->add_option("--seed", seed, "search seed");

  CLI::App* qc = app.add_subcommand("qc", "distortion checks for a quasiconformal map");
  qc->set_help_flag("--help", "print help");
  qc->add_option("--map", map_path, "map JSON file")->required();
  qc->add_option("--domain", domain_path, "domain JSON file")->required();
  qc->add_option("--point", point, "pointwise mode: comma-separated coordinates");
  qc->add_option("--from", from, "distance mode: start point");
  qc->add_option("--to", to, "distance mode: end point");
  qc->add_option("--h", h, "initial lattice spacing (distance mode)");
  qc->add_option("--refinements", refinements, "refinement rounds (distance mode)");
  qc->add_option("--budget", budget, "density search budget");
  qc->add_option("--seed", seed, "search seed");

  CLI::App* roots = app.add_subcommand("roots", "solved constants with residuals");
  (void)roots;

  CLI::App* fieldcmd = app.add_subcommand("field", "density values on a grid, CSV");
  fieldcmd->add_option("--domain", domain_path, "domain JSON file")->required();
  fieldcmd->add_option("--kind", kind, "lambda|lambda1|lambda2")
      ->check(CLI::IsMember({"lambda", "lambda1", "lambda2"}));
  fieldcmd->add_option("--lo", lo, "grid corner, comma-separated")->required();
  fieldcmd->add_option("--hi", hi, "opposite grid corner")->required();
  fieldcmd->add_option("--counts", counts, "points per axis, comma-separated")->required();
  fieldcmd->add_option("--budget", budget, "search budget per grid point");
  fieldcmd->add_option("--seed", seed, "search seed");
  fieldcmd->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run randomized verification suites");
  verify->add_option("--seed", seed, "base seed for all suites");
  verify->add_option("--suite", suite,
                     "run a single suite (default: all twelve)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (density->parsed())
      return run_density(domain_path, point, kind, budget, seed, common);
    if (dist->parsed())
      return run_distance(domain_path, from, to, metric, h, refinements,
                          budget, seed, common);
    if (qc->parsed())
      return run_qc(map_path, domain_path, point, from, to, h, refinements,
                    budget, seed, common);
    if (roots->parsed()) return run_roots(common);
    if (fieldcmd->parsed())
      return run_field(domain_path, kind, lo, hi, counts, budget, seed,
                       out_path, common);
    if (verify->parsed()) return run_verify(seed, suite, common);
    std::cout << app.help();
    return 2;
  } catch (const hm::DomainError& e) {
    std::cerr << "error [" << e.invariant << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
