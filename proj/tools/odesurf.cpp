#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "odesurf/errors.hpp"
#include "odesurf/expr.hpp"
#include "odesurf/integrability.hpp"
#include "odesurf/numerics.hpp"
#include "odesurf/region.hpp"
#include "odesurf/report.hpp"
#include "odesurf/surface.hpp"

namespace {

using nlohmann::ordered_json;
using namespace odesurf;

struct RunConfig {
  std::string phi_text;
  std::string epsilon_text;  // empty = no deformation
  std::string region_text = "-1,1,-1,1";
  int grid_n = 33;
  double zero_tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out_path;

  std::string mu_text;
  std::string symmetry_text;  // "xi;eta"
  std::string jacobi_text;    // "sigma;delta"

  double x0 = 0.0;
  double u0 = 0.0;
  std::optional<double> slope0;
  double x_end = 1.0;
  double step = 0.01;
};

Region parse_region(const RunConfig& cfg) {
  Region r;
  int n = std::sscanf(cfg.region_text.c_str(), "%lf,%lf,%lf,%lf", &r.x_min,
                      &r.x_max, &r.u_min, &r.u_max);
  if (n != 4)
    throw SyntaxError("--region wants xmin,xmax,umin,umax", 0);
  r.grid_n = cfg.grid_n;
  r.seed = cfg.seed;
  r.validate();
  return r;
}

std::pair<Expr, Expr> parse_pair(const std::string& text, const char* flag) {
  auto sep = text.find(';');
  if (sep == std::string::npos)
    throw SyntaxError(std::string(flag) + " wants two ';'-separated expressions", 0);
  return {parse(text.substr(0, sep)), parse(text.substr(sep + 1))};
}

void emit(const RunConfig& cfg, const ordered_json& report) {
  if (!cfg.out_path.empty()) {
    std::ofstream os(cfg.out_path);
    if (!os) throw Error("cannot open " + cfg.out_path);
    os << report.dump(2) << "\n";
  }
}

int cmd_analyze(const RunConfig& cfg) {
  OdeProblem p{parse(cfg.phi_text), parse_region(cfg)};
  Deformation d;
  if (!cfg.epsilon_text.empty()) d.epsilon = parse(cfg.epsilon_text);
  SurfaceData s = build_surface(p, d);
  CurvatureClass c = classify_curvature(s, cfg.zero_tol);

  ordered_json report = surface_to_json(s, c);
  emit(cfg, report);

  std::cout << "K = " << to_string(s.curvature) << "\n";
  switch (c.kind) {
    case CurvatureClass::Kind::Zero:
      std::cout << "classification: Zero (flat), max |K| = " << c.max_deviation << "\n";
      break;
    case CurvatureClass::Kind::Constant:
      std::cout << "classification: Constant k = " << c.k
                << ", max deviation = " << c.max_deviation << "\n";
      break;
    case CurvatureClass::Kind::NonConstant:
      std::cout << "classification: NonConstant, K in [" << c.min_value << ", "
                << c.max_value << "], mean " << c.mean_value << "\n";
      break;
  }
  return 0;
}

int cmd_integrate(const RunConfig& cfg) {
  OdeProblem p{parse(cfg.phi_text), parse_region(cfg)};
  Deformation d;
  if (!cfg.epsilon_text.empty()) d.epsilon = parse(cfg.epsilon_text);
  SurfaceData s = build_surface(p, d);
  CurvatureClass c = classify_curvature(s, cfg.zero_tol);

  if (c.kind == CurvatureClass::Kind::NonConstant) {
    ordered_json report;
    report["schema"] = 1;
    report["error"] = "not integrable by this tool: curvature is not constant";
    report["classification"] = classification_to_json(c);
    emit(cfg, report);
    std::cout << "not integrable by this tool: K_eps is non-constant, K in ["
              << c.min_value << ", " << c.max_value << "]\n";
    return 4;
  }

  IntegrationReport rep;
  if (c.kind == CurvatureClass::Kind::Zero && cfg.epsilon_text.empty()) {
    rep = flat_first_integral(p);
  } else {
    rep = constant_curvature_integrating_factor(p, d);
  }

  ordered_json report = integration_to_json(rep);
  report["classification"] = classification_to_json(c);
  emit(cfg, report);

  switch (rep.method) {
    case IntegrationMethod::FlatDirect:
      std::cout << "method: FlatDirect\n";
      break;
    case IntegrationMethod::ConstantCurvatureDeformation:
      std::cout << "method: ConstantCurvatureDeformation ("
                << (rep.branch == Branch::SVanishes ? "S_vanishes" : "S_nonvanishing")
                << ")\n";
      break;
    case IntegrationMethod::UserSuppliedMu:
      std::cout << "method: UserSuppliedMu\n";
      break;
  }
  if (rep.mu) std::cout << "mu = " << to_string(*rep.mu) << "\n";
  if (rep.first_integral)
    std::cout << "F = " << to_string(*rep.first_integral) << "\n";
  else if (rep.numeric_first_integral)
    std::cout << "F = (numeric quadrature from basepoint " << rep.basepoint_x
              << ", " << rep.basepoint_u << ")\n";
  std::cout << "closedness residual max = " << rep.residual_closedness << "\n";
  std::cout << "first-integral residual max = " << rep.residual_first_integral << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  OdeProblem p{parse(cfg.phi_text), parse_region(cfg)};
  ordered_json report;
  report["schema"] = 1;
  bool pass = true;

  if (!cfg.mu_text.empty()) {
    Expr mu = parse(cfg.mu_text);
    Expr r = closedness_residual(p.phi, mu);
    SweepStats st = residual_sweep(r, p.region);
    pass = st.max_abs <= cfg.zero_tol;
    report["check"] = "integrating_factor";
    report["mu"] = to_string(mu);
    report["residual"] = to_string(r);
    report["sweep"] = sweep_to_json(st);
    std::cout << "closedness residual max = " << st.max_abs << " at ("
              << st.argmax.x << ", " << st.argmax.u << ")\n";
  } else if (!cfg.symmetry_text.empty()) {
    auto [xi, eta] = parse_pair(cfg.symmetry_text, "--symmetry");
    SymmetryCheck sc = lie_symmetry_check(p.phi, {xi, eta}, p.region, cfg.zero_tol);
    pass = sc.is_symmetry;
    report["check"] = "lie_symmetry";
    report["xi"] = to_string(xi);
    report["eta"] = to_string(eta);
    report["is_symmetry"] = sc.is_symmetry;
    report["rho"] = to_string(sc.rho);
    report["evidence"] = sweep_to_json(sc.evidence);
    report["rho_crosscheck_max"] = sc.rho_crosscheck_max;
    std::cout << (sc.is_symmetry ? "symmetry" : "not a symmetry")
              << "; residual max = " << sc.evidence.max_abs << "\n";
    if (sc.is_symmetry) std::cout << "rho = " << to_string(sc.rho) << "\n";
  } else if (!cfg.jacobi_text.empty()) {
    auto [sigma, delta] = parse_pair(cfg.jacobi_text, "--jacobi");
    Expr eps = cfg.epsilon_text.empty() ? num(0.0) : parse(cfg.epsilon_text);
    auto [r1, r2] = jacobi_residuals(p.phi, eps, sigma, delta);
    SweepStats s1 = residual_sweep(r1, p.region);
    SweepStats s2 = residual_sweep(r2, p.region);
    pass = s1.max_abs <= cfg.zero_tol && s2.max_abs <= cfg.zero_tol;
    report["check"] = "jacobi_field";
    report["sigma"] = to_string(sigma);
    report["delta"] = to_string(delta);
    report["residual_A2_sigma"] = to_string(r1);
    report["residual_jacobi"] = to_string(r2);
    report["sweep_A2_sigma"] = sweep_to_json(s1);
    report["sweep_jacobi"] = sweep_to_json(s2);
    std::cout << "A^2(sigma) residual max = " << s1.max_abs << "\n";
    std::cout << "A^2(delta) + K delta residual max = " << s2.max_abs << "\n";
  } else {
    throw SyntaxError("verify wants one of --mu, --symmetry, --jacobi", 0);
  }

  report["verdict"] = pass ? "PASS" : "FAIL";
  emit(cfg, report);
  std::cout << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

int cmd_geodesic(const RunConfig& cfg) {
  OdeProblem p{parse(cfg.phi_text), parse_region(cfg)};
  double slope0 = cfg.slope0 ? *cfg.slope0 : eval(p.phi, cfg.x0, cfg.u0);
  Trajectory t =
      solve_pregeodesic(p, cfg.x0, cfg.u0, slope0, cfg.x_end, cfg.step);

  ordered_json report;
  report["schema"] = 1;
  report["phi"] = to_string(p.phi);
  report["x0"] = cfg.x0;
  report["u0"] = cfg.u0;
  report["slope0"] = slope0;
  report["x_end"] = cfg.x_end;
  report["step"] = t.step;
  report["method"] = t.method;
  report["samples"] = t.samples.size();
  report["final_u"] = t.samples.back().u;
  report["final_uprime"] = t.samples.back().uprime;
  emit(cfg, report);

  write_trajectory_csv(std::cout, t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Associated-surface analysis of u' = phi(x, u)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* c, bool need_phi = true) {
    c->add_option("--phi", cfg.phi_text, "right-hand side phi(x, u)")
        ->required(need_phi);
    c->add_option("--epsilon", cfg.epsilon_text, "deformation epsilon(x, u)");
    c->add_option("--region", cfg.region_text, "xmin,xmax,umin,umax");
    c->add_option("--grid", cfg.grid_n, "samples per axis");
    c->add_option("--zero-tol", cfg.zero_tol, "numeric zero threshold");
    c->add_option("--seed", cfg.seed, "seed for random sample points");
    c->add_option("--out", cfg.out_path, "write the JSON report here");
  };

  auto* analyze = app.add_subcommand("analyze", "curvature of the associated surface");
  add_common(analyze);

  auto* integrate = app.add_subcommand("integrate", "integrating factor / first integral");
  add_common(integrate);

  auto* verify = app.add_subcommand("verify", "residual checks for mu / symmetry / Jacobi data");
  add_common(verify);
  verify->add_option("--mu", cfg.mu_text, "candidate integrating factor");
  verify->add_option("--symmetry", cfg.symmetry_text, "candidate symmetry \"xi;eta\"");
  verify->add_option("--jacobi", cfg.jacobi_text, "candidate Jacobi data \"sigma;delta\"");

  auto* geodesic = app.add_subcommand("geodesic", "pregeodesic trajectory as CSV");
  add_common(geodesic);
  geodesic->add_option("--x0", cfg.x0, "initial x")->required();
  geodesic->add_option("--u0", cfg.u0, "initial u")->required();
  double slope0_value = 0.0;
  auto* slope_opt = geodesic->add_option("--slope0", slope0_value,
                                         "initial slope (default phi(x0, u0))");
  geodesic->add_option("--xend", cfg.x_end, "final x")->required();
  geodesic->add_option("--step", cfg.step, "RK4 step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (slope_opt->count() > 0) cfg.slope0 = slope0_value;
  if (cfg.zero_tol <= 0.0) {
    std::cerr << "error: --zero-tol must be positive\n";
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(cfg);
    if (app.got_subcommand(integrate)) return cmd_integrate(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(geodesic)) return cmd_geodesic(cfg);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RegionUnusable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotFlat& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NotConstantCurvature& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DeltaVanishesOnRegion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const VerificationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
