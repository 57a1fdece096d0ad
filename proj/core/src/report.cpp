#include "odesurf/report.hpp"

namespace odesurf {

using nlohmann::ordered_json;

ordered_json region_to_json(const Region& r) {
  return ordered_json{{"x_min", r.x_min}, {"x_max", r.x_max},
                      {"u_min", r.u_min}, {"u_max", r.u_max},
                      {"grid_n", r.grid_n}, {"seed", r.seed}};
}

ordered_json sweep_to_json(const SweepStats& s) {
  return ordered_json{{"max_abs", s.max_abs},
                      {"argmax", {s.argmax.x, s.argmax.u}},
                      {"mean_abs", s.mean_abs},
                      {"skipped", s.skipped},
                      {"evaluated", s.evaluated}};
}

ordered_json classification_to_json(const CurvatureClass& c) {
  ordered_json j;
  switch (c.kind) {
    case CurvatureClass::Kind::Zero:
      j["kind"] = "Zero";
      break;
    case CurvatureClass::Kind::Constant:
      j["kind"] = "Constant";
      j["k"] = c.k;
      break;
    case CurvatureClass::Kind::NonConstant:
      j["kind"] = "NonConstant";
      j["min"] = c.min_value;
      j["max"] = c.max_value;
      j["mean"] = c.mean_value;
      break;
  }
  j["max_deviation"] = c.max_deviation;
  j["samples_evaluated"] = c.sweep.evaluated;
  j["samples_skipped"] = c.sweep.skipped;
  return j;
}

ordered_json surface_to_json(const SurfaceData& s, const CurvatureClass& c) {
  return ordered_json{{"schema", 1},
                      {"phi", to_string(s.phi)},
                      {"epsilon", to_string(s.epsilon)},
                      {"region", region_to_json(s.region)},
                      {"E", to_string(s.E)},
                      {"F", to_string(s.F)},
                      {"G", to_string(s.G)},
                      {"delta_eps", to_string(s.delta_eps)},
                      {"curvature", to_string(s.curvature)},
                      {"classification", classification_to_json(c)}};
}

ordered_json integration_to_json(const IntegrationReport& r) {
  ordered_json j;
  j["schema"] = 1;
  switch (r.method) {
    case IntegrationMethod::FlatDirect:
      j["method"] = "FlatDirect";
      break;
    case IntegrationMethod::ConstantCurvatureDeformation:
      j["method"] = "ConstantCurvatureDeformation";
      break;
    case IntegrationMethod::UserSuppliedMu:
      j["method"] = "UserSuppliedMu";
      break;
  }
  switch (r.branch) {
    case Branch::None: j["branch"] = nullptr; break;
    case Branch::SVanishes: j["branch"] = "S_vanishes"; break;
    case Branch::SNonvanishing: j["branch"] = "S_nonvanishing"; break;
  }
  j["mu"] = r.mu ? ordered_json(to_string(*r.mu)) : ordered_json(nullptr);
  if (r.first_integral) {
    j["first_integral"] = to_string(*r.first_integral);
  } else if (r.numeric_first_integral) {
    j["first_integral"] = "numeric";
  } else {
    j["first_integral"] = nullptr;
  }
  j["delta_used"] = r.delta_used ? ordered_json(to_string(*r.delta_used))
                                 : ordered_json(nullptr);
  j["residual_closedness"] = r.residual_closedness;
  j["residual_first_integral"] = r.residual_first_integral;
  j["degenerate_first_integral"] = r.degenerate_first_integral;
  j["basepoint"] = {r.basepoint_x, r.basepoint_u};
  return j;
}

}  // namespace odesurf
