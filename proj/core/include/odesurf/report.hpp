#ifndef ODESURF_REPORT_HPP
#define ODESURF_REPORT_HPP

#include <json.hpp>

#include "odesurf/integrability.hpp"
#include "odesurf/region.hpp"
#include "odesurf/surface.hpp"

namespace odesurf {

// JSON reports carry a versioned "schema" field; printed expressions are
// the canonical forms from to_string.

nlohmann::ordered_json region_to_json(const Region& r);
nlohmann::ordered_json sweep_to_json(const SweepStats& s);
nlohmann::ordered_json classification_to_json(const CurvatureClass& c);
nlohmann::ordered_json surface_to_json(const SurfaceData& s, const CurvatureClass& c);
nlohmann::ordered_json integration_to_json(const IntegrationReport& r);

}  // namespace odesurf

#endif  // ODESURF_REPORT_HPP
