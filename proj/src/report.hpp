#pragma once

#include <json.hpp>
#include <string>

#include "conifold.hpp"
#include "eigenfunction.hpp"
#include "normal.hpp"
#include "spectral.hpp"

namespace mc {

using json = nlohmann::json;

// Serializes with every float at 17 significant digits; non-finite floats become null.
std::string dump17(const json& j, int indent = 2);

// {"vertices": [[x,y],...], "boundary_coeffs": {"x,y": "p/q"}, "moduli": [...], "id": optional}
CurveFamily family_from_json(const json& j);
json family_to_json(const CurveFamily& f);
// Canonical text form: rotated vertex list plus every coefficient, independent of the id.
std::string family_canonical(const CurveFamily& f);

json polygon_report(const CurveFamily& f);
json periods_report(const GenusOneData& d, unsigned kmax);
json gw_report(const GWTable& t);
GWTable gw_from_report(const json& j);
json period_value_report(const PeriodValue& v);
json prediction_report(const SpectrumPrediction& p);
json spectrum_report(const SpectrumResult& s);
json conifold_report(int g, unsigned rmax);
json identity_report(const IdentityReport& r, bool with_increments = false);
json eigenfunction_report(const EigenfunctionReport& r);

}  // namespace mc
