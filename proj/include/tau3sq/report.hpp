#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tau3sq/expsum.hpp"
#include "tau3sq/oscint.hpp"
#include "tau3sq/special.hpp"
#include "tau3sq/theorem.hpp"
#include "tau3sq/voronoi.hpp"

namespace tau3sq::report {

using ojson = nlohmann::ordered_json;

// full-precision decimal rendering (17 significant digits round-trips)
std::string fmt_double(double v);

ojson to_json(const theorem::ComparisonReport& r);
ojson to_json(const theorem::MainTermInputs& in);
ojson to_json(const special::SingularSeriesEstimate& e);
ojson to_json(const oscint::OscIntegralResult& r);
ojson to_json(const voronoi::VoronoiReport& r);
ojson to_json(const expsum::BoundSurveyReport& r);

// 8-column CSV: x,lhs,t1,t2,t3,predicted,ratio,Q
std::string comparison_csv(const std::vector<theorem::ComparisonReport>& rows);

// generic two-column CSV from flattened json (key per row)
std::string kv_csv(const ojson& j);

void write_text(const std::string& path, const std::string& text);  // "" or "-" = stdout

}  // namespace tau3sq::report
