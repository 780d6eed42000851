#pragma once

#include <string>

#include "casimir/series.hpp"
#include "casimir/spherical.hpp"

#include "json.hpp"

namespace casimir {

nlohmann::json weight_to_json(const Weight& w);
Weight weight_from_json(const nlohmann::json& j);

// {"level":K,"g2_floor":int|null,"y_denom":int,"q_denom":int,
//  "terms":[{"h1":a,"d":m,"re":"p/q","im":"r/s"}]}
nlohmann::json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j);

// columns h1,d,re,im
std::string series_to_csv(const TruncatedSeries& s);

nlohmann::json spherical_to_json(const SphericalResult& r);

}  // namespace casimir
