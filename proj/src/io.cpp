#include "casimir/io.hpp"

#include <algorithm>
#include <sstream>

namespace casimir {

using nlohmann::json;

json weight_to_json(const Weight& w) {
    return json{{"h1", w.h1}, {"level", w.level}, {"d", w.d}};
}

Weight weight_from_json(const json& j) {
    return Weight{j.at("h1").get<std::int64_t>(), j.at("level").get<std::int64_t>(),
                  j.at("d").get<std::int64_t>()};
}

json series_to_json(const TruncatedSeries& s) {
    json terms = json::array();
    for (const auto& [k, c] : s.terms()) {
        terms.push_back(json{{"h1", k.a}, {"d", k.m}, {"re", c.re.get_str()}, {"im", c.im.get_str()}});
    }
    json j{{"level", s.level()},
           {"y_denom", s.y_den()},
           {"q_denom", s.q_den()},
           {"terms", std::move(terms)}};
    if (s.g2_floor() == TruncatedSeries::kNegInf) {
        j["g2_floor"] = nullptr;
    } else {
        j["g2_floor"] = s.g2_floor();
    }
    return j;
}

TruncatedSeries series_from_json(const json& j) {
    const std::int64_t floor = j.at("g2_floor").is_null()
                                   ? TruncatedSeries::kNegInf
                                   : j.at("g2_floor").get<std::int64_t>();
    TruncatedSeries s(j.at("level").get<std::int64_t>(), floor,
                      j.value("y_denom", std::int64_t(1)), j.value("q_denom", std::int64_t(1)));
    for (const auto& t : j.at("terms")) {
        GaussianRational c(rational_from_string(t.at("re").get<std::string>()),
                           rational_from_string(t.at("im").get<std::string>()));
        s.add_term({t.at("h1").get<std::int64_t>(), t.at("d").get<std::int64_t>()}, c);
    }
    s.normalize();
    return s;
}

std::string series_to_csv(const TruncatedSeries& s) {
    std::ostringstream os;
    os << "h1,d,re,im\n";
    for (const auto& [k, c] : s.terms()) {
        os << k.a << "," << k.m << "," << c.re.get_str() << "," << c.im.get_str() << "\n";
    }
    return os.str();
}

json spherical_to_json(const SphericalResult& r) {
    json resonances = json::array();
    for (const auto& ev : r.resonances) {
        resonances.push_back(json{{"mu", weight_to_json(ev.mu)}, {"action", ev.action}});
    }
    return json{{"lambda", weight_to_json(r.lambda)},
                {"eta", json{{"B0", r.eta.b0.get_str()}, {"B1", r.eta.b1.get_str()}}},
                {"chi", json{{"B0", r.chi.b0.get_str()}, {"B1", r.chi.b1.get_str()}}},
                {"eigenvalue", r.eigenvalue.get_str()},
                {"depth", r.depth},
                {"resonances", std::move(resonances)},
                {"series", series_to_json(r.series)}};
}

}  // namespace casimir
