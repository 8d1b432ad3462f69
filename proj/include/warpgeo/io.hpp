#pragma once
#include <string>

#include <json.hpp>

#include "warpgeo/flows.hpp"
#include "warpgeo/verify.hpp"

namespace warpgeo {

// 17 significant digits: enough for bit-exact double round-trips.
std::string fmt17(double x);

void to_json(nlohmann::json& j, const WarpParams& p);
void from_json(const nlohmann::json& j, WarpParams& p);
void to_json(nlohmann::json& j, const Point& p);
void from_json(const nlohmann::json& j, Point& p);
void to_json(nlohmann::json& j, const Tangent& v);
void from_json(const nlohmann::json& j, Tangent& v);
void to_json(nlohmann::json& j, const CheckReport& r);
void from_json(const nlohmann::json& j, CheckReport& r);
void to_json(nlohmann::json& j, const GeodesicPath& path);
void from_json(const nlohmann::json& j, GeodesicPath& path);

// CSV with columns s, t, x1..x_{n-1}, dt, dx1..dx_{n-1}; one row per sample.
std::string path_to_csv(const GeodesicPath& path);
GeodesicPath path_from_csv(const WarpParams& params, const std::string& csv);

// Path columns followed by the transported components wdt, wdx1..wdx_{n-1}.
std::string transported_to_csv(const TransportedField& field);

}  // namespace warpgeo
