#include "warpgeo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace warpgeo {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void to_json(nlohmann::json& j, const WarpParams& p) {
  j = nlohmann::json{{"a", p.a},
                     {"b", p.b},
                     {"n", p.n},
                     {"fiber", p.fiber == FiberKind::Hyperbolic ? "hyperbolic" : "euclidean"}};
}

void from_json(const nlohmann::json& j, WarpParams& p) {
  j.at("a").get_to(p.a);
  j.at("b").get_to(p.b);
  j.at("n").get_to(p.n);
  const std::string fiber = j.at("fiber").get<std::string>();
  if (fiber == "hyperbolic")
    p.fiber = FiberKind::Hyperbolic;
  else if (fiber == "euclidean")
    p.fiber = FiberKind::Euclidean;
  else
    throw std::invalid_argument("unknown fiber kind: " + fiber);
}

void to_json(nlohmann::json& j, const Point& p) { j = nlohmann::json{{"t", p.t}, {"x", p.x}}; }

void from_json(const nlohmann::json& j, Point& p) {
  j.at("t").get_to(p.t);
  j.at("x").get_to(p.x);
}

void to_json(nlohmann::json& j, const Tangent& v) {
  j = nlohmann::json{{"dt", v.dt}, {"dx", v.dx}};
}

void from_json(const nlohmann::json& j, Tangent& v) {
  j.at("dt").get_to(v.dt);
  j.at("dx").get_to(v.dx);
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json{{"name", r.name},       {"max_residual", r.max_residual},
                     {"tolerance", r.tolerance}, {"samples", r.samples},
                     {"pass", r.pass},       {"details", r.details}};
}

void from_json(const nlohmann::json& j, CheckReport& r) {
  j.at("name").get_to(r.name);
  j.at("max_residual").get_to(r.max_residual);
  j.at("tolerance").get_to(r.tolerance);
  j.at("samples").get_to(r.samples);
  j.at("pass").get_to(r.pass);
  j.at("details").get_to(r.details);
}

void to_json(nlohmann::json& j, const GeodesicPath& path) {
  nlohmann::json samples = nlohmann::json::array();
  for (const GeodesicSample& s : path.samples)
    samples.push_back({{"s", s.s}, {"p", s.p}, {"v", s.v}});
  j = nlohmann::json{
      {"params", path.params},
      {"meta",
       {{"tol", path.meta.tol},
        {"status", path.meta.status == PathStatus::Completed ? "completed" : "domain_exit"},
        {"exit_s", path.meta.exit_s},
        {"steps_accepted", path.meta.steps_accepted},
        {"steps_rejected", path.meta.steps_rejected},
        {"rhs_evals", path.meta.rhs_evals}}},
      {"samples", samples}};
}

void from_json(const nlohmann::json& j, GeodesicPath& path) {
  j.at("params").get_to(path.params);
  const auto& meta = j.at("meta");
  meta.at("tol").get_to(path.meta.tol);
  path.meta.status = meta.at("status").get<std::string>() == "completed"
                         ? PathStatus::Completed
                         : PathStatus::DomainExit;
  meta.at("exit_s").get_to(path.meta.exit_s);
  meta.at("steps_accepted").get_to(path.meta.steps_accepted);
  meta.at("steps_rejected").get_to(path.meta.steps_rejected);
  meta.at("rhs_evals").get_to(path.meta.rhs_evals);
  path.samples.clear();
  for (const auto& js : j.at("samples")) {
    GeodesicSample s;
    js.at("s").get_to(s.s);
    js.at("p").get_to(s.p);
    js.at("v").get_to(s.v);
    path.samples.push_back(std::move(s));
  }
}

static void append_header(std::ostringstream& os, int n, bool transported) {
  os << "s,t";
  for (int i = 1; i < n; ++i) os << ",x" << i;
  os << ",dt";
  for (int i = 1; i < n; ++i) os << ",dx" << i;
  if (transported) {
    os << ",wdt";
    for (int i = 1; i < n; ++i) os << ",wdx" << i;
  }
  os << "\n";
}

static void append_sample(std::ostringstream& os, const GeodesicSample& s) {
  os << fmt17(s.s) << ',' << fmt17(s.p.t);
  for (double x : s.p.x) os << ',' << fmt17(x);
  os << ',' << fmt17(s.v.dt);
  for (double d : s.v.dx) os << ',' << fmt17(d);
}

std::string path_to_csv(const GeodesicPath& path) {
  std::ostringstream os;
  append_header(os, path.params.n, false);
  for (const GeodesicSample& s : path.samples) {
    append_sample(os, s);
    os << "\n";
  }
  return os.str();
}

std::string transported_to_csv(const TransportedField& field) {
  std::ostringstream os;
  append_header(os, field.base.params.n, true);
  for (size_t i = 0; i < field.base.samples.size(); ++i) {
    append_sample(os, field.base.samples[i]);
    os << ',' << fmt17(field.w[i].dt);
    for (double d : field.w[i].dx) os << ',' << fmt17(d);
    os << "\n";
  }
  return os.str();
}

static std::vector<double> parse_row(const std::string& line) {
  std::vector<double> vals;
  const char* cur = line.c_str();
  char* end = nullptr;
  while (*cur) {
    const double v = std::strtod(cur, &end);
    if (end == cur) throw std::invalid_argument("CSV parse error in row: " + line);
    vals.push_back(v);
    cur = (*end == ',') ? end + 1 : end;
  }
  return vals;
}

GeodesicPath path_from_csv(const WarpParams& params, const std::string& csv) {
  GeodesicPath path;
  path.params = params;
  std::istringstream is(csv);
  std::string line;
  bool first = true;
  const size_t expected = 1 + 2 * static_cast<size_t>(params.n);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    const auto vals = parse_row(line);
    if (vals.size() != expected)
      throw std::invalid_argument("CSV row has wrong number of columns");
    GeodesicSample s;
    s.s = vals[0];
    s.p = point_from_coords(std::span<const double>(vals).subspan(1, params.n));
    s.v = tangent_from_comps(std::span<const double>(vals).subspan(1 + params.n, params.n));
    path.samples.push_back(std::move(s));
  }
  return path;
}

}  // namespace warpgeo
