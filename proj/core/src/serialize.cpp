#include "qext/serialize.hpp"

namespace qext {

using nlohmann::json;

namespace {

json weight_to_json(const complexd& w) { return json::array({w.real(), w.imag()}); }

complexd weight_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw config_error(std::string(where) + ".weight must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <int N, typename Mat>
Mat matrix_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != N) throw config_error(std::string(where) + ".width malformed");
  Mat m;
  for (int r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != N)
      throw config_error(std::string(where) + ".width malformed");
    for (int c = 0; c < N; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

template <typename Mat>
json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json term3_to_json(const GaussianTerm3& t) {
  return {{"weight", weight_to_json(t.weight)},
          {"center", {t.center[0], t.center[1], t.center[2]}},
          {"width", matrix_to_json(t.width)}};
}

GaussianTerm3 term3_from_json(const json& j) {
  GaussianTerm3 t;
  t.weight = weight_from_json(j.at("weight"), "term");
  auto c = j.at("center");
  if (!c.is_array() || c.size() != 3) throw config_error("term.center must be [x,y,z]");
  t.center = Vec3(c[0].get<double>(), c[1].get<double>(), c[2].get<double>());
  t.width = matrix_from_json<3, Eigen::Matrix3d>(j.at("width"), "term");
  return t;
}

Vec3 vec3_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 3)
    throw config_error(std::string(where) + " must be [x,y,z]");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

json gaussian3_to_json(const GaussianSum3& g) {
  json terms = json::array();
  for (const auto& t : g.terms) terms.push_back(term3_to_json(t));
  return terms;
}

GaussianSum3 gaussian3_from_json(const json& j) {
  if (!j.is_array()) throw config_error("profile must be an array of terms");
  GaussianSum3 g;
  for (const auto& t : j) g.terms.push_back(term3_from_json(t));
  return g;
}

json to_json(const SourceProfile& p) {
  json out;
  if (p.is_gaussian_sum()) {
    out["kind"] = "gaussian_sum";
    json terms = json::array();
    for (const auto& t : p.gaussian4().terms) {
      terms.push_back({{"weight", weight_to_json(t.weight)},
                       {"center", {t.center.t, t.center.r[0], t.center.r[1], t.center.r[2]}},
                       {"width", matrix_to_json(t.width)}});
    }
    out["terms"] = terms;
  } else if (p.is_static()) {
    out["kind"] = "static";
    out["terms"] = gaussian3_to_json(p.gaussian3());
  } else if (p.is_travelling()) {
    const auto& tr = p.travelling_data();
    out["kind"] = "travelling";
    out["profile"] = gaussian3_to_json(tr.profile);
    out["velocity"] = {tr.velocity[0], tr.velocity[1], tr.velocity[2]};
  } else {
    const auto& te = p.two_epoch_data();
    out["kind"] = "two_epoch";
    out["plus"] = {{"profile", gaussian3_to_json(te.plus)},
                   {"velocity", {te.v_plus[0], te.v_plus[1], te.v_plus[2]}}};
    out["minus"] = {{"profile", gaussian3_to_json(te.minus)},
                    {"velocity", {te.v_minus[0], te.v_minus[1], te.v_minus[2]}}};
  }
  return out;
}

SourceProfile source_profile_from_json(const json& j) {
  std::string kind = j.value("kind", "");
  try {
    if (kind == "gaussian_sum") {
      std::vector<GaussianTerm4> terms;
      for (const auto& t : j.at("terms")) {
        GaussianTerm4 g;
        g.weight = weight_from_json(t.at("weight"), "term");
        auto c = t.at("center");
        if (!c.is_array() || c.size() != 4) throw config_error("term.center must be [t,x,y,z]");
        g.center = FourVector{c[0].get<double>(),
                              Vec3(c[1].get<double>(), c[2].get<double>(), c[3].get<double>())};
        g.width = matrix_from_json<4, Eigen::Matrix4d>(t.at("width"), "term");
        terms.push_back(g);
      }
      return SourceProfile::gaussian_sum(std::move(terms));
    }
    if (kind == "static")
      return SourceProfile(gaussian3_from_json(j.at("terms")));
    if (kind == "travelling")
      return SourceProfile::travelling(gaussian3_from_json(j.at("profile")),
                                       vec3_from_json(j.at("velocity"), "velocity"));
    if (kind == "two_epoch")
      return SourceProfile::two_epoch(
          gaussian3_from_json(j.at("plus").at("profile")),
          vec3_from_json(j.at("plus").at("velocity"), "plus.velocity"),
          gaussian3_from_json(j.at("minus").at("profile")),
          vec3_from_json(j.at("minus").at("velocity"), "minus.velocity"));
  } catch (const json::exception& e) {
    throw config_error(std::string("source profile: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("source profile: ") + e.what());
  }
  throw config_error("source profile: unknown kind '" + kind + "'");
}

}  // namespace qext
