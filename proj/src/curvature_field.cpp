#include <cmath>

#include <json.hpp>

#include "cfs/transport.hpp"

namespace cfs {

namespace {

using json = nlohmann::json;

RVec4 vec4(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(Errc::InvalidInput, "expected an array of 4 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Eigen::Matrix4d mat4(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(Errc::InvalidInput, "expected a 4x4 array");
  Eigen::Matrix4d M;
  for (int a = 0; a < 4; ++a) M.row(a) = vec4(j[a]).transpose();
  return M;
}

CurvatureSample parse_sample(const json& j) {
  CurvatureSample s;
  s.s = j.at("s").get<double>();
  if (j.contains("grad_s")) s.grad_s = vec4(j["grad_s"]);
  if (j.contains("ricci")) s.ricci = mat4(j["ricci"]);
  if ((s.ricci - s.ricci.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, s.ricci.cwiseAbs().maxCoeff()))
    throw Error(Errc::InvalidInput, "ricci must be symmetric");
  if (j.contains("nabla_ricci")) {
    const json& n = j["nabla_ricci"];
    if (!n.is_array() || n.size() != 4) throw Error(Errc::InvalidInput, "nabla_ricci must be 4x4x4");
    for (int a = 0; a < 4; ++a) s.nabla_ricci[a] = mat4(n[a]);
  }
  const json& r = j.at("nabla_riemann");
  if (!r.is_array() || r.size() != 4) throw Error(Errc::InvalidInput, "nabla_riemann must be 4x4");
  for (int a = 0; a < 4; ++a) s.nabla_riemann[a] = vec4(r[a]);
  if (j.contains("bounds")) {
    const json& b = j["bounds"];
    if (!b.is_array() || b.size() != 3) throw Error(Errc::InvalidInput, "bounds must hold 3 numbers");
    s.bounds = std::array<double, 3>{b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
  }
  return s;
}

CurvatureSample lerp(const CurvatureSample& a, const CurvatureSample& b, double w) {
  CurvatureSample s;
  s.s = (1 - w) * a.s + w * b.s;
  s.grad_s = (1 - w) * a.grad_s + w * b.grad_s;
  s.ricci = (1 - w) * a.ricci + w * b.ricci;
  for (int k = 0; k < 4; ++k) {
    s.nabla_ricci[k] = (1 - w) * a.nabla_ricci[k] + w * b.nabla_ricci[k];
    s.nabla_riemann[k] = (1 - w) * a.nabla_riemann[k] + w * b.nabla_riemann[k];
  }
  if (a.bounds && b.bounds) {
    std::array<double, 3> c{};
    for (int k = 0; k < 3; ++k) c[k] = std::max((*a.bounds)[k], (*b.bounds)[k]);
    s.bounds = c;
  }
  return s;
}

}  // namespace

CurvatureField curvature_field_from_json(const std::string& text, double m) {
  std::vector<CurvatureSample> samples;
  double t0 = 0.0, dt = 0.0;
  try {
    const json j = json::parse(text);
    t0 = j.at("t0").get<double>();
    dt = j.at("dt").get<double>();
    for (const auto& s : j.at("samples")) samples.push_back(parse_sample(s));
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("curvature JSON: ") + e.what());
  }
  if (samples.empty()) throw Error(Errc::InvalidInput, "curvature JSON has no samples");
  if (samples.size() > 1 && !(dt > 0.0)) throw Error(Errc::InvalidInput, "dt must be positive");
  for (const auto& s : samples) validate_sample(s, m);
  const double t1 = t0 + dt * static_cast<double>(samples.size() - 1);
  auto at = [samples, t0, dt](double t) {
    if (samples.size() == 1) return samples.front();
    const double u = (t - t0) / dt;
    if (u < -1e-12 || u > static_cast<double>(samples.size() - 1) + 1e-12)
      throw Error(Errc::OutOfDomain, "curvature field evaluated outside its grid");
    const std::size_t k = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(u))), samples.size() - 2);
    return lerp(samples[k], samples[k + 1], std::clamp(u - static_cast<double>(k), 0.0, 1.0));
  };
  return {t0, t1, at};
}

}  // namespace cfs
