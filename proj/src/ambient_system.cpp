#include "cfs/ambient_system.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

namespace cfs {

namespace {

using json = nlohmann::json;

struct Spectral {
  Eigen::VectorXd w;
  Eigen::MatrixXcd V;
  double thr = 0.0;
};

Spectral hermitian_spectrum(const AmbientOperator& x, const Tolerance& tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (x + x.adjoint()));
  Spectral s;
  s.w = es.eigenvalues();
  s.V = es.eigenvectors();
  const double scale = s.w.size() ? s.w.cwiseAbs().maxCoeff() : 0.0;
  s.thr = tol.rank_threshold * std::max(1.0, scale);
  return s;
}

}  // namespace

PointDiagnostics validate_point(const AmbientOperator& x, const Tolerance& tol) {
  if (x.rows() != x.cols() || x.rows() < 4) throw Error(Errc::NotAdmissible, "operator must be square with f >= 4");
  if (!x.allFinite()) throw Error(Errc::NotAdmissible, "non-finite entries");
  const double n = x.norm();
  if ((x - x.adjoint()).norm() > 1e-12 * std::max(1.0, n)) throw Error(Errc::NotAdmissible, "not Hermitian");
  const Spectral s = hermitian_spectrum(x, tol);
  PointDiagnostics d;
  for (Eigen::Index i = 0; i < s.w.size(); ++i) {
    if (s.w(i) > s.thr) ++d.positive;
    if (s.w(i) < -s.thr) ++d.negative;
  }
  d.rank = static_cast<std::size_t>(d.positive + d.negative);
  if (d.rank > 4) throw Error(Errc::NotAdmissible, "rank exceeds four");
  if (d.positive > 2) throw Error(Errc::NotAdmissible, "more than two positive eigenvalues");
  if (d.negative > 2) throw Error(Errc::NotAdmissible, "more than two negative eigenvalues");
  d.regular = d.positive == 2 && d.negative == 2;
  return d;
}

LocalSpin localize(const AmbientOperator& x, const Tolerance& tol) {
  if (!validate_point(x, tol).regular) throw Error(Errc::NotRegular, "spin space has dimension below four");
  const Spectral s = hermitian_spectrum(x, tol);
  std::vector<Eigen::Index> neg, pos;
  for (Eigen::Index i = 0; i < s.w.size(); ++i) {
    if (s.w(i) < -s.thr) neg.push_back(i);
    if (s.w(i) > s.thr) pos.push_back(i);
  }
  const auto desc = [&](Eigen::Index a, Eigen::Index b) { return s.w(a) > s.w(b); };
  std::sort(neg.begin(), neg.end(), desc);
  std::sort(pos.begin(), pos.end(), desc);
  std::vector<Eigen::Index> order(neg);
  order.insert(order.end(), pos.begin(), pos.end());

  LocalSpin L;
  L.basis.resize(x.rows(), 4);
  for (int a = 0; a < 4; ++a) {
    Eigen::VectorXcd w = s.V.col(order[a]);
    Eigen::Index k;
    w.cwiseAbs().maxCoeff(&k);
    w *= std::abs(w(k)) / w(k);
    const double lam = s.w(order[a]);
    L.lambda(a) = lam;
    L.basis.col(a) = w / std::sqrt(std::abs(lam));
    L.E_x(a, a) = -1.0 / lam;
  }
  L.E_gram = L.S * L.E_x;
  return L;
}

Mat4 ambient_kernel(const AmbientOperator& x, const LocalSpin& bx, const AmbientOperator& y, const LocalSpin& by) {
  const Eigen::MatrixXcd xy_fy = x * (y * by.basis);
  const Mat4 G = bx.basis.adjoint() * xy_fy;
  Mat4 P;
  for (int a = 0; a < 4; ++a) P.row(a) = -bx.S(a, a) * G.row(a);
  return P;
}

PointPairData ambient_pair(const AmbientSystem& sys, const std::vector<LocalSpin>& loc, std::size_t i,
                           std::size_t j) {
  const Mat4 P = ambient_kernel(sys.points.at(i), loc.at(i), sys.points.at(j), loc.at(j));
  return make_pair_data(P, loc[i].s_x, loc[j].s_x);
}

AmbientSystem random_system(std::size_t f, std::size_t n_points, std::uint64_t seed) {
  if (f < 4) throw Error(Errc::InvalidInput, "random_system needs f >= 4");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  AmbientSystem sys;
  sys.f = f;
  const Eigen::Vector4cd sdiag(1.0, 1.0, -1.0, -1.0);
  for (std::size_t k = 0; k < n_points; ++k) {
    Eigen::MatrixXcd iota(f, 4);
    for (Eigen::Index c = 0; c < 4; ++c)
      for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(f); ++r) {
        const double re = g(rng);
        const double im = g(rng);
        iota(r, c) = cplx(re, im);
      }
    Eigen::MatrixXcd F = -(iota * sdiag.asDiagonal() * iota.adjoint());
    F = 0.5 * (F + F.adjoint()).eval();
    sys.points.push_back(F);
    sys.weights.push_back(1.0);
  }
  return sys;
}

std::array<cplx, 4> nontrivial_product_spectrum(const AmbientOperator& x, const AmbientOperator& y) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(x * y, false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  std::array<cplx, 4> out{};
  for (int i = 0; i < 4 && i < static_cast<int>(ev.size()); ++i) out[i] = ev[i];
  return out;
}

AmbientSystem system_from_json(const std::string& text, const Tolerance& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("system JSON: ") + e.what());
  }
  AmbientSystem sys;
  try {
    sys.f = j.at("f").get<std::size_t>();
    const auto& pts = j.at("points");
    for (const auto& p : pts) {
      if (p.size() != sys.f * sys.f) throw Error(Errc::InvalidInput, "point entry count differs from f*f");
      AmbientOperator x(sys.f, sys.f);
      for (std::size_t k = 0; k < p.size(); ++k) {
        const auto& c = p[k];
        if (!c.is_array() || c.size() != 2) throw Error(Errc::InvalidInput, "entries must be [re, im]");
        x(static_cast<Eigen::Index>(k / sys.f), static_cast<Eigen::Index>(k % sys.f)) =
            cplx(c[0].get<double>(), c[1].get<double>());
      }
      validate_point(x, tol);
      sys.points.push_back(x);
    }
    if (j.contains("weights")) {
      sys.weights = j.at("weights").get<std::vector<double>>();
    } else {
      sys.weights.assign(sys.points.size(), 1.0);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("system JSON: ") + e.what());
  }
  if (sys.weights.size() != sys.points.size()) throw Error(Errc::InvalidInput, "weights and points differ in length");
  for (double w : sys.weights)
    if (!(w > 0.0)) throw Error(Errc::InvalidInput, "weights must be positive");
  return sys;
}

std::string system_to_json(const AmbientSystem& sys) {
  json j;
  j["f"] = sys.f;
  j["points"] = json::array();
  for (const auto& x : sys.points) {
    json p = json::array();
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c) p.push_back({x(r, c).real(), x(r, c).imag()});
    j["points"].push_back(p);
  }
  j["weights"] = sys.weights;
  return j.dump();
}

}  // namespace cfs
