#include "cfs/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace cfs {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::DefectiveMatrix: return "DefectiveMatrix";
    case Errc::NotPositiveSpectrum: return "NotPositiveSpectrum";
    case Errc::DegenerateGram: return "DegenerateGram";
    case Errc::NotSignature11: return "NotSignature11";
    case Errc::NotGenericallySeparated: return "NotGenericallySeparated";
    case Errc::ParityObstruction: return "ParityObstruction";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NotInStabilizer: return "NotInStabilizer";
    case Errc::NotProperlyTimelike: return "NotProperlyTimelike";
    case Errc::AmbiguousDirection: return "AmbiguousDirection";
    case Errc::NotSpinConnectable: return "NotSpinConnectable";
    case Errc::HomeMismatch: return "HomeMismatch";
    case Errc::NotSpacelike: return "NotSpacelike";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::NotRegular: return "NotRegular";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::OnLightCone: return "OnLightCone";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::MassShellDegenerate: return "MassShellDegenerate";
    case Errc::IntegrationFailure: return "IntegrationFailure";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_validation_error(Errc c) noexcept {
  switch (c) {
    case Errc::NotAdmissible:
    case Errc::NotRegular:
    case Errc::InvalidInput:
    case Errc::OutOfDomain:
    case Errc::HomeMismatch:
      return true;
    default:
      return false;
  }
}

const char* definiteness_name(Definiteness d) noexcept {
  switch (d) {
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::null: return "null";
  }
  return "unknown";
}

const Mat4& spin_signature() {
  static const Mat4 S = [] {
    Mat4 s = Mat4::Zero();
    s.diagonal() << 1.0, 1.0, -1.0, -1.0;
    return s;
  }();
  return S;
}

cplx spin_product(const Vec4& u, const Vec4& v) {
  return u.adjoint() * spin_signature() * v;
}

Mat4 spin_adjoint(const Mat4& A) {
  // S A^dagger S without the two products: flip the sign of the off-diagonal blocks.
  Mat4 B = A.adjoint();
  B.topRightCorner<2, 2>() *= -1.0;
  B.bottomLeftCorner<2, 2>() *= -1.0;
  return B;
}

cplx trace_inner(const Mat4& A, const Mat4& B) {
  return 0.25 * (A.cwiseProduct(B.transpose())).sum();
}

double operator_norm(const Eigen::MatrixXcd& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0);
}

namespace {

double scale_of(const Mat4& A) { return A.cwiseAbs().maxCoeff(); }

cplx snap(cplx z, double thr) {
  if (std::abs(z.imag()) <= thr * (1.0 + std::abs(z))) return {z.real(), 0.0};
  return z;
}

std::array<cplx, 4> normalized_eigenvalues(const Mat4& An, double thr) {
  Eigen::ComplexEigenSolver<Mat4> es(An, false);
  std::array<cplx, 4> ev{};
  for (int i = 0; i < 4; ++i) ev[i] = snap(es.eigenvalues()(i), thr);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

Definiteness classify_gram(const Eigen::MatrixXcd& W, double margin) {
  const Eigen::MatrixXcd G = W.adjoint() * spin_signature() * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo > margin) return Definiteness::positive;
  if (hi < -margin) return Definiteness::negative;
  if (lo >= -margin && hi <= margin) return Definiteness::null;
  return Definiteness::indefinite;
}

bool gram_degenerate(const Eigen::MatrixXcd& W, double margin) {
  const Eigen::MatrixXcd G = W.adjoint() * spin_signature() * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  return es.eigenvalues().cwiseAbs().minCoeff() <= margin;
}

}  // namespace

std::array<cplx, 4> eigenvalues(const Mat4& A, const Tolerance& tol) {
  const double sc = scale_of(A);
  if (sc == 0.0 || !std::isfinite(sc)) return {};
  auto ev = normalized_eigenvalues(A / sc, tol.real_threshold);
  for (auto& z : ev) z *= sc;
  return ev;
}

Mat4 EigenSystem::projector(std::size_t k) const {
  const Mat4 Vinv = eigenvectors.inverse();
  Mat4 P = Mat4::Zero();
  for (int c : spaces.at(k).columns) P += eigenvectors.col(c) * Vinv.row(c);
  return P;
}

EigenSystem spectrum(const Mat4& A, const Tolerance& tol) {
  if (!A.allFinite()) throw Error(Errc::InvalidInput, "spectrum: non-finite entries");
  EigenSystem out;
  const double sc = scale_of(A);
  if (sc == 0.0) {
    Eigenspace sp;
    sp.lambda = 0.0;
    sp.multiplicity = 4;
    sp.columns = {0, 1, 2, 3};
    sp.real = true;
    sp.definiteness = Definiteness::indefinite;
    out.spaces.push_back(sp);
    out.definiteness.fill(Definiteness::indefinite);
    return out;
  }
  const Mat4 An = A / sc;
  const auto ev = normalized_eigenvalues(An, tol.real_threshold);

  // Group numerically coincident eigenvalues.
  std::vector<std::vector<cplx>> clusters;
  for (cplx z : ev) {
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(c.front() - z) <= tol.real_threshold) {
        c.push_back(z);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({z});
  }

  int col = 0;
  for (const auto& c : clusters) {
    const int k = static_cast<int>(c.size());
    cplx mean = std::accumulate(c.begin(), c.end(), cplx(0.0)) / double(k);
    if (std::abs(mean.imag()) <= tol.real_threshold * (1.0 + std::abs(mean))) mean = mean.real();
    Eigen::JacobiSVD<Mat4> svd(An - mean * Mat4::Identity(), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // The k smallest singular values must vanish for a complete eigenspace.
    if (sv(4 - k) > 1e-7) {
      throw Error(Errc::DefectiveMatrix, "eigenspace deficient (sigma=" + std::to_string(sv(4 - k)) + ")");
    }
    Eigen::MatrixXcd W = svd.matrixV().rightCols(k);
    Eigenspace sp;
    sp.lambda = mean * sc;
    sp.multiplicity = k;
    sp.real = mean.imag() == 0.0;
    sp.definiteness = classify_gram(W, tol.definiteness_margin);
    if (sp.real && gram_degenerate(W, tol.definiteness_margin)) {
      throw Error(Errc::DefectiveMatrix, "real eigenvalue with null eigenspace");
    }
    for (int j = 0; j < k; ++j) {
      out.eigenvectors.col(col) = W.col(j);
      out.eigenvalues[col] = mean * sc;
      out.definiteness[col] = sp.definiteness;
      sp.columns.push_back(col);
      ++col;
    }
    out.spaces.push_back(sp);
  }

  Eigen::JacobiSVD<Mat4> check(out.eigenvectors);
  const auto& s = check.singularValues();
  if (s(3) < 1e-8 * s(0)) throw Error(Errc::DefectiveMatrix, "eigenvectors nearly dependent");
  return out;
}

namespace {

Mat4 spectral_power(const Mat4& A, double power, const Tolerance& tol) {
  EigenSystem es;
  try {
    es = spectrum(A, tol);
  } catch (const Error& e) {
    throw Error(Errc::NotPositiveSpectrum, e.what());
  }
  const double sc = scale_of(A);
  Mat4 B = Mat4::Zero();
  for (std::size_t k = 0; k < es.spaces.size(); ++k) {
    const auto& sp = es.spaces[k];
    if (!sp.real || sp.lambda.real() <= tol.definiteness_margin * sc) {
      throw Error(Errc::NotPositiveSpectrum, "eigenvalue not real positive");
    }
    B += std::pow(sp.lambda.real(), power) * es.projector(k);
  }
  return B;
}

}  // namespace

Mat4 principal_inv_sqrt(const Mat4& A, const Tolerance& tol) { return spectral_power(A, -0.5, tol); }

Mat4 principal_sqrt(const Mat4& A, const Tolerance& tol) { return spectral_power(A, 0.5, tol); }

Mat4 spin_exp_i(const Mat4& H) {
  const Mat4 X = cplx(0.0, 1.0) * H;
  return X.exp();
}

}  // namespace cfs
