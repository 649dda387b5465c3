#include "cfs/clifford.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cfs {

namespace {

const cplx I1(0.0, 1.0);

Mat4 block(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat4 m;
  m << a, b, c, d;
  return m;
}

std::array<Mat2, 3> pauli() {
  Mat2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I1, I1, 0;
  s3 << 1, 0, 0, -1;
  return {s1, s2, s3};
}

double fro(const Mat4& A) { return A.norm(); }

// Spin-orthonormal basis (4x2) of the eigenspace v = sign, with Gram sign * identity.
Eigen::Matrix<cplx, 4, 2> eigen_onb(const Mat4& v, double sign) {
  const Mat4 E = 0.5 * (Mat4::Identity() + sign * v);
  Eigen::JacobiSVD<Mat4> svd(E, Eigen::ComputeFullU);
  Eigen::Matrix<cplx, 4, 2> B = svd.matrixU().leftCols<2>();
  const Mat2 G = sign * (B.adjoint() * spin_signature() * B);
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (G + G.adjoint()));
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(Errc::InvalidInput, "eigenspace of a sign operator is not definite");
  }
  Eigen::Vector2d w = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return B * es.eigenvectors() * w.cast<cplx>().asDiagonal();
}

Mat4 frame_inverse(const Mat4& F) { return spin_adjoint(F); }

// Pseudo-orthonormal basis of the orthogonal complement of a unit vector u inside span(K),
// normalized to <e,e> = -sign_u. Pivoted Gram-Schmidt over the generators.
std::vector<Mat4> complement_basis(const CliffordSubspace& K, const Mat4& u, std::size_t count) {
  const double uu = trace_inner(u, u).real();
  std::vector<Mat4> cand;
  for (const auto& g : K.generators) cand.push_back(g - (trace_inner(g, u).real() / uu) * u);
  double ref = 0.0;
  for (const auto& g : K.generators) ref = std::max(ref, std::abs(trace_inner(g, g).real()));
  std::vector<Mat4> basis;
  for (std::size_t round = 0; round < count; ++round) {
    int best = -1;
    double best_n = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const double n = std::abs(trace_inner(cand[i], cand[i]).real());
      if (n > best_n) {
        best_n = n;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || best_n <= 1e-10 * std::max(ref, 1.0)) {
      throw Error(Errc::InvalidInput, "complement of a unit vector in a Clifford subspace is degenerate");
    }
    const Mat4 c = cand[best];
    const double n = trace_inner(c, c).real();
    const Mat4 e = c / std::sqrt(std::abs(n));
    const double ee = trace_inner(e, e).real();
    basis.push_back(e);
    cand.erase(cand.begin() + best);
    for (auto& x : cand) x -= (trace_inner(x, e).real() / ee) * e;
  }
  return basis;
}

// Spin frame with v = diag(1,1,-1,-1) and e4 = i [[0,1],[1,0]].
Mat4 pair_frame(const Mat4& v, const Mat4& e4) {
  const auto Bp = eigen_onb(v, 1.0);
  const auto Bm = eigen_onb(v, -1.0);
  Mat4 F0;
  F0 << Bp, Bm;
  const Mat4 e4F = frame_inverse(F0) * e4 * F0;
  const Mat2 V = -e4F.topRightCorner<2, 2>();
  const Mat2 W = -I1 * V.adjoint();
  Mat4 F;
  F << Bp, Bm * W;
  return F;
}

std::array<Mat4, 5> conjugated_standard(const Mat4& F) {
  const Mat4 Fi = frame_inverse(F);
  std::array<Mat4, 5> g;
  for (int i = 0; i < 5; ++i) g[i] = F * standard_clifford().generators[i] * Fi;
  return g;
}

}  // namespace

std::vector<Mat4> orthogonal_complement(const CliffordSubspace& K, const Mat4& u, std::size_t count) {
  return complement_basis(K, u, count);
}

const Mat4& gamma(int mu) {
  static const std::array<Mat4, 4> g = [] {
    const auto s = pauli();
    const Mat2 Z = Mat2::Zero(), E = Mat2::Identity();
    return std::array<Mat4, 4>{block(E, Z, Z, -E), block(Z, s[0], -s[0], Z), block(Z, s[1], -s[1], Z),
                               block(Z, s[2], -s[2], Z)};
  }();
  return g.at(mu);
}

const Mat4& gamma_e4() {
  static const Mat4 e4 = [] {
    const Mat2 Z = Mat2::Zero(), E = Mat2::Identity();
    return Mat4(I1 * block(Z, E, E, Z));
  }();
  return e4;
}

Mat4 slash(const RVec4& x) {
  return x(0) * gamma(0) - x(1) * gamma(1) - x(2) * gamma(2) - x(3) * gamma(3);
}

CliffordSubspace make_clifford(const std::array<Mat4, 5>& generators) {
  CliffordSubspace K;
  K.generators = generators;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) K.gram(i, j) = trace_inner(generators[i], generators[j]).real();
  return K;
}

const CliffordSubspace& standard_clifford() {
  static const CliffordSubspace K = make_clifford({gamma(0), gamma(1), gamma(2), gamma(3), gamma_e4()});
  return K;
}

double anticommutation_residual(const CliffordSubspace& K) {
  double scale = 1.0;
  for (const auto& g : K.generators) scale = std::max(scale, g.squaredNorm());
  double r = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Mat4& a = K.generators[i];
    r = std::max(r, (spin_adjoint(a) - a).norm() / std::sqrt(scale));
    for (int j = i; j < 5; ++j) {
      const Mat4& b = K.generators[j];
      const Mat4 ac = a * b + b * a - 2.0 * K.gram(i, j) * Mat4::Identity();
      r = std::max(r, ac.norm() / scale);
    }
  }
  return r;
}

const char* signature_name(CliffordSignature s) noexcept {
  switch (s) {
    case CliffordSignature::s14: return "(1,4)";
    case CliffordSignature::s32: return "(3,2)";
    case CliffordSignature::invalid: return "invalid";
  }
  return "invalid";
}

CliffordSignature clifford_signature(const CliffordSubspace& K, const Tolerance& tol) {
  if (std::abs(K.gram.determinant()) < tol.rank_threshold) {
    throw Error(Errc::DegenerateGram, "Gram determinant below rank threshold");
  }
  if (anticommutation_residual(K) > 1e-9) return CliffordSignature::invalid;
  Eigen::SelfAdjointEigenSolver<Mat5r> es(K.gram);
  int pos = 0;
  for (int i = 0; i < 5; ++i) pos += es.eigenvalues()(i) > 0.0 ? 1 : 0;
  if (pos == 1) return CliffordSignature::s14;
  if (pos == 3) return CliffordSignature::s32;
  return CliffordSignature::invalid;
}

Eigen::Matrix<cplx, 5, 1> clifford_coords(const CliffordSubspace& K, const Mat4& X) {
  Eigen::Matrix<cplx, 5, 1> rhs;
  for (int i = 0; i < 5; ++i) rhs(i) = trace_inner(K.generators[i], X);
  const Eigen::Matrix<cplx, 5, 5> G = K.gram.cast<cplx>();
  return G.fullPivLu().solve(rhs);
}

Mat4 project_onto(const CliffordSubspace& K, const Mat4& X) {
  const auto c = clifford_coords(K, X);
  Mat4 P = Mat4::Zero();
  for (int i = 0; i < 5; ++i) P += c(i) * K.generators[i];
  return P;
}

double span_residual(const CliffordSubspace& K, const Mat4& X) {
  const double n = fro(X);
  if (n == 0.0) return 0.0;
  return fro(X - project_onto(K, X)) / n;
}

bool same_span(const CliffordSubspace& A, const CliffordSubspace& B, double tol) {
  for (const auto& g : A.generators)
    if (span_residual(B, g) > tol) return false;
  for (const auto& g : B.generators)
    if (span_residual(A, g) > tol) return false;
  return true;
}

CliffordSubspace conjugate(const Mat4& U, const CliffordSubspace& K) {
  const Mat4 Ui = U.inverse();
  std::array<Mat4, 5> g;
  for (int i = 0; i < 5; ++i) g[i] = U * K.generators[i] * Ui;
  return make_clifford(g);
}

bool is_sign_operator(const Mat4& A, const Tolerance& tol) {
  const double scale = std::max(1.0, A.squaredNorm());
  if ((A * A - Mat4::Identity()).norm() > 1e-8 * scale) return false;
  const Mat4 SA = spin_signature() * A;
  if ((SA - SA.adjoint()).norm() > 1e-8 * std::sqrt(scale)) return false;
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (SA + SA.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol.definiteness_margin;
}

Mat4 exp_i_sign(double beta, const Mat4& v) {
  return std::cos(beta) * Mat4::Identity() + I1 * std::sin(beta) * v;
}

CliffordSubspace extend_clifford(const Mat4& e0, const Mat4& e4, const Tolerance& tol) {
  const std::array<Mat4, 2> L{e0, e4};
  Eigen::Matrix2d G;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) G(i, j) = trace_inner(L[i], L[j]).real();
  const double scale = std::max(std::abs(G(0, 0)), std::abs(G(1, 1))) + std::abs(G(0, 1));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Mat4 ac = L[i] * L[j] + L[j] * L[i] - 2.0 * G(i, j) * Mat4::Identity();
      if (ac.norm() > 1e-8 * std::max(scale, 1e-300) * 4.0) {
        throw Error(Errc::NotSignature11, "anticommutators are not scalar");
      }
    }
    if ((spin_adjoint(L[i]) - L[i]).norm() > 1e-8 * std::max(1.0, L[i].norm())) {
      throw Error(Errc::NotSignature11, "generator not spin-symmetric");
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(G);
  const double thr = tol.rank_threshold * std::max(scale, 1e-300);
  if (!(es.eigenvalues()(0) < -thr && es.eigenvalues()(1) > thr)) {
    throw Error(Errc::NotSignature11, "Gram matrix of the pair is not of signature (1,1)");
  }
  const Eigen::Vector2d c = es.eigenvectors().col(1);
  Mat4 t = c(0) * e0 + c(1) * e4;
  t /= std::sqrt(trace_inner(t, t).real());
  if ((spin_signature() * t).trace().real() < 0.0) t = -t;
  if (!is_sign_operator(t, tol)) {
    throw Error(Errc::NotSignature11, "timelike direction is not a sign operator");
  }
  const Eigen::Vector2d d = es.eigenvectors().col(0);
  Mat4 u = d(0) * e0 + d(1) * e4;
  u -= trace_inner(u, t).real() * t;
  u /= std::sqrt(-trace_inner(u, u).real());
  return make_clifford(conjugated_standard(pair_frame(t, u)));
}

Mat4 adapted_frame(const CliffordSubspace& K, const Mat4& v) {
  const auto comp = complement_basis(K, v, 4);
  const Mat4 F = pair_frame(v, comp[0]);
  const Mat4 Fi = frame_inverse(F);
  std::array<Mat2, 3> A;
  for (int a = 0; a < 3; ++a) A[a] = (Fi * comp[a + 1] * F).topRightCorner<2, 2>();
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (A[0] + A[0].adjoint()));
  Mat2 Q;
  Q << es.eigenvectors().col(1), es.eigenvectors().col(0);  // eigenvalue +1 first
  const Mat2 A1 = Q.adjoint() * A[1] * Q;
  const double th = std::arg(A1(0, 1));
  Mat2 Dg = Mat2::Identity();
  Dg(1, 1) = std::exp(-I1 * th);
  const Mat2 Uu = Q * Dg;
  Mat4 T = Mat4::Zero();
  T.topLeftCorner<2, 2>() = Uu;
  T.bottomRightCorner<2, 2>() = Uu;
  return F * T;
}

bool generically_separated(const Mat4& v, const Mat4& w, const Tolerance& tol) {
  const Mat4 C = v * w - w * v;
  Eigen::JacobiSVD<Mat4> svd(C);
  const double ref = operator_norm(v) * operator_norm(w);
  return svd.singularValues()(3) > tol.rank_threshold * ref;
}

SyncResult synchronize(const Mat4& v, const Mat4& w, const Tolerance& tol) {
  if (!generically_separated(v, w, tol)) {
    throw Error(Errc::NotGenericallySeparated, "commutator [v, w] does not have rank four");
  }
  const Mat4& S = spin_signature();
  const auto Bp = eigen_onb(v, 1.0);
  const Mat2 M = Bp.adjoint() * S * w * Bp;
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (M + M.adjoint()));
  const Eigen::Matrix<cplx, 4, 2> f12 = Bp * es.eigenvectors();
  const double nu1 = es.eigenvalues()(0), nu2 = es.eigenvalues()(1);
  Vec4 f3 = -(w * f12.col(0) - nu1 * f12.col(0));
  Vec4 f4 = w * f12.col(1) - nu2 * f12.col(1);
  f3 /= std::sqrt(-spin_product(f3, f3).real());
  f4 /= std::sqrt(-spin_product(f4, f4).real());
  Mat4 F;
  F << f12, f3, f4;
  const Mat4 Fi = frame_inverse(F);
  const Mat4 wF = Fi * w * F;

  SyncResult r;
  r.frame = F;
  r.alpha = std::asinh(wF(0, 2).real());
  r.beta = std::asinh(-wF(1, 3).real());

  const Mat4 ac = v * w + w * v;
  const Mat4 ac_traceless = ac - 0.25 * ac.trace() * Mat4::Identity();
  const bool scalar_ac = ac_traceless.norm() < tol.real_threshold * std::max(1.0, ac.norm());

  r.K_v = make_clifford(conjugated_standard(F));
  if (scalar_ac) {
    r.rho = Mat4::Zero();
    r.U = Mat4::Identity();
    r.K_vt = r.K_v;
    return r;
  }
  const double c4 = (r.alpha - r.beta) / 4.0;
  r.rho = F * (c4 * gamma_e4()) * Fi;
  const double c = std::abs(c4);
  const Mat4 irho = I1 * r.rho;
  const double sinhc_c = c > 0.0 ? std::sinh(c) / c : 1.0;
  r.U = std::cosh(c) * Mat4::Identity() + sinhc_c * irho;
  const Mat4 Uinv = std::cosh(c) * Mat4::Identity() - sinhc_c * irho;
  std::array<Mat4, 5> g;
  for (int i = 0; i < 5; ++i) g[i] = r.U * r.K_v.generators[i] * Uinv;
  r.K_vt = make_clifford(g);
  return r;
}

Identification identification_map(const Mat4& v, const CliffordSubspace& K, const CliffordSubspace& K2,
                                   const Tolerance& tol) {
  Mat4 F, F2;
  try {
    F = adapted_frame(K, v);
    F2 = adapted_frame(K2, v);
  } catch (const Error&) {
    throw Error(Errc::NoSolution, "sign operator is not contained in both subspaces");
  }
  const Mat4 R = frame_inverse(F) * F2;
  const cplx d1 = R.topLeftCorner<2, 2>().determinant();
  const cplx d2 = R.bottomRightCorner<2, 2>().determinant();
  double beta0 = std::arg(d1 / d2) / 4.0;  // in (-pi/4, pi/4]

  Mat4 U = exp_i_sign(beta0, v);
  const CliffordSubspace KU = conjugate(U, K);
  if (!same_span(KU, K2, 1e-8)) throw Error(Errc::NoSolution, "subspaces not related by exp(i beta v)");

  // Generator-wise comparison decides between beta0 and its parity partner.
  const double vv = trace_inner(v, v).real();
  bool identity_match = true, parity_match = true;
  for (int i = 0; i < 5; ++i) {
    const Mat4& a = KU.generators[i];
    const Mat4& b = K2.generators[i];
    const Mat4 pb = -b + (2.0 * trace_inner(b, v).real() / vv) * v;
    const double scale = std::max(1.0, b.norm());
    if ((a - b).norm() > 1e-8 * scale) identity_match = false;
    if ((a - pb).norm() > 1e-8 * scale) parity_match = false;
  }
  if (parity_match && !identity_match) {
    if (std::abs(beta0) <= tol.real_threshold) {
      throw Error(Errc::ParityObstruction, "only beta = pi/2 mod pi identifies the generators");
    }
    beta0 += beta0 > 0.0 ? -pi / 2.0 : pi / 2.0;
    U = exp_i_sign(beta0, v);
  }
  return {U, beta0};
}

Eigen::Matrix4d stabilizer_rotation(const Mat4& v, const CliffordSubspace& K, const Mat4& U,
                                    const Tolerance& tol) {
  (void)tol;
  const double scale = std::max(1.0, U.norm());
  if ((spin_adjoint(U) * U - Mat4::Identity()).norm() > 1e-8 * scale * scale) {
    throw Error(Errc::NotInStabilizer, "U is not unitary for the spin product");
  }
  const Mat4 Ui = spin_adjoint(U);
  if ((U * v * Ui - v).norm() > 1e-8 * std::max(1.0, v.norm())) {
    throw Error(Errc::NotInStabilizer, "U does not commute with v");
  }
  if (!same_span(conjugate(U, K), K, 1e-8)) throw Error(Errc::NotInStabilizer, "U does not preserve K");
  const auto e = complement_basis(K, v, 4);
  Eigen::Matrix4d O;
  for (int i = 0; i < 4; ++i) {
    const Mat4 ui = U * e[i] * Ui;
    for (int j = 0; j < 4; ++j) O(j, i) = -trace_inner(ui, e[j]).real();
  }
  if ((O.transpose() * O - Eigen::Matrix4d::Identity()).norm() > 1e-8 || O.determinant() < 0.0) {
    throw Error(Errc::NotInStabilizer, "induced map is not in SO(4)");
  }
  return O;
}

}  // namespace cfs
