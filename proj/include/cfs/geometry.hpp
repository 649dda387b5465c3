#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfs/clifford.hpp"

namespace cfs {

/// Kernel data of a point pair: P(x,y) : S_y -> S_x, its adjoint, and the Euclidean sign operators.
struct PointPairData {
  Mat4 P_xy = Mat4::Identity();
  Mat4 P_yx = Mat4::Identity();
  Mat4 s_x = spin_signature();
  Mat4 s_y = spin_signature();
};

/// Fills P_yx with the spin adjoint of P_xy.
PointPairData make_pair_data(const Mat4& P_xy, const Mat4& s_x, const Mat4& s_y);

/// The pair seen from y.
PointPairData swapped(const PointPairData& pair);

/// A_xy = P(x,y) P(y,x).
Mat4 closed_chain(const PointPairData& pair);

enum class CausalType { timelike, spacelike, lightlike };
const char* causal_name(CausalType c) noexcept;

CausalType classify_causal(const Mat4& A, const Tolerance& tol = {});

struct TimelikeDiagnostics {
  bool properly_timelike = false;
  bool degenerate_spectrum = false;  // some eigenvalue of multiplicity > 2 or indefinite eigenspace
  std::string reason;
};

TimelikeDiagnostics timelike_diagnostics(const Mat4& A, const Tolerance& tol = {});
bool properly_timelike(const Mat4& A, const Tolerance& tol = {});

/// Sign operator commuting with A, +1 on its positive definite and -1 on its negative definite
/// eigenspaces. Throws NotProperlyTimelike or AmbiguousDirection.
Mat4 directional_sign(const Mat4& A, const Tolerance& tol = {});

enum class Orientation { future, past };
const char* orientation_name(Orientation o) noexcept;

/// Phases of P(x,y) written in adapted bases (v = diag(1,1,-1,-1) at both points).
struct PhaseFix {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double phi = 0.0;
  bool time_directed = false;
  Mat2 R_plus, R_minus;  // positive parts
  Mat2 V_plus, V_minus;  // SU(2) parts
  double offdiag_residual = 0.0;
};

PhaseFix fix_phase(const Mat4& P_adapted, const Tolerance& tol = {});

struct SpinConnectionResult {
  Mat4 D = Mat4::Identity();
  double phi = 0.0;
  Mat4 v_xy, v_yx;
  Mat4 A_xy, A_yx;
  CliffordSubspace K_xy, K_yx;    // extensions of v_xy, v_yx synchronized with s_x, s_y
  CliffordSubspace K_x_y, K_y_x;  // K_x^{(y)} and K_y^{(x)}: tangent-space representatives
  Mat4 U_xy = Mat4::Identity();   // K_xy = U_xy K_x^{(y)} U_xy^{-1}
  Mat4 U_yx = Mat4::Identity();
  PhaseFix phase;
  Orientation orientation = Orientation::future;
};

/// Throws NotSpinConnectable with subreason not_properly_timelike, not_generically_separated
/// or not_time_directed.
SpinConnectionResult spin_connection(const PointPairData& pair, const Tolerance& tol = {});

struct TangentVector {
  Mat4 rep = Mat4::Zero();
  CliffordSubspace home;
};

/// Checks that rep lies in span(home).
TangentVector make_tangent(const CliffordSubspace& home, const Mat4& rep);

/// Minkowski product <u, w> of two vectors in the same home.
double tangent_inner(const TangentVector& u, const TangentVector& w);

/// nabla_{x,y}: T_y -> T_x. u_y must live in K_y^{(x)}, else HomeMismatch.
TangentVector metric_connection(const SpinConnectionResult& conn, const TangentVector& u_y);

struct DirectionalTangents {
  TangentVector y_x;
  TangentVector yhat_x;
  double factor = 0.0;           // y_x = factor * yhat_x
  double expected_factor = 0.0;  // (1/4) sin(phi) Tr(A^{1/2})
  double proportionality_residual = 0.0;
};

DirectionalTangents tangent_vectors(const SpinConnectionResult& conn, const PointPairData& pair,
                                    const Tolerance& tol = {});

/// U_x^{(z|y)} for v1 = v_xz, v2 = v_xy: maps K_xy to K_xz.
Mat4 splice_map(const Mat4& s_x, const Mat4& v1, const Mat4& v2, const Tolerance& tol = {});

/// Conjugation u -> U u U^{-1} re-homed to a given subspace.
TangentVector conjugate_tangent(const Mat4& U, const TangentVector& u, const CliffordSubspace& new_home);

struct Curvatures {
  CliffordSubspace home;                  // K_x^{(z)}
  Mat5r R_metric = Mat5r::Identity();     // column j: coordinates of R(e_j) in home's generators
  Mat4 R_metric_unitary = Mat4::Identity();
  Mat4 R_spin_unspliced = Mat4::Identity();
  Mat4 R_spin_spliced = Mat4::Identity();
  Mat4 U_xz = Mat4::Identity();
};

/// Holonomies of the triangle x -> y -> z -> x. Throws NotSpinConnectable naming the pair.
Curvatures curvatures(const PointPairData& xy, const PointPairData& yz, const PointPairData& zx,
                      const Tolerance& tol = {});

TangentVector apply_metric_curvature(const Curvatures& c, const TangentVector& u);

struct ReducedTangent {
  std::array<Mat4, 4> generators;  // timelike first
  Eigen::Matrix4d gram = Eigen::Matrix4d::Zero();
  Mat4 e5 = Mat4::Zero();
};

/// Orthogonal complement of a spacelike u in K. Throws NotSpacelike.
ReducedTangent reduce_tangent(const CliffordSubspace& K, const TangentVector& u);

// ---- point sets ----

enum class Relation { none, future, past };

using PairFunction = std::function<PointPairData(std::size_t, std::size_t)>;

struct PairwiseAnalysis {
  std::size_t n = 0;
  std::vector<Mat4> s;  // Euclidean sign operators
  std::vector<std::vector<std::optional<SpinConnectionResult>>> conn;
  std::vector<std::vector<std::optional<PointPairData>>> pairs;
  std::vector<std::vector<std::string>> failure;  // empty when connectable
  std::vector<std::vector<std::optional<CausalType>>> causal;
};

/// Evaluates all ordered pairs, including the diagonal. Errors in the pair function or in the
/// connection are recorded, not thrown.
PairwiseAnalysis analyze_pairs(std::size_t n, const PairFunction& pair, const Tolerance& tol = {});

std::vector<std::vector<Relation>> relation_matrix(const PairwiseAnalysis& a);

struct CausalReport {
  std::size_t irreflexivity_violations = 0;
  std::size_t transitivity_violations = 0;  // among pairwise connected triples
  std::size_t connected_triples = 0;
  std::vector<bool> future_transitive;  // neighbourhood {x} u I(x) of each point
};

CausalReport check_causal_axioms(const std::vector<std::vector<Relation>>& rel);

struct SymmetryReport {
  bool parity_preserving = true;
  bool clifford_parallel = true;
  bool chirally_symmetric = true;
  double max_splice_deviation = 0.0;
  double chiral_residual = 0.0;
  std::vector<TangentVector> chiral_witness;  // u(x) per point with a tangent representative
};

SymmetryReport check_symmetries(const PairwiseAnalysis& a, const Tolerance& tol = {});

}  // namespace cfs
