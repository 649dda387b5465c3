#pragma once

#include <vector>

#include "cfs/spin_algebra.hpp"

namespace cfs {

/// Dirac representation: gamma(0) = S, gamma(k) = [[0, sigma_k], [-sigma_k, 0]].
const Mat4& gamma(int mu);

/// Pseudoscalar slot e4 = i [[0, 1], [1, 0]] (= i gamma^5, squares to -1).
const Mat4& gamma_e4();

/// Feynman slash with signature (+,-,-,-): x^0 g0 - x^1 g1 - x^2 g2 - x^3 g3.
Mat4 slash(const RVec4& x);

struct CliffordSubspace {
  std::array<Mat4, 5> generators;
  Mat5r gram = Mat5r::Zero();
};

/// Wraps five operators and fills the Gram matrix <e_i, e_j> = Re (1/4) Tr(e_i e_j).
CliffordSubspace make_clifford(const std::array<Mat4, 5>& generators);

/// The standard set (g0, g1, g2, g3, e4).
const CliffordSubspace& standard_clifford();

/// Largest deviation of {e_i, e_j} from 2 gram_ij 1, and of e_i from spin symmetry.
double anticommutation_residual(const CliffordSubspace& K);

enum class CliffordSignature { s14, s32, invalid };

const char* signature_name(CliffordSignature s) noexcept;

/// Inertia of the Gram matrix. Throws DegenerateGram when |det| < rank_threshold;
/// returns invalid when the anticommutation relations fail.
CliffordSignature clifford_signature(const CliffordSubspace& K, const Tolerance& tol = {});

/// Complex coefficients c with X = sum c_i e_i in the least-squares sense.
Eigen::Matrix<cplx, 5, 1> clifford_coords(const CliffordSubspace& K, const Mat4& X);

/// Relative residual of X after projection onto span(K).
double span_residual(const CliffordSubspace& K, const Mat4& X);

/// Orthogonal projection (w.r.t. the trace inner product) of X onto span(K).
Mat4 project_onto(const CliffordSubspace& K, const Mat4& X);

/// Span equality: every generator of each lies in the span of the other.
bool same_span(const CliffordSubspace& A, const CliffordSubspace& B, double tol = 1e-8);

/// Conjugates every generator: U e_i U^{-1}.
CliffordSubspace conjugate(const Mat4& U, const CliffordSubspace& K);

bool is_sign_operator(const Mat4& A, const Tolerance& tol = {});

/// Unique signature-(1,4) extension of a signature-(1,1) pair.
CliffordSubspace extend_clifford(const Mat4& e0, const Mat4& e4, const Tolerance& tol = {});

/// Spin basis F (columns) in which v = diag(1,1,-1,-1) and K is spanned by the
/// standard generators. Requires v in K with <v,v> = 1.
Mat4 adapted_frame(const CliffordSubspace& K, const Mat4& v);

bool generically_separated(const Mat4& v, const Mat4& w, const Tolerance& tol = {});

struct SyncResult {
  Mat4 rho = Mat4::Zero();
  Mat4 U = Mat4::Identity();
  CliffordSubspace K_v;
  CliffordSubspace K_vt;
  double alpha = 0.0;
  double beta = 0.0;
  Mat4 frame = Mat4::Identity();  // the constructed spin basis
};

/// Synchronization of two generically separated sign operators v, w:
/// K_v contains v, K_vt contains w, K_vt = U K_v U^{-1} with U = exp(i rho).
SyncResult synchronize(const Mat4& v, const Mat4& w, const Tolerance& tol = {});

struct Identification {
  Mat4 U = Mat4::Identity();
  double beta = 0.0;
};

/// U = exp(i beta v), beta in (-pi/2, pi/2), with U K U^{-1} = K2.
Identification identification_map(const Mat4& v, const CliffordSubspace& K, const CliffordSubspace& K2,
                                   const Tolerance& tol = {});

/// Induced SO(4) matrix on span(e1..e4) of a stabilizer element U.
Eigen::Matrix4d stabilizer_rotation(const Mat4& v, const CliffordSubspace& K, const Mat4& U,
                                    const Tolerance& tol = {});

/// Pseudo-orthonormal basis of the complement of a non-null u in span(K), by pivoted
/// Gram-Schmidt over the generators; each vector normalized to |<e,e>| = 1.
std::vector<Mat4> orthogonal_complement(const CliffordSubspace& K, const Mat4& u, std::size_t count);

/// exp(i beta v) for a sign operator v (v^2 = 1).
Mat4 exp_i_sign(double beta, const Mat4& v);

}  // namespace cfs
