#pragma once

#include <vector>

#include "cfs/errors.hpp"
#include "cfs/types.hpp"

namespace cfs {

/// Signature matrix S = diag(1, 1, -1, -1) of the spin scalar product.
const Mat4& spin_signature();

/// Spin scalar product <u|v> = u^dagger S v.
cplx spin_product(const Vec4& u, const Vec4& v);

/// Adjoint with respect to the spin scalar product, S A^dagger S.
Mat4 spin_adjoint(const Mat4& A);

/// (1/4) Tr(A B).
cplx trace_inner(const Mat4& A, const Mat4& B);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& A);

enum class Definiteness { positive, negative, indefinite, null };

const char* definiteness_name(Definiteness d) noexcept;

struct Eigenspace {
  cplx lambda;
  int multiplicity = 0;
  std::vector<int> columns;  // indices into EigenSystem::eigenvectors
  Definiteness definiteness = Definiteness::indefinite;
  bool real = false;
};

struct EigenSystem {
  std::array<cplx, 4> eigenvalues{};
  Mat4 eigenvectors = Mat4::Identity();  // columns, grouped by eigenspace
  std::array<Definiteness, 4> definiteness{};
  std::vector<Eigenspace> spaces;

  /// Spectral projector onto eigenspace k (biorthogonal, sums to identity).
  Mat4 projector(std::size_t k) const;
};

/// Eigenvalues only, snapped to the real axis where |Im| <= thr (1 + |lambda|)
/// relative to the operator scale. Never throws.
std::array<cplx, 4> eigenvalues(const Mat4& A, const Tolerance& tol = {});

/// Full eigen-decomposition with eigenspace definiteness.
/// Throws DefectiveMatrix when no complete eigenbasis exists within tolerance,
/// or when a real eigenvalue has a degenerate (null) eigenspace.
EigenSystem spectrum(const Mat4& A, const Tolerance& tol = {});

/// B with B B A = 1 for A with real positive spectrum; B commutes with A.
Mat4 principal_inv_sqrt(const Mat4& A, const Tolerance& tol = {});

/// Principal square root, same preconditions as principal_inv_sqrt.
Mat4 principal_sqrt(const Mat4& A, const Tolerance& tol = {});

/// Spin-unitary exp(i H) for spin-symmetric H; used by tests and generators.
Mat4 spin_exp_i(const Mat4& H);

}  // namespace cfs
