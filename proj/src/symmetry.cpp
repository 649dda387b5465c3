#include <cmath>
#include <map>

#include <Eigen/SVD>

#include "cfs/geometry.hpp"

namespace cfs {

PairwiseAnalysis analyze_pairs(std::size_t n, const PairFunction& pair, const Tolerance& tol) {
  PairwiseAnalysis a;
  a.n = n;
  a.s.assign(n, spin_signature());
  a.conn.assign(n, std::vector<std::optional<SpinConnectionResult>>(n));
  a.pairs.assign(n, std::vector<std::optional<PointPairData>>(n));
  a.failure.assign(n, std::vector<std::string>(n));
  a.causal.assign(n, std::vector<std::optional<CausalType>>(n));
  std::vector<bool> have_s(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      try {
        a.pairs[i][j] = pair(i, j);
      } catch (const Error& e) {
        a.failure[i][j] = errc_name(e.code());
        continue;
      }
      const PointPairData& p = *a.pairs[i][j];
      if (!have_s[i]) {
        a.s[i] = p.s_x;
        have_s[i] = true;
      }
      a.causal[i][j] = classify_causal(closed_chain(p), tol);
      try {
        a.conn[i][j] = spin_connection(p, tol);
      } catch (const Error& e) {
        a.failure[i][j] = e.subreason().empty() ? errc_name(e.code()) : e.subreason();
      }
    }
  }
  return a;
}

std::vector<std::vector<Relation>> relation_matrix(const PairwiseAnalysis& a) {
  std::vector<std::vector<Relation>> rel(a.n, std::vector<Relation>(a.n, Relation::none));
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      if (a.conn[i][j]) rel[i][j] = a.conn[i][j]->orientation == Orientation::future ? Relation::future : Relation::past;
  return rel;
}

namespace {

bool connected(const std::vector<std::vector<Relation>>& rel, std::size_t i, std::size_t j) {
  return rel[i][j] != Relation::none;
}

// Counts violations of x < y < z => x < z among pairwise connected triples drawn from idx.
std::size_t transitivity_violations(const std::vector<std::vector<Relation>>& rel,
                                    const std::vector<std::size_t>& idx, std::size_t* triples) {
  std::size_t bad = 0;
  for (std::size_t x : idx)
    for (std::size_t y : idx)
      for (std::size_t z : idx) {
        if (x == y || y == z || x == z) continue;
        if (!connected(rel, x, y) || !connected(rel, y, z) || !connected(rel, x, z)) continue;
        if (triples) ++*triples;
        if (rel[x][y] == Relation::future && rel[y][z] == Relation::future && rel[x][z] != Relation::future) ++bad;
      }
  return bad;
}

}  // namespace

CausalReport check_causal_axioms(const std::vector<std::vector<Relation>>& rel) {
  CausalReport r;
  const std::size_t n = rel.size();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) {
    all[i] = i;
    if (rel[i][i] != Relation::none) ++r.irreflexivity_violations;
  }
  r.transitivity_violations = transitivity_violations(rel, all, &r.connected_triples);
  r.future_transitive.assign(n, true);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> nb{x};
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && connected(rel, x, y)) nb.push_back(y);
    r.future_transitive[x] = transitivity_violations(rel, nb, nullptr) == 0;
  }
  return r;
}

SymmetryReport check_symmetries(const PairwiseAnalysis& a, const Tolerance& tol) {
  SymmetryReport rep;
  const std::size_t n = a.n;
  std::vector<std::vector<std::size_t>> nb(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && a.conn[x][y]) nb[x].push_back(y);

  // Parity and Clifford-parallelism.
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y : nb[x]) {
      for (std::size_t z : nb[x]) {
        if (y == z) continue;
        try {
          identification_map(a.s[x], a.conn[x][y]->K_x_y, a.conn[x][z]->K_x_y, tol);
        } catch (const Error&) {
          rep.parity_preserving = false;
        }
        try {
          const Mat4 U = splice_map(a.s[x], a.conn[x][z]->v_xy, a.conn[x][y]->v_xy, tol);
          rep.max_splice_deviation = std::max(rep.max_splice_deviation, operator_norm(U - Mat4::Identity()));
        } catch (const Error&) {
          rep.max_splice_deviation = std::max(rep.max_splice_deviation, 1e300);
        }
      }
    }
  }
  rep.clifford_parallel = rep.max_splice_deviation <= 1e-8;

  // Chiral witness: unknown coordinates of u(x) in a reference home H_x = K_x^{(y0)}.
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t x = 0; x < n; ++x)
    if (!nb[x].empty()) slot.emplace(x, slot.size());
  if (slot.empty()) return rep;
  const auto home = [&](std::size_t x) -> const CliffordSubspace& { return a.conn[x][nb[x].front()]->K_x_y; };

  std::vector<Eigen::VectorXd> rows;
  const Eigen::Index cols = static_cast<Eigen::Index>(5 * slot.size());
  try {
    for (std::size_t x = 0; x < n; ++x) {
      if (nb[x].empty()) continue;
      const CliffordSubspace& Hx = home(x);
      const Eigen::Index ox = static_cast<Eigen::Index>(5 * slot[x]);
      for (std::size_t y : nb[x]) {
        const SpinConnectionResult& c = *a.conn[x][y];
        const Mat4 to_Hx = identification_map(a.s[x], c.K_x_y, Hx, tol).U;
        // <u(x), yhat_x> = 0
        const Mat4 yhat = to_Hx * spin_adjoint(c.U_xy) * c.v_xy * c.U_xy * to_Hx.inverse();
        Eigen::VectorXd row = Eigen::VectorXd::Zero(cols);
        for (int i = 0; i < 5; ++i) row(ox + i) = trace_inner(Hx.generators[i], yhat).real();
        rows.push_back(row);
        if (y < x) continue;
        // u(x) = nabla_{x,y} u(y)
        const CliffordSubspace& Hy = home(y);
        const Eigen::Index oy = static_cast<Eigen::Index>(5 * slot[y]);
        const Mat4 from_Hy = identification_map(a.s[y], Hy, c.K_y_x, tol).U;
        Mat5r T;
        for (int j = 0; j < 5; ++j) {
          TangentVector u{from_Hy * Hy.generators[j] * from_Hy.inverse(), c.K_y_x};
          u = metric_connection(c, u);
          T.col(j) = clifford_coords(Hx, to_Hx * u.rep * to_Hx.inverse()).real();
        }
        for (int i = 0; i < 5; ++i) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(cols);
          r(ox + i) = 1.0;
          for (int j = 0; j < 5; ++j) r(oy + j) -= T(i, j);
          rows.push_back(r);
        }
      }
    }
  } catch (const Error&) {
    rep.chirally_symmetric = false;
    return rep;
  }

  Eigen::MatrixXd M(static_cast<Eigen::Index>(std::max<std::size_t>(rows.size(), 1)), cols);
  M.setZero();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double nr = rows[k].norm();
    M.row(static_cast<Eigen::Index>(k)) = nr > 0.0 ? Eigen::VectorXd(rows[k] / nr) : rows[k];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd c = svd.matrixV().col(cols - 1);
  rep.chiral_residual = (M * c).norm();
  bool spacelike = true;
  for (const auto& [x, k] : slot) {
    const CliffordSubspace& Hx = home(x);
    Mat4 u = Mat4::Zero();
    for (int i = 0; i < 5; ++i) u += c(static_cast<Eigen::Index>(5 * k + i)) * Hx.generators[i];
    const double uu = trace_inner(u, u).real();
    const double cn = c.segment(static_cast<Eigen::Index>(5 * k), 5).squaredNorm();
    if (!(uu < -1e-6 * cn)) spacelike = false;
    rep.chiral_witness.push_back({u, Hx});
  }
  rep.chirally_symmetric = rep.chiral_residual < 1e-6 && spacelike;
  return rep;
}

}  // namespace cfs
