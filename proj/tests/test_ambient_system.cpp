#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cfs/ambient_system.hpp"
#include "support.hpp"

using namespace cfs;

namespace {

AmbientOperator diag_op(std::initializer_list<double> d, std::size_t f) {
  AmbientOperator x = AmbientOperator::Zero(f, f);
  int i = 0;
  for (double v : d) x(i, i) = v, ++i;
  return x;
}

}  // namespace

TEST_CASE("validate_point") {
  const PointDiagnostics z = validate_point(AmbientOperator::Zero(8, 8));
  CHECK_FALSE(z.regular);
  CHECK(z.rank == 0);
  CHECK(validate_point(diag_op({1, 1, -1, -1}, 8)).regular);
  CHECK_THROWS_AS(validate_point(diag_op({1, 1, 1, -1}, 8)), Error);
  AmbientOperator h = diag_op({1, 1, -1, -1}, 6);
  h(0, 1) = cplx(0, 1);
  CHECK_THROWS_AS(validate_point(h), Error);
}

TEST_CASE("localize") {
  const LocalSpin a = localize(diag_op({-1, -1, 1, 1}, 8));
  CHECK((a.E_x - spin_signature()).norm() < 1e-14);  // -x^{-1} = diag(1, 1, -1, -1)
  CHECK((a.E_gram - Mat4::Identity()).norm() < 1e-14);
  CHECK((a.s_x - spin_signature()).norm() < 1e-14);

  const LocalSpin b = localize(diag_op({-2, -2, 3, 3}, 8));
  Eigen::Vector4d e = b.E_x.diagonal().real();
  CHECK((e - Eigen::Vector4d(0.5, 0.5, -1.0 / 3.0, -1.0 / 3.0)).norm() < 1e-14);
  e = b.E_gram.diagonal().real();
  CHECK((e - Eigen::Vector4d(0.5, 0.5, 1.0 / 3.0, 1.0 / 3.0)).norm() < 1e-14);

  CHECK_THROWS_AS(localize(diag_op({-1, 1}, 8)), Error);
}

TEST_CASE("Hilbert product from the spin product and the Euclidean operator") {
  const AmbientSystem sys = random_system(12, 1, 7);
  const LocalSpin L = localize(sys.points[0]);
  test::Rng rng(17);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Vec4 a = test::random_matrix(rng).col(0), b = test::random_matrix(rng).col(0);
    const cplx hilbert = (L.basis * a).dot(L.basis * b);
    const cplx spin = spin_product(a, L.E_x * b);
    worst = std::max(worst, std::abs(hilbert - spin) / std::max(1.0, std::abs(hilbert)));
    // the spin product itself is -<u|x v>
    const cplx sp = -(L.basis * a).dot(sys.points[0] * (L.basis * b));
    worst = std::max(worst, std::abs(sp - spin_product(a, b)) / std::max(1.0, std::abs(sp)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("localize under scaling") {
  const AmbientSystem sys = random_system(10, 1, 9);
  const LocalSpin a = localize(sys.points[0]);
  const LocalSpin b = localize(2.5 * sys.points[0]);
  CHECK((b.E_x - a.E_x / 2.5).norm() < 1e-10);
  CHECK((b.s_x - a.s_x).norm() == 0.0);
}

TEST_CASE("kernel") {
  const AmbientSystem sys = random_system(16, 1, 3);
  const LocalSpin L = localize(sys.points[0]);
  const Mat4 A = closed_chain(make_pair_data(ambient_kernel(sys.points[0], L, sys.points[0], L), L.s_x, L.s_x));
  auto ev = eigenvalues(A);
  std::vector<double> got, ref;
  for (cplx l : ev) got.push_back(l.real());
  for (int a = 0; a < 4; ++a) ref.push_back(L.lambda(a) * L.lambda(a));
  std::sort(got.begin(), got.end());
  std::sort(ref.begin(), ref.end());
  for (int a = 0; a < 4; ++a) CHECK(std::abs(got[a] - ref[a]) < 1e-9 * ref.back());

  const AmbientOperator x = diag_op({-1, -2, 3, 4}, 8), y = diag_op({-5, -1, 2, 1}, 8);
  const Mat4 P = ambient_kernel(x, localize(x), y, localize(y));
  // the spin bases order eigenvectors by eigenvalue, so P is a permuted diagonal
  for (int b = 0; b < 4; ++b) CHECK((P.col(b).array().abs() > 1e-12).count() == 1);
}

TEST_CASE("closed chain spectrum equals the nontrivial spectrum of x y") {
  for (std::uint64_t seed = 20; seed < 40; ++seed) {
    const AmbientSystem sys = random_system(16, 2, seed);
    const std::vector<LocalSpin> loc{localize(sys.points[0]), localize(sys.points[1])};
    auto ev = eigenvalues(closed_chain(ambient_pair(sys, loc, 0, 1)));
    auto ref = nontrivial_product_spectrum(sys.points[0], sys.points[1]);
    const double scale = std::abs(ref[0]);
    for (cplx l : ev) {
      auto it = std::min_element(ref.begin(), ref.end(),
                                 [&](cplx a, cplx b) { return std::abs(a - l) < std::abs(b - l); });
      CHECK(std::abs(*it - l) < 1e-8 * scale);
      *it = cplx(1e300);
    }
  }
}

TEST_CASE("random systems") {
  const AmbientSystem one = random_system(4, 1, 1);
  CHECK(validate_point(one.points[0]).regular);
  const AmbientSystem a = random_system(16, 10, 42), b = random_system(16, 10, 42);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK((a.points[k] - b.points[k]).norm() == 0.0);
    CHECK(validate_point(a.points[k]).regular);
  }
}

TEST_CASE("system JSON round trip") {
  const AmbientSystem a = random_system(6, 3, 5);
  const AmbientSystem b = system_from_json(system_to_json(a));
  REQUIRE(b.points.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK((a.points[k] - b.points[k]).norm() == 0.0);
  CHECK_THROWS_AS(system_from_json("{\"f\": 4, \"points\": [[1, 2]]}"), Error);
  CHECK_THROWS_AS(system_from_json("not json"), Error);
  CHECK(system_from_json("{\"f\": 4, \"points\": []}").points.empty());
}
