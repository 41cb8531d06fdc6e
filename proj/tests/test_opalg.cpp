#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nctorus/lattice.hpp"
#include "nctorus/opalg.hpp"
#include "nctorus/triple.hpp"

using namespace nctorus;

namespace {

Matrix random_matrix(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex{u(rng), u(rng)};
  return m;
}

}  // namespace

TEST_CASE("phases have unit modulus and accumulate as angles") {
  PhaseAngle lam(generic_lambda_turns());
  REQUIRE(std::abs(lam.value()) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(std::abs(lam.pow(-17.5)) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(std::abs(lam.pow(3.0) - lam.value() * lam.value() * lam.value()) < 1e-14);
}

TEST_CASE("linear composition basics") {
  const int dim = 8;
  const LinearOp a{random_matrix(dim, 1)};
  REQUIRE((compose_lin_lin(LinearOp::identity(dim), a).m - a.m).norm() == 0.0);
  const LinearOp b{random_matrix(dim, 2)};
  REQUIRE_THROWS_AS(compose_lin_lin(a, LinearOp::identity(dim + 1)), std::invalid_argument);
  REQUIRE((compose_lin_lin(a, b).m - a.m * b.m).norm() == 0.0);
}

TEST_CASE("torus relation via composition, and a permutation-phase inverse") {
  BasisIndexMap map(Truncation(4, SpinStructure{}));
  PhaseAngle lam(generic_lambda_turns());
  const LinearOp u = rep_u(map, lam), v = rep_v(map, lam);
  const LinearOp defect = compose_lin_lin(u, v) - lam.value() * compose_lin_lin(v, u);
  REQUIRE(interior_residual(defect, interior_mask(map, 2)) < 1e-14);

  // adjoint of the interior-exact unitary pi(U) inverts it on the interior
  const LinearOp uu = compose_lin_lin(adjoint(u), u) - LinearOp::identity(map.dim());
  REQUIRE(interior_residual(uu, interior_mask(map, 1)) < 1e-15);
}

TEST_CASE("antilinear composition rules") {
  BasisIndexMap map(Truncation(3, SpinStructure{}));
  PhaseAngle lam(generic_lambda_turns());
  const AntilinearOp j = real_structure(map, lam, RealStructureParams{});
  const int dim = map.dim();

  SECTION("j o j = -identity for the canonical structure") {
    const LinearOp jj = compose_anti_anti(j, j);
    REQUIRE((jj.m + Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("j o identity = j") {
    REQUIRE((compose_anti_lin(j, LinearOp::identity(dim)).m - j.m).norm() == 0.0);
  }
  SECTION("gamma o j + j o gamma = 0") {
    const LinearOp gamma = grading_op(map);
    const AntilinearOp defect = compose_lin_anti(gamma, j) + compose_anti_lin(j, gamma);
    REQUIRE(interior_residual(defect, interior_mask(map, 0)) == 0.0);
  }
  SECTION("compose_anti_anti matches its definition") {
    const AntilinearOp k{random_matrix(dim, 3)};
    REQUIRE((compose_anti_anti(j, k).m - j.m * k.m.conjugate()).norm() == 0.0);
  }
  SECTION("antilinearity at the vector level") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex{u(rng), u(rng)};
    const Complex alpha{u(rng), u(rng)};
    REQUIRE((j.apply(alpha * v) - std::conj(alpha) * j.apply(v)).norm() < 1e-13);
  }
}

TEST_CASE("adjoints") {
  const int dim = 10;
  const LinearOp a{random_matrix(dim, 4)}, b{random_matrix(dim, 5)};
  REQUIRE((adjoint(adjoint(a)).m - a.m).norm() == 0.0);
  REQUIRE((adjoint(compose_lin_lin(a, b)).m -
           compose_lin_lin(adjoint(b), adjoint(a)).m)
              .cwiseAbs()
              .maxCoeff() < 1e-13);

  BasisIndexMap map(Truncation(3, SpinStructure{}));
  const AntilinearOp j = real_structure(map, PhaseAngle(0.3), RealStructureParams{});
  REQUIRE((anti_adjoint(anti_adjoint(j)).m - j.m).norm() == 0.0);
  const LinearOp jj = compose_anti_anti(anti_adjoint(j), j);
  REQUIRE((jj.m - Matrix::Identity(map.dim(), map.dim())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("interior residual metric") {
  BasisIndexMap map(Truncation(3, SpinStructure{}));
  const int dim = map.dim();
  REQUIRE(interior_residual(LinearOp::zero(dim), interior_mask(map, 1)) == 0.0);
  REQUIRE(interior_residual(LinearOp::identity(dim), interior_mask(map, 2)) == 1.0);

  // monotone non-increasing in depth
  const LinearOp a{random_matrix(dim, 6)};
  double prev = interior_residual(a, interior_mask(map, 0));
  for (int d = 1; d <= 3; ++d) {
    const double cur = interior_residual(a, interior_mask(map, d));
    REQUIRE(cur <= prev);
    prev = cur;
  }
}
