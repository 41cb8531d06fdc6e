#include <catch2/catch_amalgamated.hpp>

#include "nctorus/classify.hpp"

using namespace nctorus;

namespace {

const PhaseAngle kLambda{generic_lambda_turns()};

IntertwinerProblem problem(SpinStructure source, SpinStructure target,
                           PhaseAngle lambda = kLambda) {
  IntertwinerProblem pr;
  pr.source = {source, RealStructureParams{}};
  pr.target = {target, RealStructureParams{}};
  pr.lambda = lambda;
  return pr;
}

bool admissible_contains(const AdmissibleShiftSet& s, int k, int l) {
  for (const ShiftCandidate& c : s.admissible)
    if (c.k == k && c.l == l) return true;
  return false;
}

}  // namespace

TEST_CASE("relabeled structures square to -1 on the integer window") {
  BasisIndexMap map(Truncation(4, SpinStructure{}));
  for (SpinStructure spin : all_spin_structures()) {
    const AntilinearOp j =
        build_relabeled_structure(map, kLambda, {spin, RealStructureParams{}});
    const LinearOp jj = compose_anti_anti(j, j) + LinearOp::identity(map.dim());
    REQUIRE(interior_residual(jj, interior_mask(map, 1)) < 1e-13);
  }
  // and the (0,0) relabeling is the plain structure itself
  const AntilinearOp a = build_relabeled_structure(map, kLambda, {SpinStructure{}, {}});
  const AntilinearOp b = real_structure(map, kLambda, RealStructureParams{});
  REQUIRE((a.m - b.m).norm() == 0.0);
}

TEST_CASE("admissible shifts") {
  SECTION("identical structures admit only the zero shift") {
    for (SpinStructure spin : all_spin_structures()) {
      const AdmissibleShiftSet s = admissible_shifts(problem(spin, spin));
      REQUIRE(s.admissible.size() == 1);
      REQUIRE(admissible_contains(s, 0, 0));
      REQUIRE_FALSE(s.rational_angle_warning);
    }
  }
  SECTION("distinct structures admit nothing") {
    const auto& spins = all_spin_structures();
    for (std::size_t i = 0; i < spins.size(); ++i)
      for (std::size_t j = 0; j < spins.size(); ++j) {
        if (i == j) continue;
        const AdmissibleShiftSet s = admissible_shifts(problem(spins[i], spins[j]));
        REQUIRE(s.admissible.empty());
      }
  }
  SECTION("rational angle degenerates the scan and warns") {
    const AdmissibleShiftSet s =
        admissible_shifts(problem(SpinStructure{}, SpinStructure{}, PhaseAngle(0.5)));
    REQUIRE(s.rational_angle_warning);
    REQUIRE(s.admissible.size() > 1);  // extra shifts collapse at lambda^2 = 1
  }
  SECTION("symmetry under source/target swap with negated shift") {
    const auto& spins = all_spin_structures();
    for (std::size_t i = 0; i < spins.size(); ++i)
      for (std::size_t j = 0; j < spins.size(); ++j) {
        const AdmissibleShiftSet fwd = admissible_shifts(problem(spins[i], spins[j]));
        const AdmissibleShiftSet bwd = admissible_shifts(problem(spins[j], spins[i]));
        for (const ShiftCandidate& c : fwd.admissible)
          REQUIRE(admissible_contains(bwd, -c.k, -c.l));
      }
  }
  SECTION("empty sample window is refused") {
    IntertwinerProblem pr = problem(SpinStructure{}, SpinStructure{});
    pr.sample_halfwidth = 0;
    REQUIRE_THROWS_AS(admissible_shifts(pr), std::invalid_argument);
  }
}

TEST_CASE("intertwiner verdicts form four singleton classes") {
  const auto matrix = classify_all_pairs(kLambda);
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      INFO("pair " << i << " " << j);
      REQUIRE(matrix[i][j].equivalent == (i == j));
      if (i == j) {
        // certificate W = +-identity
        REQUIRE(std::abs(matrix[i][j].w_plus - matrix[i][j].w_minus) < 1e-12);
        REQUIRE(std::abs(std::abs(matrix[i][j].w_plus) - 1.0) < 1e-12);
        REQUIRE(std::abs(matrix[i][j].w_plus.imag()) < 1e-12);
        REQUIRE(matrix[i][j].certificate_residual <= 1e-12);
      }
    }
  // symmetric, reflexive, trivially transitive: an equivalence relation
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = 0; j < matrix[i].size(); ++j)
      REQUIRE(matrix[i][j].equivalent == matrix[j][i].equivalent);
}

TEST_CASE("unconstrained counterexample intertwines J00 and J0h") {
  BasisIndexMap map(Truncation(5, SpinStructure{}));
  const CounterexampleReport rep = counterexample_unconstrained_w(map, kLambda);

  REQUIRE(rep.intertwine_residual < 1e-12);
  REQUIRE(rep.unitarity_residual < 1e-12);
  REQUIRE(rep.gamma_anticommute_residual < 1e-14);
  REQUIRE(rep.gamma_commute_defect == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(std::max(rep.alg_residual_u, rep.alg_residual_v) > 0.9);

  // frozen value: ||[W, pi(U)]|| = |lambda^{1/2} - 1| on every interior column
  const double expected = std::abs(kLambda.pow(0.5) - Complex{1.0, 0.0});
  REQUIRE(rep.alg_residual_u == Catch::Approx(expected).margin(1e-12));

  // half-offset windows are not the aligned integer window
  BasisIndexMap half(Truncation(5, {HalfOffset::zero, HalfOffset::half}));
  REQUIRE_THROWS_AS(counterexample_unconstrained_w(half, kLambda), std::invalid_argument);
}
