#include <catch2/catch_amalgamated.hpp>

#include "nctorus/axioms.hpp"

using namespace nctorus;

namespace {

const PhaseAngle kLambda{generic_lambda_turns()};

SpectralTripleBundle canonical_bundle(int n_max, SpinStructure spin = SpinStructure{}) {
  return make_bundle(Truncation(n_max, spin), kLambda, RealStructureParams{}, DiracParams{});
}

}  // namespace

TEST_CASE("axiom suite passes for the canonical bundle") {
  const AxiomReport rep = run_axiom_suite(canonical_bundle(6), 1e-12);
  for (const CheckRecord& c : rep.checks) {
    INFO(c.name << " residual " << c.residual);
    REQUIRE(c.pass);
  }
  REQUIRE(rep.all_pass());
}

TEST_CASE("residuals stay machine-zero as the truncation grows") {
  for (int n_max : {4, 6, 8}) {
    const AxiomReport rep = run_axiom_suite(canonical_bundle(n_max), 1e-12);
    INFO("n_max " << n_max << " worst " << rep.worst_residual());
    REQUIRE(rep.all_pass());
  }
}

TEST_CASE("cheap checks remain exact at a wide truncation") {
  const SpectralTripleBundle b = canonical_bundle(10);
  REQUIRE(check_torus_relation(b) < 1e-12);
  REQUIRE(check_jd_commute(b) < 1e-12);
}

TEST_CASE("axiom suite passes on every spin structure") {
  for (SpinStructure spin : all_spin_structures()) {
    for (int n_max : {4, 6}) {
      const AxiomReport rep = run_axiom_suite(canonical_bundle(n_max, spin), 1e-12);
      for (const CheckRecord& c : rep.checks) {
        INFO("spin " << spin.label() << " n_max " << n_max << " " << c.name << " residual "
                     << c.residual);
        REQUIRE(c.pass);
      }
    }
  }
}

TEST_CASE("torus relation") {
  SECTION("holds for any valid bundle") {
    REQUIRE(check_torus_relation(canonical_bundle(4)) < 1e-13);
  }
  SECTION("classical limit is exact") {
    const SpectralTripleBundle b = make_bundle(Truncation(4, SpinStructure{}), PhaseAngle(0.0),
                                               RealStructureParams{}, DiracParams{});
    REQUIRE(check_torus_relation(b) < 1e-15);
  }
  SECTION("mis-gauged pi(V) is detected") {
    BasisIndexMap map(Truncation(4, SpinStructure{}));
    const LinearOp u = rep_u(map, kLambda);
    const LinearOp v_bad = shift_phase_op(
        map, 0, 1, [&](const Site& x) { return kLambda.pow(+map.mu_of(x)); });
    const LinearOp defect =
        compose_lin_lin(u, v_bad) - kLambda.value() * compose_lin_lin(v_bad, u);
    const double res = interior_residual(defect, interior_mask(map, 2));
    const double expected = std::abs(Complex{1.0, 0.0} - kLambda.pow(2.0));
    REQUIRE(res > 0.1);
    REQUIRE(res == Catch::Approx(expected).margin(1e-12));
  }
}

TEST_CASE("reality conditions") {
  SECTION("canonical and generic-parameter structures pass") {
    for (auto rp : {RealStructureParams{}, RealStructureParams{2.3, 0.4, 1.0}}) {
      const SpectralTripleBundle b =
          make_bundle(Truncation(4, {HalfOffset::half, HalfOffset::zero}), kLambda, rp,
                      rp.phi == 0.0 ? DiracParams{}
                                    : DiracParams{{1, 0}, {0, 1}, {1, 0}, {-1, 0}});
      const RealityResiduals r = check_reality_conditions(b);
      REQUIRE(r.j_squared < 1e-13);
      REQUIRE(r.j_gamma_anticommute < 1e-13);
      REQUIRE(r.j_unitarity < 1e-13);
      REQUIRE(r.j_equivariance < 1e-13);
    }
  }
  SECTION("tampered phase keeps J^2 = -1 but breaks the commutant") {
    SpectralTripleBundle b = canonical_bundle(4);
    b.j = real_structure_custom(
        b.map, [&](double mu, double nu) { return kLambda.pow(+mu * nu); });
    const RealityResiduals r = check_reality_conditions(b);
    REQUIRE(r.j_squared < 1e-13);  // phase cancellation is sign-independent
    REQUIRE(check_zeroth_order(b) > 1e-2);
  }
}

TEST_CASE("zeroth order (commutant) condition") {
  SECTION("canonical structure is in the commutant") {
    REQUIRE(check_zeroth_order(canonical_bundle(4)) < 1e-13);
  }
  SECTION("phase outside the lemma family fails") {
    SpectralTripleBundle b = canonical_bundle(4);
    b.j = real_structure_custom(b.map, [&](double mu, double nu) {
      return kLambda.pow(-mu * nu) * std::polar(1.0, 0.3 * mu * mu);
    });
    REQUIRE(check_zeroth_order(b) > 1e-2);
  }
  SECTION("classical limit commutes for any phases") {
    const SpectralTripleBundle b =
        make_bundle(Truncation(4, SpinStructure{}), PhaseAngle(0.0),
                    RealStructureParams{1.3, 0.6, 0.0},
                    DiracParams{{1, 0}, {0, 1}, {1, 0}, {-1, 0}});
    REQUIRE(check_zeroth_order(b) < 1e-13);
  }
}

TEST_CASE("first order condition") {
  SECTION("linear family solves it") {
    REQUIRE(check_first_order(canonical_bundle(5)) < 1e-12);
  }
  SECTION("exponential family solves it too") {
    const SpectralTripleBundle b =
        make_bundle(Truncation(5, SpinStructure{}), kLambda, RealStructureParams{1.0, 0.7, 0.0},
                    DiracParams{{1, 0}, {0, 1}, {1, 0}, {-1, 0}});
    REQUIRE(check_first_order(b) < 1e-12);
  }
  SECTION("out-of-family diagonal fails") {
    SpectralTripleBundle b = canonical_bundle(5);
    b.dirac = dirac_diagonal(b.map, [](double mu, double) { return Complex{mu * mu, 0.0}; });
    REQUIRE(check_first_order(b) > 0.5);
  }
}

TEST_CASE("JD = DJ") {
  SECTION("linear case with eps = 0, arbitrary tau") {
    SpectralTripleBundle b = canonical_bundle(4);
    REQUIRE(check_jd_commute(b) < 1e-12);
    DiracParams dp;
    dp.tau1 = Complex{0.3, -1.2};
    dp.tau2 = Complex{2.0, 0.7};
    const SpectralTripleBundle b2 =
        make_bundle(Truncation(4, SpinStructure{}), kLambda, RealStructureParams{}, dp);
    REQUIRE(check_jd_commute(b2) < 1e-12);
  }
  SECTION("nonzero eps breaks it by 2|eps| on every column") {
    SpectralTripleBundle b = canonical_bundle(4);
    b.dirac = dirac_diagonal(b.map, [](double mu, double nu) {
      return Complex{mu, nu} + Complex{0.2, 0.0};
    });
    const double res = check_jd_commute(b);
    REQUIRE(res > 0.1);
    REQUIRE(res == Catch::Approx(0.4).margin(1e-12));
  }
  SECTION("exponential case with tau0 = -eps passes") {
    const SpectralTripleBundle b =
        make_bundle(Truncation(4, SpinStructure{}), kLambda, RealStructureParams{1.0, 0.7, 0.0},
                    DiracParams{{1, 0}, {0, 1}, {1, 0}, {-1, 0}});
    REQUIRE(check_jd_commute(b) < 1e-12);
  }
}

TEST_CASE("suite is deterministic and theta-invariant") {
  const AxiomReport a = run_axiom_suite(canonical_bundle(4), 1e-12);
  const AxiomReport b = run_axiom_suite(canonical_bundle(4), 1e-12);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    REQUIRE(a.checks[i].residual == b.checks[i].residual);  // bit-identical

  const SpectralTripleBundle t0 = make_bundle(Truncation(4, SpinStructure{}), kLambda,
                                              RealStructureParams{0, 0, 0}, DiracParams{});
  const SpectralTripleBundle t1 = make_bundle(Truncation(4, SpinStructure{}), kLambda,
                                              RealStructureParams{0, 0, 1.234}, DiracParams{});
  REQUIRE(std::abs(check_zeroth_order(t0) - check_zeroth_order(t1)) < 1e-13);
  REQUIRE(std::abs(check_first_order(t0) - check_first_order(t1)) < 1e-13);
}

TEST_CASE("suite passes for the spurious exponential class") {
  const SpectralTripleBundle b =
      make_bundle(Truncation(6, SpinStructure{}), kLambda, RealStructureParams{1.0, 0.7, 0.0},
                  DiracParams{{1, 0}, {0, 1}, {1, 0}, {-1, 0}});
  const AxiomReport rep = run_axiom_suite(b, 1e-12);
  for (const CheckRecord& c : rep.checks) {
    INFO(c.name << " residual " << c.residual);
    REQUIRE(c.pass);
  }
}
