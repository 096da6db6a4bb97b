#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qagree/epistemics.hpp"
#include "qagree/scenarios.hpp"
#include "test_support.hpp"

using namespace qagree;
using namespace qagree::testing;

TEST_CASE("the commuting example reproduces its quoted probabilities") {
    const double theta = std::numbers::pi / 3.0;
    const Scenario s = example1(theta);
    CHECK(s.dim() == 48);
    const double c2 = std::cos(theta / 2) * std::cos(theta / 2);

    CHECK(cond_prob(s.property, s.alice.projectors[0], s.rho).value ==
          doctest::Approx(c2).epsilon(1e-12));  // cos^2(pi/6) = 3/4
    CHECK(cond_prob(s.property, s.alice.projectors[1], s.rho).value ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cond_prob(s.property, s.bob.projectors[0], s.rho).value ==
          doctest::Approx(c2).epsilon(1e-12));
    CHECK(cond_prob(s.property, s.bob.projectors[1], s.rho).value ==
          doctest::Approx(c2).epsilon(1e-12));
    CHECK(cond_prob(s.property, s.bob.projectors[2], s.rho).value ==
          doctest::Approx(1.0 - c2).epsilon(1e-12));

    // Alice's second branch sits at 1/2 for every angle
    for (double th : {0.3, 1.1, 2.9})
        CHECK(cond_prob(example1(th).property, example1(th).alice.projectors[1],
                        example1(th).rho)
                  .value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("the commuting example at the endpoints") {
    for (double theta : {0.0, std::numbers::pi}) {
        const Scenario s = example1(theta);
        const double q = std::cos(theta / 2) * std::cos(theta / 2);
        const Classification c = classify(s, q, q);
        CHECK(c.kind == OutcomeKind::Agreement);
        CHECK(c.trace.cc_weight == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(c.trace.stabilization_index >= 1);
    }
}

TEST_CASE("the CCD example reproduces its quoted values") {
    const Scenario s = example2();
    CHECK(s.dim() == 12);
    CHECK(cond_prob(s.property, s.alice.projectors[2], s.rho).value ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cond_prob(s.property, s.bob.projectors[1], s.rho).value ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(trace(matmul(s.property, s.rho)).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("example builders are deterministic") {
    const Scenario a = example1(0.7), b = example1(0.7);
    CHECK(max_abs(sub(a.rho, b.rho)) == 0.0);
    CHECK(max_abs(sub(a.property, b.property)) == 0.0);
    const Scenario c = example2(), d = example2();
    CHECK(max_abs(sub(c.rho, d.rho)) == 0.0);
}

TEST_CASE("random commuting scenarios satisfy the commutation conditions by construction") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Rng ra(seed + 1), rb(seed + 2);
        const Scenario s = random_commuting_scenario(seed, {3, 2, 3},
                                                     random_branch_dims(ra, 3),
                                                     random_branch_dims(rb, 2));
        const CommutationReport rep = check_commutation(s);
        CHECK(rep.all_ok());
        double total = 0.0;
        for (const ComplexMatrix& p : s.alice.projectors) total += trace(matmul(p, s.rho)).real();
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("random generators are reproducible and seed-sensitive") {
    const Scenario a = random_commuting_scenario(42, {2, 2, 2}, {1, 1}, {2});
    const Scenario b = random_commuting_scenario(42, {2, 2, 2}, {1, 1}, {2});
    CHECK(max_abs(sub(a.rho, b.rho)) == 0.0);
    CHECK(max_abs(sub(a.property, b.property)) == 0.0);

    const Scenario c = random_commuting_scenario(43, {2, 2, 2}, {1, 1}, {2});
    CHECK(max_abs(sub(a.rho, c.rho)) > 1e-6);

    const Scenario n1 = random_noncommuting_scenario(7, {2, 2, 2});
    const Scenario n2 = random_noncommuting_scenario(7, {2, 2, 2});
    CHECK(max_abs(sub(n1.property, n2.property)) == 0.0);
}

TEST_CASE("noncommuting generator: valid states, frequent commutation failures") {
    int noncommuting = 0;
    for (uint64_t seed = 0; seed < 40; ++seed) {
        const Scenario s = random_noncommuting_scenario(seed, {2, 2, 2});
        CHECK(is_density(s.rho));
        CHECK(is_projector(s.property));
        if (!check_commutation(s).alice_e_ok) ++noncommuting;
    }
    CHECK(noncommuting > 20);  // the property straddles Alice's factor
}

TEST_CASE("invalid branch partitions are rejected") {
    CHECK_THROWS_AS(random_commuting_scenario(1, {3, 2, 2}, {2, 2}, {1, 1}), ValidationError);
    CHECK_THROWS_AS(random_commuting_scenario(1, {3, 2, 2}, {3}, {0, 2}), ValidationError);
}

TEST_CASE("random classical models are reproducible") {
    const ClassicalModel a = random_classical_model(9);
    const ClassicalModel b = random_classical_model(9);
    REQUIRE(a.n_states == b.n_states);
    for (int i = 0; i < a.n_states; ++i) CHECK(a.weights[i] == b.weights[i]);
    CHECK(a.event == b.event);
}
