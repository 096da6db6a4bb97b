#include <numbers>

#include "doctest.h"
#include "qagree/register.hpp"
#include "qagree/scenarios.hpp"
#include "test_support.hpp"

using namespace qagree;
using namespace qagree::testing;

TEST_CASE("recording the CCD example") {
    const Scenario s = example2();
    const RecordedScenario rs = build_recorded(s);

    SUBCASE("transcripts and block weights") {
        REQUIRE(rs.transcripts.register_dim() == 6);
        for (int r = 0; r < 6; ++r) {
            const auto [i, j] = rs.transcripts.transcripts[r];
            const bool live = (i == 0 && j == 0) || (i == 1 && j == 0) || (i == 2 && j == 1);
            if (live)
                CHECK(rs.block_weights[r] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
            else
                CHECK(rs.block_weights[r] <= 1e-12);
        }
        CHECK(trace(rs.rho_prime).real() == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("trace preservation: Kraus operators resolve the identity") {
        ComplexMatrix sum = zero(s.dim());
        for (const ComplexMatrix& m : rs.kraus) sum = add(sum, matmul(adjoint(m), m));
        CHECK(max_abs(sub(sum, identity(s.dim()))) <= 1e-9);
    }

    SUBCASE("the recorded state is block-diagonal in the pointer basis") {
        const int d = s.dim(), rd = rs.transcripts.register_dim();
        double off = 0.0;
        for (int i = 0; i < d * rd; ++i)
            for (int j = 0; j < d * rd; ++j)
                if (i % rd != j % rd) off = std::max(off, std::abs(rs.rho_prime(i, j)));
        CHECK(off <= 1e-12);
    }

    SUBCASE("register projectors commute with each other and the property") {
        std::vector<const ComplexMatrix*> all;
        for (const auto& p : rs.alice_reg_projectors) all.push_back(&p);
        for (const auto& p : rs.bob_reg_projectors) all.push_back(&p);
        all.push_back(&rs.property_ext);
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j)
                CHECK(commutator_norm(*all[i], *all[j]) <= 1e-9);
    }

    SUBCASE("recorded conditional probabilities") {
        const auto pr = [&](const ComplexMatrix& reg) {
            return recorded_cond_prob(rs, rs.property_ext, reg).value;
        };
        CHECK(pr(rs.alice_reg_projectors[0]) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(pr(rs.alice_reg_projectors[1]) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(pr(rs.alice_reg_projectors[2]) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(pr(rs.bob_reg_projectors[0]) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(pr(rs.bob_reg_projectors[1]) == doctest::Approx(0.0).epsilon(1e-9));
        // unconditioned: the base prior
        CHECK(pr(identity(rs.extended_dim())) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    }

    SUBCASE("recorded recursion restores agreement") {
        const RecursionTrace half = run_recorded_recursion(rs, 0.5, 0.5);
        CHECK(half.stabilization_index == 0);
        CHECK(half.cc_weight == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

        const RecursionTrace zero_pair = run_recorded_recursion(rs, 0.0, 0.0);
        CHECK(zero_pair.cc_weight == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

        // the CCD pair is not recordable: no recorded branch has q_B' = 1
        const RecursionTrace ccd_pair = run_recorded_recursion(rs, 0.5, 1.0);
        CHECK(ccd_pair.cc_weight <= 1e-9);
    }
}

TEST_CASE("single nonzero block when the state is one joint eigenstate") {
    ComplexMatrix ket0(2);
    ket0(0, 0) = 1.0;
    ComplexMatrix ket1(2);
    ket1(1, 1) = 1.0;
    const std::vector<ComplexMatrix> comp{ket0, ket1};
    const HilbertFactorization f{{2, 2}, {FactorRole::Alice, FactorRole::Bob}};
    const Scenario s = scenario_from_pure_state(f, {0.0, 1.0, 0.0, 0.0}, comp, comp, identity(4));
    const RecordedScenario rs = build_recorded(s);
    int live = 0;
    for (int r = 0; r < rs.transcripts.register_dim(); ++r)
        if (rs.block_weights[r] > 1e-12) {
            ++live;
            CHECK(rs.block_weights[r] == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(rs.transcripts.transcripts[r] == std::pair<int, int>{0, 1});
        }
    CHECK(live == 1);
}

TEST_CASE("recording refuses non-commuting agent measurements") {
    // Alice and Bob both measure the same qubit, in X and Z bases.
    ComplexMatrix plus(2), minus(2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    minus(0, 0) = minus(1, 1) = 0.5;
    minus(0, 1) = minus(1, 0) = -0.5;
    ComplexMatrix ket0(2);
    ket0(0, 0) = 1.0;
    ComplexMatrix ket1(2);
    ket1(1, 1) = 1.0;
    const HilbertFactorization f{{2}, {FactorRole::Shared}};
    Measurement alice{Agent::Alice, {plus, minus}};
    Measurement bob{Agent::Bob, {ket0, ket1}};
    const Scenario s = make_scenario(f, scale(identity(2), 0.5), alice, bob, identity(2));
    CHECK_THROWS_AS(build_recorded(s), NonCommutingMeasurements);
}

TEST_CASE("recorded scenarios never show CCD") {
    // Base scenarios with commuting measurements but a property that fails to
    // commute with Alice's side.
    for (uint64_t seed = 200; seed < 212; ++seed) {
        const Scenario s = random_noncommuting_scenario(seed, {2, 2, 2});
        const RecordedScenario rs = build_recorded(s);
        const Scenario view = recorded_as_scenario(rs);
        REQUIRE(check_commutation(view).all_ok());

        const BranchPosteriors alice = compute_branch_posteriors(view.alice, view.rho);
        const BranchPosteriors bob = compute_branch_posteriors(view.bob, view.rho);
        std::vector<double> qa, qb;
        for (const auto& b : branch_probabilities(view.alice, view.property, view.rho))
            qa.push_back(b.prob);
        for (const auto& b : branch_probabilities(view.bob, view.property, view.rho))
            qb.push_back(b.prob);
        for (double a : qa)
            for (double b : qb) {
                const Classification c = classify(view, alice, bob, a, b);
                CHECK(c.kind != OutcomeKind::CCD);
            }
    }
}

TEST_CASE("trace preservation holds on random commuting scenarios") {
    for (uint64_t seed = 300; seed < 310; ++seed) {
        Rng ra(seed + 1), rb(seed + 2);
        const Scenario s = random_commuting_scenario(seed, {3, 2, 2},
                                                     random_branch_dims(ra, 3),
                                                     random_branch_dims(rb, 2));
        const RecordedScenario rs = build_recorded(s);
        CHECK(trace(rs.rho_prime).real() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(is_density(rs.rho_prime));
    }
}
