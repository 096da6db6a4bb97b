#pragma once

#include <array>
#include <string>
#include <vector>

#include "qagree/rational.hpp"

namespace qagree {

// Finite state space with a (possibly signed) exact-rational measure, two
// information partitions and an event of interest. Phase-space models
// additionally carry the global assignment table (one outcome per
// measurement label per state).
struct ClassicalModel {
    int n_states = 0;
    std::vector<Rational> weights;
    std::vector<std::vector<int>> alice_partition;
    std::vector<std::vector<int>> bob_partition;
    std::vector<int> event;     // sorted state indices
    bool signed_measure = false;

    std::vector<std::string> labels;              // phase-space only
    std::vector<std::vector<int>> assignments;    // per state, outcome per label

    Rational weight_of(const std::vector<int>& subset) const;
};

ClassicalModel make_classical_model(int n_states, std::vector<Rational> weights,
                                    std::vector<std::vector<int>> alice_partition,
                                    std::vector<std::vector<int>> bob_partition,
                                    std::vector<int> event, bool signed_measure = false);

// Pairwise-context box over binary measurements. Context rows list the four
// joint outcomes in the order (0,0), (1,0), (0,1), (1,1).
struct NoSignalingBox {
    std::vector<std::string> labels;
    struct Context {
        int first = 0;   // label index
        int second = 0;
        std::array<Rational, 4> probs;
    };
    std::vector<Context> contexts;

    int label_index(const std::string& name) const;
    const Context* find_context(int l1, int l2) const;  // either order; null if absent
};

// Validates rows (nonnegative, sum 1) and the no-signaling marginal
// conditions across contexts.
NoSignalingBox make_no_signaling_box(std::vector<std::string> labels,
                                     std::vector<NoSignalingBox::Context> contexts);

struct ClassicalRecursionResult {
    std::vector<int> a_n;    // fixed point of Alice's chain
    std::vector<int> b_n;
    std::vector<int> c_inf;  // a_n intersect b_n
};

// Set-valued certainty recursion to its fixed point. Unsigned models skip
// states in zero-weight cells (their conditionals are undefined); signed
// models throw SignedConditioning on any cell of nonpositive weight.
ClassicalRecursionResult classical_recursion(const ClassicalModel& m, const Rational& q_alice,
                                             const Rational& q_bob);

// p(E | P_A(state) & P_B(state)).
Rational pooled_posterior(const ClassicalModel& m, int state);

struct BoxOutcome {
    std::string label;
    int outcome = 0;
};

// Context-row conditional probability; the two labels must form a context.
Rational box_conditional(const NoSignalingBox& box, const BoxOutcome& target,
                         const BoxOutcome& given);

// Pr[e=1|a=1] = Pr[b=1|a=1] = Pr[e=0|b=1] = 1: the cyclic implication
// pattern behind 0-1 disagreement.
bool check_zero_one_chain(const NoSignalingBox& box);

// True when every context distribution of the box equals the corresponding
// marginal of the model's measure.
bool signed_realization_check(const ClassicalModel& m, const NoSignalingBox& box);

// lambda(event & cell) / lambda(cell); may lie outside [0,1] for signed
// measures. Throws SignedConditioning on a zero-weight cell.
Rational signed_conditional(const ClassicalModel& m, const std::vector<int>& event,
                            const std::vector<int>& cell);

// States of the model's phase space matching label=outcome (requires
// assignment metadata).
std::vector<int> assignment_states(const ClassicalModel& m, const std::string& label,
                                   int outcome);

}  // namespace qagree
