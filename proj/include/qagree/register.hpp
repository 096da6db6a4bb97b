#pragma once

#include <utility>
#include <vector>

#include "qagree/epistemics.hpp"

namespace qagree {

// Classical transcripts (i, j): Alice's outcome i and Bob's outcome j.
// All l_A * l_B transcripts are kept, including zero-weight ones, so the
// outcome-extraction maps are total.
struct TranscriptSet {
    std::vector<std::pair<int, int>> transcripts;

    int register_dim() const { return static_cast<int>(transcripts.size()); }
    int alice_outcome(int r) const { return transcripts[r].first; }
    int bob_outcome(int r) const { return transcripts[r].second; }
};

// A scenario extended by a classical register that records both agents'
// outcomes through the CPTP map J(rho) = sum_r M_r rho M_r^dag (x) |r><r|.
struct RecordedScenario {
    Scenario base;
    TranscriptSet transcripts;
    std::vector<ComplexMatrix> kraus;        // M_(i,j) = P_A^i P_B^j on the base space
    ComplexMatrix rho_prime;                 // on base (x) register
    std::vector<ComplexMatrix> alice_reg_projectors;  // I_H (x) Pi_R^(i,A)
    std::vector<ComplexMatrix> bob_reg_projectors;    // I_H (x) Pi_R^(j,B)
    ComplexMatrix property_ext;              // P_E (x) I_R
    std::vector<double> block_weights;       // Tr(M_r rho M_r^dag) per transcript

    int extended_dim() const { return rho_prime.dim; }
};

// Requires Alice's and Bob's embedded projectors to commute (the joint
// readout is otherwise ill-defined); throws NonCommutingMeasurements.
RecordedScenario build_recorded(const Scenario& s, double tol = TOL);

// Pr[prop_ext; reg_proj] at the recorded state.
ConditionalProbability recorded_cond_prob(const RecordedScenario& rs,
                                          const ComplexMatrix& prop_ext,
                                          const ComplexMatrix& reg_proj, double tol = TOL);

// The certainty recursion with register projectors as the agents'
// measurements, rho' as the state and P_E (x) I_R as the property.
RecursionTrace run_recorded_recursion(const RecordedScenario& rs, double q_alice, double q_bob,
                                      const RecursionOptions& opts = {});

Classification classify_recorded(const RecordedScenario& rs, double q_alice, double q_bob,
                                 const RecursionOptions& opts = {});

// The recorded setting as an ordinary scenario on base (x) register, with the
// register projector families as measurements. run_recorded_recursion and the
// sweeps go through this view.
Scenario recorded_as_scenario(const RecordedScenario& rs);

}  // namespace qagree
