// Command-line front end: classify scenarios, record them into a classical
// register, evaluate disagreement bounds, inspect no-signaling boxes, and run
// randomized property sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qagree/epistemics.hpp"
#include "qagree/limits.hpp"
#include "qagree/register.hpp"
#include "qagree/scenarios.hpp"
#include "qagree/serialize.hpp"

using namespace qagree;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitMath = 2;
constexpr int kExitVerdict = 3;

std::string kind_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Agreement: return "agreement";
        case OutcomeKind::CCD: return "common-certainty-of-disagreement";
        case OutcomeKind::NoCommonCertainty: return "no-common-certainty";
    }
    return "?";
}

std::string branch_set(const std::vector<int>& b) {
    std::string s = "{";
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(b[i]);
    }
    return s + "}";
}

double parse_prob(const std::string& text, const char* what) {
    if (text.empty()) throw ParseError(std::string(what) + " is required here");
    const Rational r = parse_rational(text);
    const double v = r.to_double();
    if (v < 0.0 || v > 1.0) throw ParseError(std::string(what) + " must lie in [0, 1]");
    return v;
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

std::vector<double> realized_q(const Scenario& s, const Measurement& m) {
    std::vector<double> qs;
    for (const auto& b : branch_probabilities(m, s.property, s.rho)) {
        bool seen = false;
        for (double q : qs) seen |= std::abs(q - b.prob) <= TOL;
        if (!seen) qs.push_back(b.prob);
    }
    return qs;
}

ojson trace_to_json(const RecursionTrace& t, const ComplexMatrix& rho) {
    ojson levels = ojson::array();
    for (const RecursionLevel& lvl : t.levels) {
        levels.push_back(ojson{{"a_branches", lvl.a_branches},
                               {"b_branches", lvl.b_branches},
                               {"a_weight", trace(matmul(lvl.a, rho)).real()},
                               {"b_weight", trace(matmul(lvl.b, rho)).real()}});
    }
    return ojson{{"levels", std::move(levels)},
                 {"stabilization_index", t.stabilization_index},
                 {"cc_weight", t.cc_weight}};
}

void print_trace(const RecursionTrace& t, const ComplexMatrix& rho) {
    for (size_t n = 0; n < t.levels.size(); ++n) {
        const RecursionLevel& lvl = t.levels[n];
        std::printf("level %zu: A = %s (weight %.9g), B = %s (weight %.9g)\n", n,
                    branch_set(lvl.a_branches).c_str(), trace(matmul(lvl.a, rho)).real(),
                    branch_set(lvl.b_branches).c_str(), trace(matmul(lvl.b, rho)).real());
    }
    std::printf("stabilized at level %d\n", t.stabilization_index);
    std::printf("common certainty weight Tr(C* rho) = %.9g\n", t.cc_weight);
}

// ---------------------------------------------------------------------- examples

struct BuiltinExample {
    std::string name;
    std::string description;
};

const std::vector<BuiltinExample> kExamples{
    {"example1", "4x6x2 commuting scenario with an angle-parametrized property (--theta)"},
    {"example2", "3x2x2 scenario exhibiting common certainty of disagreement"},
    {"pooling", "4-state classical model: common certainty of 1/2, pooled assessments 0/1"},
    {"nsbox", "no-signaling box with the cyclic 0-1 certainty chain"},
    {"signed", "signed phase-space measure realizing the 0-1 box"},
};

std::string dump_example(const std::string& name, double theta) {
    if (name == "example1") return serialize_scenario(example1(theta));
    if (name == "example2") return serialize_scenario(example2());
    if (name == "pooling") return serialize_model(pooling_model());
    if (name == "nsbox") return serialize_box(zero_one_box());
    if (name == "signed") return serialize_model(signed_box_measure());
    throw ParseError("unknown example '" + name + "'; see 'qagree examples list'");
}

// ---------------------------------------------------------------------- classify

int cmd_classify(const std::string& file, const std::string& qa_text,
                 const std::string& qb_text, std::optional<double> epsilon, double tol_q,
                 bool json) {
    const ScenarioFile f = load_scenario_file(file);

    if (f.kind == ScenarioFile::Kind::Box)
        throw ParseError("classify applies to quantum or classical files, not boxes");

    if (f.kind == ScenarioFile::Kind::Classical) {
        const Rational qa = parse_rational(qa_text), qb = parse_rational(qb_text);
        const ClassicalModel& m = *f.model;
        const ClassicalRecursionResult r = classical_recursion(m, qa, qb);
        const Rational w = m.weight_of(r.c_inf);
        const bool live = !w.is_zero() && !w.is_negative();
        const std::string kind = !live      ? "no-common-certainty"
                                 : qa == qb ? "agreement"
                                            : "common-certainty-of-disagreement";
        if (json) {
            emit(ojson{{"command", "classify"},
                       {"kind", "classical"},
                       {"q_alice", to_string(qa)},
                       {"q_bob", to_string(qb)},
                       {"a_n", r.a_n},
                       {"b_n", r.b_n},
                       {"c_inf", r.c_inf},
                       {"cc_weight", to_string(w)},
                       {"classification", kind}});
        } else {
            std::printf("classical model with %d states\n", m.n_states);
            std::printf("A_N = %s, B_N = %s\n", branch_set(r.a_n).c_str(),
                        branch_set(r.b_n).c_str());
            std::printf("C_inf = %s, weight = %s\n", branch_set(r.c_inf).c_str(),
                        to_string(w).c_str());
            std::printf("classification: %s\n", kind.c_str());
        }
        return kExitOk;
    }

    const Scenario& s = *f.scenario;
    const double qa = parse_prob(qa_text, "--qa"), qb = parse_prob(qb_text, "--qb");
    RecursionOptions opts;
    opts.tol_q = tol_q;
    if (epsilon) {
        if (!(*epsilon > 0.0 && *epsilon < 1.0))
            throw ParseError("--epsilon must lie in (0, 1)");
        opts.certainty_epsilon = *epsilon;
    }
    const Classification c = classify(s, qa, qb, opts);

    const CommutationReport comm = check_commutation(s);
    if (json) {
        ojson j{{"command", "classify"},
                {"kind", "quantum"},
                {"dims", s.factorization.dims},
                {"q_alice", qa},
                {"q_bob", qb},
                {"commutation",
                 ojson{{"alice_bob", comm.ab_ok},
                       {"alice_property", comm.alice_e_ok},
                       {"bob_property", comm.bob_e_ok},
                       {"max_violation", comm.max_violation}}},
                {"trace", trace_to_json(c.trace, s.rho)},
                {"classification", kind_name(c.kind)}};
        if (epsilon) j["epsilon"] = *epsilon;
        emit(j);
    } else {
        std::printf("quantum scenario, dim %d\n", s.dim());
        std::printf("commutation: alice-bob %s, alice-property %s, bob-property %s\n",
                    comm.ab_ok ? "ok" : "VIOLATED", comm.alice_e_ok ? "ok" : "VIOLATED",
                    comm.bob_e_ok ? "ok" : "VIOLATED");
        if (epsilon) std::printf("epsilon-certainty threshold: %.9g\n", *epsilon);
        std::printf("q_alice = %.9g, q_bob = %.9g\n", qa, qb);
        print_trace(c.trace, s.rho);
        std::printf("classification: %s\n", kind_name(c.kind).c_str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- record

int cmd_record(const std::string& file, const std::string& qa_text, const std::string& qb_text,
               bool json) {
    const ScenarioFile f = load_scenario_file(file);
    if (f.kind != ScenarioFile::Kind::Quantum)
        throw ParseError("record applies to quantum scenario files");
    const double qa = parse_prob(qa_text, "--qa"), qb = parse_prob(qb_text, "--qb");

    const RecordedScenario rs = build_recorded(*f.scenario);
    const Scenario view = recorded_as_scenario(rs);
    const Classification c = classify(view, qa, qb);

    std::vector<std::pair<std::pair<int, int>, double>> blocks;
    for (int r = 0; r < rs.transcripts.register_dim(); ++r)
        if (rs.block_weights[r] > TOL)
            blocks.push_back({rs.transcripts.transcripts[r], rs.block_weights[r]});

    const auto agent_probs = [&](const std::vector<ComplexMatrix>& projs) {
        std::vector<double> out;
        for (const ComplexMatrix& p : projs) {
            const double w = trace(matmul(p, rs.rho_prime)).real();
            out.push_back(w > TOL ? recorded_cond_prob(rs, rs.property_ext, p).value : -1.0);
        }
        return out;
    };
    const std::vector<double> pa = agent_probs(rs.alice_reg_projectors);
    const std::vector<double> pb = agent_probs(rs.bob_reg_projectors);

    if (json) {
        ojson jblocks = ojson::array();
        for (const auto& [t, w] : blocks)
            jblocks.push_back(
                ojson{{"transcript", ojson::array({t.first, t.second})}, {"weight", w}});
        emit(ojson{{"command", "record"},
                   {"register_dim", rs.transcripts.register_dim()},
                   {"blocks", std::move(jblocks)},
                   {"alice_recorded_probs", pa},
                   {"bob_recorded_probs", pb},
                   {"q_alice", qa},
                   {"q_bob", qb},
                   {"trace", trace_to_json(c.trace, view.rho)},
                   {"classification", kind_name(c.kind)}});
    } else {
        std::printf("register dimension %d\n", rs.transcripts.register_dim());
        for (const auto& [t, w] : blocks)
            std::printf("block (%d,%d): weight %.9g\n", t.first, t.second, w);
        for (size_t i = 0; i < pa.size(); ++i)
            if (pa[i] >= 0.0)
                std::printf("recorded Pr[E | alice outcome %zu] = %.9g\n", i, pa[i]);
        for (size_t j = 0; j < pb.size(); ++j)
            if (pb[j] >= 0.0) std::printf("recorded Pr[E | bob outcome %zu] = %.9g\n", j, pb[j]);
        std::printf("recorded recursion at (%.9g, %.9g):\n", qa, qb);
        print_trace(c.trace, view.rho);
        std::printf("classification: %s\n", kind_name(c.kind).c_str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- bounds

int cmd_bounds_pair(const std::string& file_a, const std::string& file_b,
                    const std::string& qa_text, const std::string& qb_text, bool json) {
    const ScenarioFile fa = load_scenario_file(file_a);
    const ScenarioFile fb = load_scenario_file(file_b);
    if (fa.kind != ScenarioFile::Kind::Quantum || fb.kind != ScenarioFile::Kind::Quantum)
        throw ParseError("bounds applies to quantum scenario files");
    const Scenario& sa = *fa.scenario;
    const Scenario& sb = *fb.scenario;
    if (sa.dim() != sb.dim()) throw ParseError("the two scenarios have different dimensions");

    // Recursion on the first scenario's state; the second supplies the
    // perturbed state.
    std::optional<RecursionTrace> t;
    double q_used = 0.0;
    if (!qa_text.empty() || !qb_text.empty()) {
        const double qa = parse_prob(qa_text, "--qa"), qb = parse_prob(qb_text, "--qb");
        RecursionTrace rt = run_recursion(sa, qa, qb);
        if (rt.cc_weight > TOL) {
            t = std::move(rt);
            q_used = qa;
        }
    } else {
        for (double q : realized_q(sa, sa.alice)) {
            RecursionTrace rt = run_recursion(sa, q, q);
            if (rt.cc_weight > TOL) {
                t = std::move(rt);
                q_used = q;
                break;
            }
        }
    }
    if (!t)
        throw ZeroConditioningWeight(
            "no common-certainty pair found on the first scenario's state");

    const double ca = trace(matmul(t->c_star, sa.rho)).real();
    const double cb = trace(matmul(t->c_star, sb.rho)).real();
    if (cb <= TOL)
        throw ZeroConditioningWeight("the common-certainty projector has zero weight at rho_B");
    const double qa_val = trace(matmul(sa.property, matmul(t->c_star, sa.rho))).real() / ca;
    const double qb_val = trace(matmul(sa.property, matmul(t->c_star, sb.rho))).real() / cb;
    const double measured = std::abs(qa_val - qb_val);
    const double bound = state_perturbation_bound(sa.rho, sb.rho, t->a_star, t->b_star);
    const bool pass = measured <= bound + 1e-12;

    if (json) {
        emit(ojson{{"command", "bounds"},
                   {"mode", "perturbation"},
                   {"q", q_used},
                   {"q_alice", qa_val},
                   {"q_bob", qb_val},
                   {"measured", measured},
                   {"bound", bound},
                   {"pass", pass}});
    } else {
        std::printf("common-certainty projector from state A at q = %.9g\n", q_used);
        std::printf("q_alice = %.9g (state A), q_bob = %.9g (state B)\n", qa_val, qb_val);
        std::printf("measured |q_A - q_B| = %.9g\n", measured);
        std::printf("trace-norm bound      = %.9g\n", bound);
        std::printf("%s\n", pass ? "PASS" : "FAIL");
    }
    return pass ? kExitOk : kExitVerdict;
}

int cmd_bounds_epsilon(const std::string& file, double epsilon, const std::string& qa_text,
                       const std::string& qb_text, bool json) {
    const ScenarioFile f = load_scenario_file(file);
    if (f.kind != ScenarioFile::Kind::Quantum)
        throw ParseError("bounds applies to quantum scenario files");
    const Scenario& s = *f.scenario;

    std::vector<std::pair<double, double>> pairs;
    if (!qa_text.empty() || !qb_text.empty()) {
        pairs.push_back({parse_prob(qa_text, "--qa"), parse_prob(qb_text, "--qb")});
    } else {
        for (double qa : realized_q(s, s.alice))
            for (double qb : realized_q(s, s.bob)) pairs.push_back({qa, qb});
    }

    bool all_pass = true;
    int live = 0;
    double worst = 0.0;
    ojson rows = ojson::array();
    for (const auto& [qa, qb] : pairs) {
        const RecursionTrace t = run_epsilon_recursion(s, qa, qb, {epsilon});
        if (t.cc_weight <= TOL) continue;
        ++live;
        const double measured = std::abs(qa - qb);
        const bool pass = measured <= 2 * epsilon + 1e-9;
        worst = std::max(worst, measured);
        all_pass &= pass;
        rows.push_back(ojson{{"q_alice", qa},
                             {"q_bob", qb},
                             {"cc_weight", t.cc_weight},
                             {"measured", measured},
                             {"pass", pass}});
        if (!json)
            std::printf("(q_A, q_B) = (%.9g, %.9g): cc weight %.9g, |q_A - q_B| = %.9g  %s\n", qa,
                        qb, t.cc_weight, measured, pass ? "ok" : "VIOLATION");
    }
    if (json) {
        emit(ojson{{"command", "bounds"},
                   {"mode", "epsilon"},
                   {"epsilon", epsilon},
                   {"bound", 2 * epsilon},
                   {"instances", live},
                   {"worst", worst},
                   {"rows", std::move(rows)},
                   {"pass", all_pass}});
    } else {
        std::printf("epsilon = %.9g, bound 2*epsilon = %.9g\n", epsilon, 2 * epsilon);
        std::printf("%d epsilon-common-certainty instances, worst |q_A - q_B| = %.9g\n", live,
                    worst);
        std::printf("%s\n", all_pass ? "PASS" : "FAIL");
    }
    return all_pass ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------- box

int cmd_box(const std::string& file, const std::string& realizes, bool json) {
    const ScenarioFile f = load_scenario_file(file);
    std::optional<NoSignalingBox> box;
    std::optional<ClassicalModel> model;
    if (f.kind == ScenarioFile::Kind::Box)
        box = f.box;
    else if (f.kind == ScenarioFile::Kind::Classical)
        model = f.model;
    else
        throw ParseError("box applies to box or classical (signed-measure) files");

    if (!realizes.empty()) {
        const ScenarioFile g = load_scenario_file(realizes);
        if (g.kind == ScenarioFile::Kind::Box && !box)
            box = g.box;
        else if (g.kind == ScenarioFile::Kind::Classical && !model)
            model = g.model;
        else
            throw ParseError("--realizes needs one box file and one signed-model file");
    }
    if (!box) throw ParseError("box command needs a box file (directly or via --realizes)");

    const bool chain = check_zero_one_chain(*box);
    ojson conds = ojson::array();
    struct Check {
        const char* tl;
        int to;
        const char* gl;
        int go;
    };
    const std::vector<Check> checks{{"e", 1, "a", 1}, {"b", 1, "a", 1}, {"e", 0, "b", 1},
                                    {"e", 1, "b", 0}};
    for (const Check& ck : checks) {
        const Rational v = box_conditional(*box, {ck.tl, ck.to}, {ck.gl, ck.go});
        conds.push_back(ojson{{"target", std::string(ck.tl) + "=" + std::to_string(ck.to)},
                              {"given", std::string(ck.gl) + "=" + std::to_string(ck.go)},
                              {"value", to_string(v)}});
        if (!json)
            std::printf("Pr[%s=%d | %s=%d] = %s\n", ck.tl, ck.to, ck.gl, ck.go,
                        to_string(v).c_str());
    }

    const bool do_realization = model.has_value() && !realizes.empty();
    bool realization = false;
    if (do_realization) realization = signed_realization_check(*model, *box);

    if (json) {
        ojson j{{"command", "box"},
                {"no_signaling", true},
                {"conditionals", std::move(conds)},
                {"zero_one_chain", chain}};
        if (do_realization) j["realizes"] = realization;
        emit(j);
    } else {
        std::printf("no-signaling: ok\n");
        std::printf("0-1 certainty chain: %s\n", chain ? "present" : "absent");
        if (do_realization)
            std::printf("signed-measure realization: %s\n", realization ? "true" : "false");
    }
    return (do_realization && !realization) ? kExitVerdict : kExitOk;
}

// ---------------------------------------------------------------------- sweep

int cmd_sweep(const std::string& kind, uint64_t seed, int count, double epsilon, bool json) {
    bool pass = true;
    ojson j{{"command", "sweep"}, {"kind", kind}, {"seed", seed}, {"count", count}};

    if (kind == "agreement") {
        const std::vector<std::vector<int>> dims_list{{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {3, 3, 2}};
        int pairs = 0, cc = 0;
        for (int n = 0; n < count; ++n) {
            const uint64_t sd = seed + static_cast<uint64_t>(n);
            const auto& dims = dims_list[n % dims_list.size()];
            Rng ra(sd * 3 + 1), rb(sd * 3 + 2);
            const Scenario s = random_commuting_scenario(
                sd, dims, random_branch_dims(ra, dims[0]), random_branch_dims(rb, dims[1]));
            const BranchPosteriors alice = compute_branch_posteriors(s.alice, s.rho);
            const BranchPosteriors bob = compute_branch_posteriors(s.bob, s.rho);
            for (double qa : realized_q(s, s.alice))
                for (double qb : realized_q(s, s.bob)) {
                    const Classification c = classify(s, alice, bob, qa, qb);
                    ++pairs;
                    if (c.trace.cc_weight > TOL) ++cc;
                    if (c.kind == OutcomeKind::CCD) pass = false;
                }
        }
        j["pairs"] = pairs;
        j["with_common_certainty"] = cc;
        if (!json)
            std::printf("%d scenarios, %d pairs, %d with common certainty, CCD found: %s\n",
                        count, pairs, cc, pass ? "no" : "YES");
    } else if (kind == "zero-one") {
        const std::vector<std::vector<int>> dims_list{{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}};
        double worst = 0.0;
        for (int n = 0; n < count; ++n) {
            const uint64_t sd = seed + static_cast<uint64_t>(n);
            const auto& dims = dims_list[n % dims_list.size()];
            const Scenario s = n % 2 == 0 ? random_noncommuting_scenario(sd, dims) : [&] {
                Rng ra(sd * 5 + 1), rb(sd * 5 + 2);
                return random_commuting_scenario(sd, dims, random_branch_dims(ra, dims[0]),
                                                 random_branch_dims(rb, dims[1]));
            }();
            worst = std::max(worst, zero_one_check(s).value);
        }
        pass = worst <= 1e-8;
        j["worst_witness"] = worst;
        if (!json) std::printf("%d scenarios, worst 0-1 witness value %.3e\n", count, worst);
    } else if (kind == "epsilon") {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw ParseError("--epsilon must lie in (0, 1)");
        int live = 0;
        double worst = 0.0;
        for (int n = 0; n < count; ++n) {
            const uint64_t sd = seed + static_cast<uint64_t>(n);
            Rng ra(sd * 3 + 1), rb(sd * 3 + 2);
            const Scenario s = random_commuting_scenario(sd, {3, 2, 2}, random_branch_dims(ra, 3),
                                                         random_branch_dims(rb, 2));
            for (double qa : realized_q(s, s.alice))
                for (double qb : realized_q(s, s.bob)) {
                    const RecursionTrace t = run_epsilon_recursion(s, qa, qb, {epsilon});
                    if (t.cc_weight <= TOL) continue;
                    ++live;
                    worst = std::max(worst, std::abs(qa - qb));
                    if (std::abs(qa - qb) > 2 * epsilon + 1e-9) pass = false;
                }
        }
        j["epsilon"] = epsilon;
        j["instances"] = live;
        j["worst_disagreement"] = worst;
        if (!json)
            std::printf(
                "%d scenarios, %d live instances, worst |q_A - q_B| = %.3e (bound %.3e)\n", count,
                live, worst, 2 * epsilon);
    } else if (kind == "perturbation") {
        Rng noise(seed ^ 0x5eedULL);
        int tested = 0;
        for (int n = 0; n < count; ++n) {
            const uint64_t sd = seed + static_cast<uint64_t>(n);
            Rng ra(sd * 3 + 1), rb(sd * 3 + 2);
            const Scenario s = random_commuting_scenario(sd, {2, 3, 2}, random_branch_dims(ra, 2),
                                                         random_branch_dims(rb, 3));
            const BranchPosteriors alice = compute_branch_posteriors(s.alice, s.rho);
            const BranchPosteriors bob = compute_branch_posteriors(s.bob, s.rho);
            for (double qv : realized_q(s, s.alice)) {
                const Classification c = classify(s, alice, bob, qv, qv);
                if (c.kind != OutcomeKind::Agreement) continue;
                const RecursionTrace& t = c.trace;
                ComplexMatrix g(s.dim());
                for (cplx& z : g.data) z = noise.complex_gaussian();
                ComplexMatrix tau = matmul(g, adjoint(g));
                tau = scale(tau, 1.0 / trace(tau).real());
                const double p = 0.05 * noise.uniform();
                const ComplexMatrix rho_b = add(scale(s.rho, 1.0 - p), scale(tau, p));
                const double cb = trace(matmul(t.c_star, rho_b)).real();
                if (cb <= TOL) continue;
                const double bound = state_perturbation_bound(s.rho, rho_b, t.a_star, t.b_star);
                const double ca = trace(matmul(t.c_star, s.rho)).real();
                const double qa = trace(matmul(s.property, matmul(t.c_star, s.rho))).real() / ca;
                const double qb = trace(matmul(s.property, matmul(t.c_star, rho_b))).real() / cb;
                ++tested;
                if (std::abs(qa - qb) > bound + 1e-12) pass = false;
                break;
            }
        }
        j["pairs_tested"] = tested;
        if (!json)
            std::printf("%d perturbation pairs tested, all within the bound: %s\n", tested,
                        pass ? "yes" : "NO");
    } else if (kind == "classical") {
        int cc = 0;
        for (int n = 0; n < count; ++n) {
            const ClassicalModel m = random_classical_model(seed + static_cast<uint64_t>(n));
            auto realized = [&](const std::vector<std::vector<int>>& cells) {
                std::vector<Rational> out;
                for (const auto& cell : cells) {
                    const Rational w = m.weight_of(cell);
                    if (w.is_zero() || w.is_negative()) continue;
                    std::vector<int> inter;
                    for (int s : cell)
                        for (int e : m.event)
                            if (e == s) inter.push_back(s);
                    const Rational q = m.weight_of(inter) / w;
                    bool seen = false;
                    for (const Rational& o : out) seen |= o == q;
                    if (!seen) out.push_back(q);
                }
                return out;
            };
            for (const Rational& qa : realized(m.alice_partition))
                for (const Rational& qb : realized(m.bob_partition)) {
                    const ClassicalRecursionResult r = classical_recursion(m, qa, qb);
                    const Rational w = m.weight_of(r.c_inf);
                    if (w.is_zero() || w.is_negative()) continue;
                    ++cc;
                    if (!(qa == qb)) pass = false;
                }
        }
        j["with_common_certainty"] = cc;
        if (!json)
            std::printf("%d models, %d common-certainty instances, all agree: %s\n", count, cc,
                        pass ? "yes" : "NO");
    } else {
        throw ParseError("unknown sweep kind '" + kind +
                         "' (agreement, zero-one, epsilon, perturbation, classical)");
    }

    j["pass"] = pass;
    if (json)
        emit(j);
    else
        std::printf("%s\n", pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Epistemic analysis of quantum measurement scenarios: certainty recursion, "
                 "classical recording, disagreement bounds"};
    app.require_subcommand(1);

    std::string cl_file, cl_qa, cl_qb;
    double cl_tolq = 1e-9;
    double cl_eps = -1.0;
    bool cl_json = false;
    auto* classify_cmd =
        app.add_subcommand("classify", "Run the certainty recursion and classify the outcome");
    classify_cmd->add_option("file", cl_file, "scenario file (quantum or classical)")->required();
    classify_cmd->add_option("--qa", cl_qa, "Alice's probability estimate")->required();
    classify_cmd->add_option("--qb", cl_qb, "Bob's probability estimate")->required();
    classify_cmd->add_option("--epsilon", cl_eps, "use (1-epsilon)-certainty in the recursion");
    classify_cmd->add_option("--tol-q", cl_tolq, "probability matching tolerance");
    classify_cmd->add_flag("--json", cl_json, "machine-readable output");

    std::string rec_file, rec_qa, rec_qb;
    bool rec_json = false;
    auto* record_cmd =
        app.add_subcommand("record", "Record both agents' outcomes in a classical register");
    record_cmd->add_option("file", rec_file, "quantum scenario file")->required();
    record_cmd->add_option("--qa", rec_qa, "Alice's recorded probability estimate")->required();
    record_cmd->add_option("--qb", rec_qb, "Bob's recorded probability estimate")->required();
    record_cmd->add_flag("--json", rec_json, "machine-readable output");

    std::string bd_file_a, bd_file_b, bd_qa, bd_qb;
    double bd_eps = -1.0;
    bool bd_json = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate disagreement bounds");
    bounds_cmd->add_option("fileA", bd_file_a, "scenario file")->required();
    bounds_cmd->add_option("fileB", bd_file_b, "perturbed scenario file (trace-norm bound mode)");
    bounds_cmd->add_option("--epsilon", bd_eps, "epsilon-certainty bound mode");
    bounds_cmd->add_option("--qa", bd_qa, "Alice's probability estimate");
    bounds_cmd->add_option("--qb", bd_qb, "Bob's probability estimate");
    bounds_cmd->add_flag("--json", bd_json, "machine-readable output");

    std::string box_file, box_realizes;
    bool box_json = false;
    auto* box_cmd = app.add_subcommand("box", "Inspect a no-signaling box");
    box_cmd->add_option("file", box_file, "box file (or signed model with --realizes)")
        ->required();
    box_cmd->add_option("--realizes", box_realizes, "check realization against this file");
    box_cmd->add_flag("--json", box_json, "machine-readable output");

    std::string sw_kind;
    uint64_t sw_seed = 1;
    int sw_count = 100;
    double sw_eps = 0.01;
    bool sw_json = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Randomized property sweeps");
    sweep_cmd
        ->add_option("--kind", sw_kind, "agreement | zero-one | epsilon | perturbation | classical")
        ->required();
    sweep_cmd->add_option("--seed", sw_seed, "base seed");
    sweep_cmd->add_option("--count", sw_count, "number of scenarios/models");
    sweep_cmd->add_option("--epsilon", sw_eps, "epsilon for the epsilon sweep");
    sweep_cmd->add_flag("--json", sw_json, "machine-readable output");

    std::string ex_action = "list", ex_name, ex_out;
    double ex_theta = std::numbers::pi / 3.0;
    auto* examples_cmd = app.add_subcommand("examples", "List or dump built-in scenarios");
    examples_cmd->add_option("action", ex_action, "list | dump");
    examples_cmd->add_option("name", ex_name, "example name (for dump)");
    examples_cmd->add_option("--theta", ex_theta, "angle parameter where applicable");
    examples_cmd->add_option("-o,--output", ex_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (classify_cmd->parsed())
            return cmd_classify(cl_file, cl_qa, cl_qb,
                                cl_eps >= 0 ? std::optional<double>(cl_eps) : std::nullopt,
                                cl_tolq, cl_json);
        if (record_cmd->parsed()) return cmd_record(rec_file, rec_qa, rec_qb, rec_json);
        if (bounds_cmd->parsed()) {
            if (bd_eps >= 0 && bd_file_b.empty())
                return cmd_bounds_epsilon(bd_file_a, bd_eps, bd_qa, bd_qb, bd_json);
            if (!bd_file_b.empty())
                return cmd_bounds_pair(bd_file_a, bd_file_b, bd_qa, bd_qb, bd_json);
            throw ParseError("bounds needs either two files or --epsilon");
        }
        if (box_cmd->parsed()) return cmd_box(box_file, box_realizes, box_json);
        if (sweep_cmd->parsed()) return cmd_sweep(sw_kind, sw_seed, sw_count, sw_eps, sw_json);
        if (examples_cmd->parsed()) {
            if (ex_action == "list") {
                for (const auto& e : kExamples)
                    std::printf("%-10s %s\n", e.name.c_str(), e.description.c_str());
                return kExitOk;
            }
            if (ex_action == "dump") {
                if (ex_name.empty()) throw ParseError("dump needs an example name");
                const std::string text = dump_example(ex_name, ex_theta);
                if (ex_out.empty()) {
                    std::cout << text << "\n";
                } else {
                    std::ofstream out(ex_out);
                    if (!out) throw ParseError("cannot write '" + ex_out + "'");
                    out << text << "\n";
                }
                return kExitOk;
            }
            throw ParseError("unknown examples action '" + ex_action + "'");
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    }
    return kExitOk;
}
