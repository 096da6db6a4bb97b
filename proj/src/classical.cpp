#include "qagree/classical.hpp"

#include <algorithm>
#include <cmath>

namespace qagree {

namespace {

constexpr double kSumTol = 1e-9;

void validate_partition(const std::vector<std::vector<int>>& cells, int n, const char* who) {
    std::vector<int> seen(n, 0);
    for (const auto& cell : cells) {
        if (cell.empty()) throw ValidationError(std::string(who) + ": empty partition cell");
        for (int s : cell) {
            if (s < 0 || s >= n) throw ValidationError(std::string(who) + ": state out of range");
            if (seen[s]++) throw ValidationError(std::string(who) + ": partitions must be disjoint");
        }
    }
    for (int s = 0; s < n; ++s)
        if (!seen[s]) throw ValidationError(std::string(who) + ": partition does not cover all states");
}

// cell index per state
std::vector<int> cell_index(const std::vector<std::vector<int>>& cells, int n) {
    std::vector<int> idx(n, -1);
    for (size_t c = 0; c < cells.size(); ++c)
        for (int s : cells[c]) idx[s] = static_cast<int>(c);
    return idx;
}

}  // namespace

Rational ClassicalModel::weight_of(const std::vector<int>& subset) const {
    Rational w = 0;
    for (int s : subset) w = w + weights[s];
    return w;
}

ClassicalModel make_classical_model(int n_states, std::vector<Rational> weights,
                                    std::vector<std::vector<int>> alice_partition,
                                    std::vector<std::vector<int>> bob_partition,
                                    std::vector<int> event, bool signed_measure) {
    if (n_states <= 0) throw ValidationError("model needs at least one state");
    if (static_cast<int>(weights.size()) != n_states)
        throw ValidationError("weight count does not match state count");
    Rational sum = 0;
    for (const Rational& w : weights) {
        if (!signed_measure && w.is_negative())
            throw ValidationError("probability model has a negative weight");
        sum = sum + w;
    }
    if (std::abs(sum.to_double() - 1.0) > kSumTol)
        throw ValidationError("weights do not sum to 1");
    validate_partition(alice_partition, n_states, "alice");
    validate_partition(bob_partition, n_states, "bob");
    std::sort(event.begin(), event.end());
    for (int s : event)
        if (s < 0 || s >= n_states) throw ValidationError("event contains an out-of-range state");
    ClassicalModel m;
    m.n_states = n_states;
    m.weights = std::move(weights);
    m.alice_partition = std::move(alice_partition);
    m.bob_partition = std::move(bob_partition);
    m.event = std::move(event);
    m.signed_measure = signed_measure;
    return m;
}

int NoSignalingBox::label_index(const std::string& name) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return static_cast<int>(i);
    return -1;
}

const NoSignalingBox::Context* NoSignalingBox::find_context(int l1, int l2) const {
    for (const Context& c : contexts)
        if ((c.first == l1 && c.second == l2) || (c.first == l2 && c.second == l1)) return &c;
    return nullptr;
}

namespace {

// Marginal of `label` (outcome 1) within one context row.
Rational context_marginal(const NoSignalingBox::Context& c, int label) {
    // probs order: (0,0), (1,0), (0,1), (1,1) for (first, second)
    if (label == c.first) return c.probs[1] + c.probs[3];
    return c.probs[2] + c.probs[3];
}

}  // namespace

NoSignalingBox make_no_signaling_box(std::vector<std::string> labels,
                                     std::vector<NoSignalingBox::Context> contexts) {
    NoSignalingBox box;
    box.labels = std::move(labels);
    box.contexts = std::move(contexts);
    const int nl = static_cast<int>(box.labels.size());
    for (const auto& c : box.contexts) {
        if (c.first < 0 || c.first >= nl || c.second < 0 || c.second >= nl || c.first == c.second)
            throw ValidationError("box context labels out of range");
        Rational sum = 0;
        for (const Rational& p : c.probs) {
            if (p.is_negative()) throw ValidationError("box has a negative probability");
            sum = sum + p;
        }
        if (sum != Rational(1)) throw ValidationError("box context does not sum to 1");
    }
    // No-signaling: the marginal of each label agrees across all contexts
    // containing it.
    for (int l = 0; l < nl; ++l) {
        bool have = false;
        Rational first;
        for (const auto& c : box.contexts) {
            if (c.first != l && c.second != l) continue;
            const Rational m = context_marginal(c, l);
            if (!have) { first = m; have = true; }
            else if (m != first) throw ValidationError("box violates no-signaling for label '" +
                                                       box.labels[l] + "'");
        }
    }
    return box;
}

namespace {

struct CellData {
    std::vector<int> of_state;         // cell index per state
    std::vector<Rational> weight;      // total weight per cell
    std::vector<char> usable;          // positive weight
};

CellData prepare_cells(const ClassicalModel& m, const std::vector<std::vector<int>>& cells) {
    CellData d;
    d.of_state = cell_index(cells, m.n_states);
    for (const auto& cell : cells) {
        const Rational w = m.weight_of(cell);
        if (m.signed_measure && (w.is_zero() || w.is_negative()))
            throw SignedConditioning("conditioning cell has nonpositive total weight");
        d.weight.push_back(w);
        d.usable.push_back(!w.is_zero() && !w.is_negative());
    }
    return d;
}

Rational subset_cell_weight(const ClassicalModel& m, const std::vector<char>& subset,
                            const std::vector<int>& cell) {
    Rational w = 0;
    for (int s : cell)
        if (subset[s]) w = w + m.weights[s];
    return w;
}

}  // namespace

ClassicalRecursionResult classical_recursion(const ClassicalModel& m, const Rational& q_alice,
                                             const Rational& q_bob) {
    const CellData da = prepare_cells(m, m.alice_partition);
    const CellData db = prepare_cells(m, m.bob_partition);

    std::vector<char> in_event(m.n_states, 0);
    for (int s : m.event) in_event[s] = 1;

    // A_0 / B_0: states whose cell assigns exactly q to the event.
    auto initial = [&](const CellData& d, const std::vector<std::vector<int>>& cells,
                       const Rational& q) {
        std::vector<char> out(m.n_states, 0);
        for (size_t c = 0; c < cells.size(); ++c) {
            if (!d.usable[c]) continue;
            if (subset_cell_weight(m, in_event, cells[c]) == q * d.weight[c])
                for (int s : cells[c]) out[s] = 1;
        }
        return out;
    };
    std::vector<char> a = initial(da, m.alice_partition, q_alice);
    std::vector<char> b = initial(db, m.bob_partition, q_bob);

    // Refine: keep states whose cell is certain of the other agent's set.
    auto certain_of = [&](const CellData& d, const std::vector<std::vector<int>>& cells,
                          const std::vector<char>& target) {
        std::vector<char> out(m.n_states, 0);
        for (size_t c = 0; c < cells.size(); ++c) {
            if (!d.usable[c]) continue;
            if (subset_cell_weight(m, target, cells[c]) == d.weight[c])
                for (int s : cells[c]) out[s] = 1;
        }
        return out;
    };

    for (;;) {
        const std::vector<char> ca = certain_of(da, m.alice_partition, b);
        const std::vector<char> cb = certain_of(db, m.bob_partition, a);
        std::vector<char> a_next(m.n_states, 0), b_next(m.n_states, 0);
        for (int s = 0; s < m.n_states; ++s) {
            a_next[s] = a[s] && ca[s];
            b_next[s] = b[s] && cb[s];
        }
        if (a_next == a && b_next == b) break;
        a = std::move(a_next);
        b = std::move(b_next);
    }

    ClassicalRecursionResult r;
    for (int s = 0; s < m.n_states; ++s) {
        if (a[s]) r.a_n.push_back(s);
        if (b[s]) r.b_n.push_back(s);
        if (a[s] && b[s]) r.c_inf.push_back(s);
    }
    return r;
}

Rational pooled_posterior(const ClassicalModel& m, int state) {
    if (state < 0 || state >= m.n_states) throw ValidationError("state out of range");
    const std::vector<int> ia = cell_index(m.alice_partition, m.n_states);
    const std::vector<int> ib = cell_index(m.bob_partition, m.n_states);
    std::vector<int> joint;
    for (int s = 0; s < m.n_states; ++s)
        if (ia[s] == ia[state] && ib[s] == ib[state]) joint.push_back(s);
    const Rational w = m.weight_of(joint);
    if (w.is_zero() || w.is_negative())
        throw ZeroConditioningWeight("pooled_posterior: joint cell has nonpositive weight");
    std::vector<int> joint_event;
    std::vector<char> in_event(m.n_states, 0);
    for (int s : m.event) in_event[s] = 1;
    for (int s : joint)
        if (in_event[s]) joint_event.push_back(s);
    return m.weight_of(joint_event) / w;
}

Rational box_conditional(const NoSignalingBox& box, const BoxOutcome& target,
                         const BoxOutcome& given) {
    const int lt = box.label_index(target.label);
    const int lg = box.label_index(given.label);
    if (lt < 0 || lg < 0) throw ValidationError("unknown box label");
    const NoSignalingBox::Context* c = box.find_context(lt, lg);
    if (c == nullptr)
        throw ValidationError("labels '" + target.label + "' and '" + given.label +
                              "' are not a context of the box");
    // probs order over (first, second): (0,0), (1,0), (0,1), (1,1)
    auto entry_outcome = [&](int k, int label) {
        const int o_first = (k == 1 || k == 3) ? 1 : 0;
        const int o_second = (k == 2 || k == 3) ? 1 : 0;
        return label == c->first ? o_first : o_second;
    };
    Rational num = 0, den = 0;
    for (int k = 0; k < 4; ++k) {
        if (entry_outcome(k, lg) != given.outcome) continue;
        den = den + c->probs[k];
        if (entry_outcome(k, lt) == target.outcome) num = num + c->probs[k];
    }
    if (den.is_zero()) throw ZeroConditioningWeight("box_conditional: zero marginal");
    return num / den;
}

bool check_zero_one_chain(const NoSignalingBox& box) {
    const Rational one(1);
    return box_conditional(box, {"e", 1}, {"a", 1}) == one &&
           box_conditional(box, {"b", 1}, {"a", 1}) == one &&
           box_conditional(box, {"e", 0}, {"b", 1}) == one;
}

std::vector<int> assignment_states(const ClassicalModel& m, const std::string& label,
                                   int outcome) {
    int li = -1;
    for (size_t i = 0; i < m.labels.size(); ++i)
        if (m.labels[i] == label) li = static_cast<int>(i);
    if (li < 0) throw ValidationError("model has no assignment label '" + label + "'");
    std::vector<int> out;
    for (int s = 0; s < m.n_states; ++s)
        if (m.assignments[s][li] == outcome) out.push_back(s);
    return out;
}

bool signed_realization_check(const ClassicalModel& m, const NoSignalingBox& box) {
    if (m.labels.empty() || m.assignments.size() != static_cast<size_t>(m.n_states))
        throw ValidationError("model lacks the phase-space assignment table");
    for (const std::string& l : box.labels)
        if (std::find(m.labels.begin(), m.labels.end(), l) == m.labels.end())
            throw ValidationError("model does not carry box label '" + l + "'");

    for (const auto& c : box.contexts) {
        const std::string& l1 = box.labels[c.first];
        const std::string& l2 = box.labels[c.second];
        for (int k = 0; k < 4; ++k) {
            const int o1 = (k == 1 || k == 3) ? 1 : 0;
            const int o2 = (k == 2 || k == 3) ? 1 : 0;
            const std::vector<int> s1 = assignment_states(m, l1, o1);
            const std::vector<int> s2 = assignment_states(m, l2, o2);
            std::vector<int> both;
            std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                                  std::back_inserter(both));
            if (m.weight_of(both) != c.probs[k]) return false;
        }
    }
    return true;
}

Rational signed_conditional(const ClassicalModel& m, const std::vector<int>& event,
                            const std::vector<int>& cell) {
    const Rational w = m.weight_of(cell);
    if (w.is_zero()) throw SignedConditioning("signed_conditional: zero-weight cell");
    std::vector<char> in_event(m.n_states, 0);
    for (int s : event) in_event[s] = 1;
    std::vector<int> inter;
    for (int s : cell)
        if (in_event[s]) inter.push_back(s);
    return m.weight_of(inter) / w;
}

}  // namespace qagree
