#include "qagree/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qagree {

namespace {

using json = nlohmann::ordered_json;

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx json_to_complex(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex entries must be [real, imag] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim; ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix json_to_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const int dim = static_cast<int>(j.size());
    std::vector<cplx> entries;
    entries.reserve(static_cast<size_t>(dim) * dim);
    for (const json& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ParseError("matrix rows must all have the same length as the row count");
        for (const json& e : row) entries.push_back(json_to_complex(e));
    }
    return ComplexMatrix(dim, std::move(entries));
}

std::vector<cplx> json_to_vector(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("vector must be a non-empty array");
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const json& e : j) v.push_back(json_to_complex(e));
    return v;
}

Rational json_to_rational(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
            throw ParseError("rational arrays must be [numerator, denominator]");
        return Rational(j[0].get<long long>(), j[1].get<long long>());
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) {
        Rational r;
        if (!try_rational_from_double(j.get<double>(), r))
            throw ParseError("number has no small-denominator rational form; use [num, den]");
        return r;
    }
    throw ParseError("expected a rational ([num, den], \"p/q\", or number)");
}

json rational_to_json(const Rational& r) { return json::array({r.num, r.den}); }

FactorRole parse_role(const std::string& s) {
    if (s == "alice") return FactorRole::Alice;
    if (s == "bob") return FactorRole::Bob;
    if (s == "inaccessible") return FactorRole::Inaccessible;
    if (s == "shared") return FactorRole::Shared;
    throw ParseError("unknown factor role '" + s + "'");
}

std::vector<int> json_to_ints(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    for (const json& e : j) {
        if (!e.is_number_integer()) throw ParseError(std::string(what) + " must contain integers");
        out.push_back(e.get<int>());
    }
    return out;
}

std::vector<ComplexMatrix> parse_measurement(const json& j, const HilbertFactorization& f,
                                             const char* who) {
    if (!j.is_object()) throw ParseError(std::string(who) + " measurement must be an object");
    const bool has_factor = j.contains("factor");

    if (j.contains("subspaces")) {
        if (!has_factor)
            throw ParseError(std::string(who) + ": subspace lists need a 'factor' index");
        const int factor = j.at("factor").get<int>();
        if (factor < 0 || factor >= static_cast<int>(f.dims.size()))
            throw ParseError(std::string(who) + ": factor index out of range");
        const int d = f.dims[factor];
        std::vector<ComplexMatrix> projs;
        for (const json& subspace : j.at("subspaces")) {
            ComplexMatrix p(d);
            for (int idx : json_to_ints(subspace, "subspace")) {
                if (idx < 0 || idx >= d)
                    throw ParseError(std::string(who) + ": subspace index out of range");
                p(idx, idx) = 1.0;
            }
            projs.push_back(embed_local(p, factor, f));
        }
        return projs;
    }
    if (j.contains("projectors")) {
        std::vector<ComplexMatrix> projs;
        for (const json& pj : j.at("projectors")) {
            ComplexMatrix p = json_to_matrix(pj);
            projs.push_back(has_factor ? embed_local(p, j.at("factor").get<int>(), f)
                                       : std::move(p));
        }
        return projs;
    }
    throw ParseError(std::string(who) + " measurement needs 'subspaces' or 'projectors'");
}

ComplexMatrix parse_property(const json& j, const HilbertFactorization& f) {
    if (!j.is_object()) throw ParseError("property must be an object");
    ComplexMatrix local;
    if (j.contains("vector"))
        local = outer(json_to_vector(j.at("vector")));
    else if (j.contains("matrix"))
        local = json_to_matrix(j.at("matrix"));
    else
        throw ParseError("property needs 'matrix' or 'vector'");
    if (j.contains("factors"))
        return embed_on_factors(local, json_to_ints(j.at("factors"), "factors"), f);
    return local;
}

Scenario parse_quantum(const json& payload) {
    HilbertFactorization f;
    f.dims = json_to_ints(payload.at("dims"), "dims");
    if (payload.contains("roles")) {
        for (const json& r : payload.at("roles")) f.roles.push_back(parse_role(r.get<std::string>()));
    } else {
        // Default tripartite role order; shorter lists fall back to shared.
        const std::vector<FactorRole> def{FactorRole::Alice, FactorRole::Bob,
                                          FactorRole::Inaccessible};
        for (size_t i = 0; i < f.dims.size(); ++i)
            f.roles.push_back(i < def.size() && f.dims.size() == 3 ? def[i] : FactorRole::Shared);
    }

    ComplexMatrix rho;
    if (payload.contains("state_vector")) {
        std::vector<cplx> psi = json_to_vector(payload.at("state_vector"));
        rho = outer(psi);
    } else if (payload.contains("rho")) {
        rho = json_to_matrix(payload.at("rho"));
    } else {
        throw ParseError("quantum payload needs 'state_vector' or 'rho'");
    }

    Measurement alice{Agent::Alice, parse_measurement(payload.at("alice"), f, "alice")};
    Measurement bob{Agent::Bob, parse_measurement(payload.at("bob"), f, "bob")};
    ComplexMatrix property = parse_property(payload.at("property"), f);
    return make_scenario(std::move(f), std::move(rho), std::move(alice), std::move(bob),
                         std::move(property));
}

ClassicalModel parse_classical(const json& payload) {
    std::vector<Rational> weights;
    for (const json& w : payload.at("weights")) weights.push_back(json_to_rational(w));
    const int n = static_cast<int>(weights.size());
    std::vector<std::vector<int>> pa, pb;
    for (const json& cell : payload.at("alice_partition")) pa.push_back(json_to_ints(cell, "cell"));
    for (const json& cell : payload.at("bob_partition")) pb.push_back(json_to_ints(cell, "cell"));
    ClassicalModel m = make_classical_model(
        n, std::move(weights), std::move(pa), std::move(pb),
        json_to_ints(payload.at("event"), "event"), payload.value("signed", false));
    if (payload.contains("labels")) {
        for (const json& l : payload.at("labels")) m.labels.push_back(l.get<std::string>());
        for (const json& row : payload.at("assignments"))
            m.assignments.push_back(json_to_ints(row, "assignment row"));
        if (m.assignments.size() != static_cast<size_t>(m.n_states))
            throw ParseError("assignments must have one row per state");
        for (const auto& row : m.assignments)
            if (row.size() != m.labels.size())
                throw ParseError("assignment rows must have one outcome per label");
    }
    return m;
}

NoSignalingBox parse_box(const json& payload) {
    std::vector<std::string> labels;
    for (const json& l : payload.at("labels")) labels.push_back(l.get<std::string>());
    std::vector<NoSignalingBox::Context> contexts;
    for (const json& cj : payload.at("contexts")) {
        NoSignalingBox::Context c;
        const json& pair = cj.at("pair");
        if (!pair.is_array() || pair.size() != 2) throw ParseError("context 'pair' must name two labels");
        auto index_of = [&](const std::string& name) {
            for (size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == name) return static_cast<int>(i);
            throw ParseError("context names unknown label '" + name + "'");
        };
        c.first = index_of(pair[0].get<std::string>());
        c.second = index_of(pair[1].get<std::string>());
        const json& probs = cj.at("probs");
        if (!probs.is_array() || probs.size() != 4)
            throw ParseError("context 'probs' must list four entries: (0,0),(1,0),(0,1),(1,1)");
        for (int k = 0; k < 4; ++k) c.probs[k] = json_to_rational(probs[k]);
        contexts.push_back(std::move(c));
    }
    return make_no_signaling_box(std::move(labels), std::move(contexts));
}

}  // namespace

ScenarioFile parse_scenario_file(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        ScenarioFile f;
        f.format_version = j.value("format_version", 1);
        if (f.format_version != 1)
            throw ParseError("unsupported format_version " + std::to_string(f.format_version));
        const std::string kind = j.at("kind").get<std::string>();
        const json& payload = j.at("payload");
        if (kind == "quantum") {
            f.kind = ScenarioFile::Kind::Quantum;
            f.scenario = parse_quantum(payload);
        } else if (kind == "classical") {
            f.kind = ScenarioFile::Kind::Classical;
            f.model = parse_classical(payload);
        } else if (kind == "box") {
            f.kind = ScenarioFile::Kind::Box;
            f.box = parse_box(payload);
        } else {
            throw ParseError("unknown kind '" + kind + "'");
        }
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scenario file: ") + e.what());
    }
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_file(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    json payload;
    payload["dims"] = s.factorization.dims;
    json roles = json::array();
    for (FactorRole r : s.factorization.roles) roles.push_back(to_string(r));
    payload["roles"] = std::move(roles);
    payload["rho"] = matrix_to_json(s.rho);
    json alice, bob;
    alice["projectors"] = json::array();
    for (const ComplexMatrix& p : s.alice.projectors) alice["projectors"].push_back(matrix_to_json(p));
    bob["projectors"] = json::array();
    for (const ComplexMatrix& p : s.bob.projectors) bob["projectors"].push_back(matrix_to_json(p));
    payload["alice"] = std::move(alice);
    payload["bob"] = std::move(bob);
    payload["property"] = json{{"matrix", matrix_to_json(s.property)}};
    json out{{"format_version", 1}, {"kind", "quantum"}, {"payload", std::move(payload)}};
    return out.dump(2);
}

std::string serialize_model(const ClassicalModel& m) {
    json payload;
    json weights = json::array();
    for (const Rational& w : m.weights) weights.push_back(rational_to_json(w));
    payload["weights"] = std::move(weights);
    payload["alice_partition"] = m.alice_partition;
    payload["bob_partition"] = m.bob_partition;
    payload["event"] = m.event;
    payload["signed"] = m.signed_measure;
    if (!m.labels.empty()) {
        payload["labels"] = m.labels;
        payload["assignments"] = m.assignments;
    }
    json out{{"format_version", 1}, {"kind", "classical"}, {"payload", std::move(payload)}};
    return out.dump(2);
}

std::string serialize_box(const NoSignalingBox& box) {
    json payload;
    payload["labels"] = box.labels;
    json contexts = json::array();
    for (const auto& c : box.contexts) {
        json cj;
        cj["pair"] = json::array({box.labels[c.first], box.labels[c.second]});
        json probs = json::array();
        for (const Rational& p : c.probs) probs.push_back(rational_to_json(p));
        cj["probs"] = std::move(probs);
        contexts.push_back(std::move(cj));
    }
    payload["contexts"] = std::move(contexts);
    json out{{"format_version", 1}, {"kind", "box"}, {"payload", std::move(payload)}};
    return out.dump(2);
}

}  // namespace qagree
