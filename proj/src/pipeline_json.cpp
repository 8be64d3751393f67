#include "specball/pipeline_json.hpp"

#include <json.hpp>

namespace specball {

namespace {

using nlohmann::json;

Complex parse_complex(const json &j, const char *what) {
    if (j.is_number())
        return Complex{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex{j[0].get<double>(), j[1].get<double>()};
    throw ParseError(std::string(what) + ": expected a number or an [re,im] pair");
}

EntirePoly parse_phi(const json &j) {
    if (!j.is_array())
        throw ParseError("phi: expected a coefficient array");
    std::vector<Complex> coeffs;
    coeffs.reserve(j.size());
    for (const auto &c : j)
        coeffs.push_back(parse_complex(c, "phi coefficient"));
    return EntirePoly(std::move(coeffs));
}

std::vector<Monomial> parse_monomials(const json &j, const char *what) {
    if (!j.is_object() || !j.contains("monomials") || !j["monomials"].is_array())
        throw ParseError(std::string(what) + ": expected {\"monomials\": [...]}");
    std::vector<Monomial> terms;
    for (const auto &t : j["monomials"]) {
        if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains("k") ||
            !t.contains("c"))
            throw ParseError(std::string(what) + ": monomial needs i, j, k, c");
        Monomial m;
        m.i = t["i"].get<int>();
        m.j = t["j"].get<int>();
        m.k = t["k"].get<int>();
        m.c = parse_complex(t["c"], "monomial coefficient");
        terms.push_back(m);
    }
    return terms;
}

Mat2 parse_mat2(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw ParseError("matrix: expected a 2x2 nested array of [re,im] pairs");
    return {parse_complex(j[0][0], "matrix entry"), parse_complex(j[0][1], "matrix entry"),
            parse_complex(j[1][0], "matrix entry"), parse_complex(j[1][1], "matrix entry")};
}

Automorphism parse_step(const json &j) {
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
        throw ParseError("pipeline step: expected an object with an \"op\" field");
    const std::string op = j["op"].get<std::string>();
    try {
        if (op == "transpose")
            return Automorphism::transpose();
        if (op == "moebius") {
            if (!j.contains("alpha") || !j.contains("gamma"))
                throw ParseError("moebius step: needs alpha and gamma");
            return Automorphism::moebius(MoebiusParams(
                parse_complex(j["alpha"], "alpha"), parse_complex(j["gamma"], "gamma")));
        }
        if (op == "diag_twist") {
            if (!j.contains("phi"))
                throw ParseError("diag_twist step: needs phi");
            return Automorphism::diag_twist(parse_phi(j["phi"]));
        }
        if (op == "lower_twist") {
            if (!j.contains("a"))
                throw ParseError("lower_twist step: needs a");
            return Automorphism::lower_twist(
                TwistFunction(parse_monomials(j["a"], "lower_twist a")));
        }
        if (op == "diag_conj") {
            if (!j.contains("a"))
                throw ParseError("diag_conj step: needs a");
            const bool exp = j.value("exp", false);
            return Automorphism::diag_conj(
                InvariantFunction(parse_monomials(j["a"], "diag_conj a"), exp));
        }
    } catch (const std::invalid_argument &e) {
        throw ParseError(std::string("pipeline step \"") + op + "\": " + e.what());
    }
    throw ParseError("pipeline step: unknown op \"" + op + "\"");
}

json parse_text(const std::string &text, const char *what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError(std::string(what) + ": malformed JSON");
    return j;
}

} // namespace

Mat2 parse_mat2_json(const std::string &text) {
    return parse_mat2(parse_text(text, "matrix"));
}

EntirePoly parse_phi_json(const std::string &text) {
    try {
        return parse_phi(parse_text(text, "phi"));
    } catch (const std::invalid_argument &e) {
        throw ParseError(std::string("phi: ") + e.what());
    }
}

Automorphism parse_pipeline_json(const std::string &text) {
    const json j = parse_text(text, "pipeline");
    if (!j.is_array())
        throw ParseError("pipeline: expected a JSON list of steps");
    if (j.empty())
        throw ParseError("pipeline: step list must be non-empty");
    std::vector<Automorphism> steps;
    steps.reserve(j.size());
    for (const auto &s : j)
        steps.push_back(parse_step(s));
    return Automorphism::compose(std::move(steps));
}

} // namespace specball
