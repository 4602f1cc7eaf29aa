#include "ospk/json_io.hpp"

#include "ospk/chain.hpp"

#include <fstream>
#include <sstream>

namespace ospk {

namespace {

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) {
        // decimal floats become exact fractions of their shortest 15-digit form
        std::ostringstream os;
        os.precision(15);
        os << v.get<double>();
        std::string s = os.str();
        auto dot = s.find('.');
        if (dot == std::string::npos) return s;
        std::string digits = s.substr(dot + 1);
        std::string den = "1" + std::string(digits.size(), '0');
        return s.substr(0, dot) + digits + "/" + den;
    }
    throw std::invalid_argument("parameter values must be numbers or strings");
}

}  // namespace

KSolution ksolution_from_json(const json& j, const GradingSpec* fallback, bool force) {
    if (!j.is_object()) throw std::invalid_argument("boundary JSON must be an object");
    GradingSpec s = j.contains("algebra") ? parse_algebra(j.at("algebra").get<std::string>())
                    : fallback           ? *fallback
                                         : throw std::invalid_argument("boundary JSON lacks \"algebra\"");
    std::string fam = j.value("family", std::string("D1"));
    std::string norm = j.value("normalization", std::string("rational-u"));
    if (norm != "rational-u" && norm != "physical") throw std::invalid_argument("normalization must be rational-u or physical");

    KSolution k = [&] {
        if (fam == "I" || fam == "identity") return identity_k(s);
        Family f = parse_family(fam);
        if (f == Family::CUSTOM) {
            GMat<RatFunc> m(s, 1);
            for (const auto& e : j.at("entries")) m.m.set(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1, parse_ratfunc(scalar_text(e.at(2))));
            return make_custom(s, m, norm == "physical" ? Normalization::PhysicalLambda : Normalization::RationalU);
        }
        ParamMap p;
        if (j.contains("params"))
            for (auto& [key, v] : j.at("params").items()) p[key] = Param::parse(scalar_text(v));
        return force ? force_k(s, f, p) : make_k(s, f, p);
    }();
    if (norm == "physical" && k.norm == Normalization::RationalU) k = to_physical(k);
    return k;
}

json to_json(const KSolution& k) {
    json params = json::object();
    for (const auto& [key, v] : k.params) params[key] = v.str();
    json entries = json::array();
    k.matrix.m.for_each([&](int i, int j, const RatFunc& v) {
        entries.push_back({i + 1, j + 1, v.str(k.norm == Normalization::RationalU ? "u" : "l")});
    });
    return {{"algebra", k.spec.descriptor()},
            {"family", to_string(k.family)},
            {"params", params},
            {"normalization", to_string(k.norm)},
            {"entries", entries}};
}

json to_json(const VerifyReport& r) {
    json out = {{"identity", r.identity},
                {"algebra", r.algebra},
                {"status", r.ok ? "pass" : "fail"},
                {"max_degree", r.max_degree},
                {"elapsed_ms", r.elapsed_ms}};
    if (r.witness) out["witness"] = *r.witness;
    return out;
}

json to_json(const ClassifiedFamily& f) {
    json out = {{"family", f.family},
                {"params", f.params},
                {"constraints", f.constraints},
                {"labels", f.labels},
                {"verified", f.verified}};
    if (!f.ints.empty()) out["ints"] = f.ints;
    if (f.fixed) out["fixed"] = *f.fixed;
    return out;
}

json load_json_arg(const std::string& text) {
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + text.substr(1));
        return json::parse(in);
    }
    return json::parse(text);
}

}  // namespace ospk
