#include <potcap/model_io.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace potcap {
namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(const std::string& msg) {
    throw std::invalid_argument("model spec: " + msg);
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) bad_spec(std::string("unknown field '") + it.key() + "' in " + where);
    }
}

double need_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) bad_spec(std::string("missing field '") + key + "' in " + where);
    if (!j[key].is_number()) bad_spec(std::string("field '") + key + "' in " + where + " must be a number");
    return j[key].get<double>();
}

int need_int(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) bad_spec(std::string("missing field '") + key + "' in " + where);
    if (!j[key].is_number_integer()) bad_spec(std::string("field '") + key + "' in " + where + " must be an integer");
    return j[key].get<int>();
}

AsymptoticClass parse_class(const json& j, Side side, const char* where) {
    if (!j.is_object()) bad_spec(std::string(where) + " must be an object");
    reject_unknown(j, {"a", "b", "C"}, where);
    AsymptoticClass cls;
    cls.exponent_a = need_number(j, "a", where);
    cls.log_exponent_b = j.contains("b") ? need_number(j, "b", where) : 0.0;
    cls.constant_C = j.contains("C") ? need_number(j, "C", where) : 1.0;
    cls.side = side;
    if (!(cls.constant_C > 0.0)) bad_spec(std::string(where) + ": constant C must be positive");
    return cls;
}

}  // namespace

const RadialMeasure& ParsedModel::measure() const {
    if (!growth.radial)
        throw std::invalid_argument("model is not radial; this operation needs a radial weight");
    return *growth.radial;
}

ParsedModel parse_model(const json& j) {
    if (!j.is_object()) bad_spec("top level must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string()) bad_spec("missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();

    ParsedModel pm;
    if (kind == "power") {
        reject_unknown(j, {"kind", "n", "alpha"}, "power model");
        pm.growth = induced_growth(builtin_power(need_int(j, "n", "power model"),
                                                 need_number(j, "alpha", "power model")));
    } else if (kind == "log") {
        reject_unknown(j, {"kind", "n", "s", "beta"}, "log model");
        pm.growth = induced_growth(builtin_log(need_int(j, "n", "log model"),
                                               need_number(j, "s", "log model"),
                                               need_number(j, "beta", "log model")));
    } else if (kind == "ahlfors") {
        reject_unknown(j, {"kind", "Q"}, "ahlfors model");
        pm.growth = builtin_ahlfors(need_number(j, "Q", "ahlfors model"));
    } else if (kind == "table") {
        reject_unknown(j, {"kind", "points", "at_zero", "at_infinity"}, "table model");
        if (!j.contains("points") || !j["points"].is_array()) bad_spec("table model needs an array field 'points'");
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : j["points"]) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
                bad_spec("each table point must be a [rho, f] pair of numbers");
            pts.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        std::optional<AsymptoticClass> z, inf;
        if (j.contains("at_zero")) z = parse_class(j["at_zero"], Side::AtZero, "at_zero");
        if (j.contains("at_infinity")) inf = parse_class(j["at_infinity"], Side::AtInfinity, "at_infinity");
        pm.growth = growth_from_table(pts, z, inf);
    } else {
        bad_spec("unknown kind '" + kind + "' (expected power | log | ahlfors | table)");
    }
    return pm;
}

ParsedModel load_model(const std::string& spec) {
    std::string text = spec;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_model(json::parse(text));
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("model spec: cannot open file '" + spec + "'");
    json j;
    in >> j;
    return parse_model(j);
}

json to_json(const ExponentReport& rep) {
    json j;
    j["ls0"] = rep.ls0;
    j["us0"] = rep.us0;
    j["lq0"] = rep.lq0;
    j["uq0"] = rep.uq0;
    j["us0_in_uS0"] = rep.us0_in_uS0 ? json(*rep.us0_in_uS0) : json(nullptr);
    j["us0_in_lS0"] = rep.us0_in_lS0 ? json(*rep.us0_in_lS0) : json(nullptr);
    j["source"] = rep.source == ExponentSource::Analytic ? "analytic" : "empirical";
    return j;
}

ExponentReport exponent_report_from_json(const json& j) {
    ExponentReport rep;
    rep.ls0 = j.at("ls0").get<double>();
    rep.us0 = j.at("us0").get<double>();
    rep.lq0 = j.at("lq0").get<double>();
    rep.uq0 = j.at("uq0").get<double>();
    if (!j.at("us0_in_uS0").is_null()) rep.us0_in_uS0 = j.at("us0_in_uS0").get<bool>();
    if (!j.at("us0_in_lS0").is_null()) rep.us0_in_lS0 = j.at("us0_in_lS0").get<bool>();
    rep.source = j.at("source").get<std::string>() == "analytic" ? ExponentSource::Analytic
                                                                 : ExponentSource::Empirical;
    return rep;
}

json to_json(const CriticalExponents& ce) {
    json j;
    j["p"] = ce.p;
    if (!ce.tau_p)
        j["tau_p"] = nullptr;
    else if (std::isinf(*ce.tau_p))
        j["tau_p"] = "inf";
    else
        j["tau_p"] = *ce.tau_p;
    j["t_p"] = ce.t_p ? json(*ce.t_p) : json(nullptr);
    j["q_hat"] = ce.q_hat ? json(*ce.q_hat) : json(nullptr);
    return j;
}

CriticalExponents critical_exponents_from_json(const json& j) {
    CriticalExponents ce;
    ce.p = j.at("p").get<double>();
    const auto& tp = j.at("tau_p");
    if (tp.is_string()) {
        if (tp.get<std::string>() != "inf") throw std::invalid_argument("tau_p string must be 'inf'");
        ce.tau_p = std::numeric_limits<double>::infinity();
    } else if (!tp.is_null()) {
        ce.tau_p = tp.get<double>();
    }
    if (!j.at("t_p").is_null()) ce.t_p = j.at("t_p").get<double>();
    if (!j.at("q_hat").is_null()) ce.q_hat = j.at("q_hat").get<double>();
    return ce;
}

json to_json(const Verdict& v) {
    json j;
    j["state"] = to_string(v.state);
    j["basis"] = v.basis;
    j["hypotheses_used"] = v.hypotheses_used;
    return j;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    const std::string s = j.at("state").get<std::string>();
    if (s == "Member") v.state = VerdictState::Member;
    else if (s == "NonMember") v.state = VerdictState::NonMember;
    else if (s == "BorderlineIn") v.state = VerdictState::BorderlineIn;
    else if (s == "BorderlineOut") v.state = VerdictState::BorderlineOut;
    else if (s == "Inconclusive") v.state = VerdictState::Inconclusive;
    else throw std::invalid_argument("unknown verdict state '" + s + "'");
    v.basis = j.at("basis").get<std::string>();
    v.hypotheses_used = j.at("hypotheses_used").get<std::vector<std::string>>();
    return v;
}

json to_json(const NormResult& nr) {
    json j;
    j[nr.kind == NormKind::FunctionNorm ? "tau" : "t"] = nr.exponent;
    switch (nr.verdict) {
        case NormVerdict::Finite: j["value"] = nr.value; break;
        case NormVerdict::Divergent: j["value"] = "divergent"; break;
        case NormVerdict::Inconclusive: j["value"] = "inconclusive"; break;
    }
    j["verdict_basis"] = nr.basis;
    return j;
}

NormResult norm_result_from_json(const json& j) {
    NormResult nr;
    if (j.contains("tau")) {
        nr.kind = NormKind::FunctionNorm;
        nr.exponent = j.at("tau").get<double>();
    } else {
        nr.kind = NormKind::GradientNorm;
        nr.exponent = j.at("t").get<double>();
    }
    const auto& v = j.at("value");
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "divergent") nr.verdict = NormVerdict::Divergent;
        else if (s == "inconclusive") nr.verdict = NormVerdict::Inconclusive;
        else throw std::invalid_argument("unknown norm value '" + s + "'");
        nr.value = std::numeric_limits<double>::quiet_NaN();
    } else {
        nr.verdict = NormVerdict::Finite;
        nr.value = v.get<double>();
    }
    nr.basis = j.at("verdict_basis").get<std::string>();
    return nr;
}

json to_json(const CapacityResult& cr) {
    json j;
    j["method"] = to_string(cr.method);
    j["value"] = cr.value;
    j["error_estimate"] = cr.abs_error_estimate;
    j["flag"] = cr.hypothesis_met ? "" : "hypothesis-violation";
    return j;
}

CapacityResult capacity_result_from_json(const json& j) {
    CapacityResult cr;
    const std::string m = j.at("method").get<std::string>();
    if (m == "integral") cr.method = CapacityMethod::IntegralEstimate;
    else if (m == "exact") cr.method = CapacityMethod::ExactRadial;
    else if (m == "dyadic") cr.method = CapacityMethod::DyadicUpper;
    else if (m == "variational") cr.method = CapacityMethod::Variational;
    else if (m == "interpolation") cr.method = CapacityMethod::InterpolationLower;
    else throw std::invalid_argument("unknown capacity method '" + m + "'");
    cr.value = j.at("value").get<double>();
    cr.abs_error_estimate = j.at("error_estimate").get<double>();
    cr.hypothesis_met = j.at("flag").get<std::string>().empty();
    return cr;
}

}  // namespace potcap
