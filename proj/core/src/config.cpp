#include "selfsim/config.hpp"
#include "selfsim/errors.hpp"

#include <fstream>

namespace selfsim {

namespace {

using nlohmann::json;

Rat parse_rat_field(const json& j, const char* what) {
    if (!j.is_string()) throw InvalidInputError(std::string(what) + " must be a \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("malformed ") + what + ": " + e.what());
    }
}

const char* kDoubling = R"({
  "dimension": 1,
  "lambdas": ["1/2", "1/2"],
  "translations": [["0"], ["1"]],
  "probabilities": ["1/2", "1/2"]
})";

const char* kBernoulliGolden = R"({
  "dimension": 1,
  "lambdas": [{"minpoly": [-1, 1, 1], "interval": ["1/2", "1"]},
              {"minpoly": [-1, 1, 1], "interval": ["1/2", "1"]}],
  "translations": [["0"], ["1"]],
  "probabilities": ["1/2", "1/2"]
})";

const char* kOverlapHalves = R"({
  "dimension": 1,
  "lambdas": ["1/2", "1/2", "1/2"],
  "translations": [["0"], ["1"], ["1/2"]],
  "probabilities": ["1/3", "1/3", "1/3"]
})";

const char* kGasketThirds = R"({
  "dimension": 1,
  "lambdas": ["1/3", "1/3", "1/3"],
  "translations": [["0"], ["1"], ["2"]],
  "probabilities": ["1/3", "1/3", "1/3"]
})";

}  // namespace

AlgebraicScalar parse_scalar_literal(const json& j) {
    if (j.is_string()) {
        return AlgebraicScalar::from_rational(parse_rat_field(j, "scalar literal"));
    }
    if (j.is_object() && j.contains("minpoly") && j.contains("interval")) {
        if (!j["minpoly"].is_array() || !j["interval"].is_array() || j["interval"].size() != 2) {
            throw InvalidInputError("algebraic literal needs \"minpoly\" array and two-element \"interval\"");
        }
        std::vector<Int> coeffs;
        for (const json& c : j["minpoly"]) {
            if (c.is_number_integer()) {
                coeffs.emplace_back(c.get<long long>());
            } else if (c.is_string()) {
                coeffs.emplace_back(Int(c.get<std::string>()));
            } else {
                throw InvalidInputError("minpoly coefficients must be integers");
            }
        }
        Rat lo = parse_rat_field(j["interval"][0], "interval endpoint");
        Rat hi = parse_rat_field(j["interval"][1], "interval endpoint");
        return AlgebraicScalar::make(std::move(coeffs), std::move(lo), std::move(hi));
    }
    throw InvalidInputError("scalar literal must be a \"p/q\" string or a minpoly/interval object");
}

json scalar_literal(const AlgebraicScalar& s) {
    if (s.is_rational()) return rational_string(s.rational());
    json coeffs = json::array();
    for (const Int& c : s.minpoly()) coeffs.push_back(c.str());
    Interval iso = s.enclosure(32);
    return json{{"minpoly", coeffs},
                {"interval", {rational_string(iso.lo), rational_string(iso.hi)}}};
}

IFSModel parse_model_json(const json& j) {
    if (!j.is_object()) throw InvalidInputError("model config must be a JSON object");
    for (const char* key : {"dimension", "lambdas", "translations", "probabilities"}) {
        if (!j.contains(key)) throw InvalidInputError(std::string("model config missing \"") + key + "\"");
    }
    if (!j["dimension"].is_number_integer()) throw InvalidInputError("dimension must be an integer");
    int dim = j["dimension"].get<int>();

    std::vector<AlgebraicScalar> lambda;
    for (const json& l : j["lambdas"]) lambda.push_back(parse_scalar_literal(l));
    ContextPtr ctx = AlgebraicContext::make(lambda);

    std::vector<std::vector<FieldElement>> translations;
    for (const json& tv : j["translations"]) {
        if (!tv.is_array()) throw InvalidInputError("each translation must be an array of scalar literals");
        std::vector<FieldElement> coords;
        for (const json& c : tv) {
            if (c.is_string()) {
                coords.push_back(FieldElement::from_rational(ctx, parse_rat_field(c, "translation coordinate")));
            } else {
                // exact certification needs exact coordinates: irrational
                // entries must match one of the lambdas
                AlgebraicScalar s = parse_scalar_literal(c);
                std::size_t match = ctx->var_count();
                for (std::size_t v = 0; v < ctx->var_count(); ++v) {
                    if (ctx->lambda(v) == s) {
                        match = v;
                        break;
                    }
                }
                if (match == ctx->var_count()) {
                    throw InvalidInputError(
                        "irrational translation coordinates must equal one of the lambdas");
                }
                coords.push_back(FieldElement::variable(ctx, match));
            }
        }
        translations.push_back(std::move(coords));
    }

    std::vector<Rat> probabilities;
    for (const json& p : j["probabilities"]) probabilities.push_back(parse_rat_field(p, "probability"));

    return IFSModel::make(dim, std::move(lambda), std::move(translations), std::move(probabilities));
}

json model_to_json(const IFSModel& model) {
    const ContextPtr& ctx = model.context();
    json lambdas = json::array();
    for (std::size_t v = 0; v < ctx->var_count(); ++v) lambdas.push_back(scalar_literal(ctx->lambda(v)));
    json translations = json::array();
    for (std::size_t jmap = 0; jmap < model.map_count(); ++jmap) {
        json coords = json::array();
        for (const FieldElement& c : model.translation(jmap)) {
            if (c.is_rational()) {
                coords.push_back(rational_string(c.rational()));
            } else {
                std::size_t match = ctx->var_count();
                for (std::size_t v = 0; v < ctx->var_count(); ++v) {
                    if (c.equals(FieldElement::variable(ctx, v))) {
                        match = v;
                        break;
                    }
                }
                if (match == ctx->var_count()) {
                    throw UnsupportedFieldError(
                        "translation coordinate has no scalar-literal form (not rational, not a lambda)");
                }
                coords.push_back(scalar_literal(ctx->lambda(match)));
            }
        }
        translations.push_back(std::move(coords));
    }
    json probabilities = json::array();
    for (const Rat& p : model.probabilities()) probabilities.push_back(rational_string(p));
    return json{{"dimension", model.dim()},
                {"lambdas", std::move(lambdas)},
                {"translations", std::move(translations)},
                {"probabilities", std::move(probabilities)}};
}

IFSModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_model_json(j);
}

std::vector<std::string> preset_names() {
    return {"doubling", "bernoulli-golden", "overlap-halves", "gasket-thirds"};
}

IFSModel preset_model(const std::string& name) {
    const char* text = nullptr;
    if (name == "doubling") text = kDoubling;
    else if (name == "bernoulli-golden") text = kBernoulliGolden;
    else if (name == "overlap-halves") text = kOverlapHalves;
    else if (name == "gasket-thirds") text = kGasketThirds;
    if (!text) throw InvalidInputError("unknown preset: " + name);
    return parse_model_json(json::parse(text));
}

namespace {

json poly_to_json(const IntPolynomial& p) {
    json terms = json::array();
    for (const auto& [a, c] : p.terms()) {
        json exps = json::array();
        for (unsigned e : a) exps.push_back(e);
        terms.push_back(json::array({std::move(exps), c.str()}));
    }
    return terms;
}

IntPolynomial poly_from_json(const json& j, std::size_t nvars) {
    if (!j.is_array()) throw InvalidInputError("polynomial must be a term array");
    IntPolynomial p(nvars);
    for (const json& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_array() || !term[1].is_string()) {
            throw InvalidInputError("polynomial term must be [[exponents], \"coeff\"]");
        }
        MultiIndex a;
        for (const json& e : term[0]) a.push_back(e.get<unsigned>());
        if (a.size() != nvars) throw InvalidInputError("polynomial exponent arity mismatch");
        p.add_term(a, Int(term[1].get<std::string>()));
    }
    return p;
}

}  // namespace

json certificate_to_json(const OverlapCertificate& cert) {
    json identities = json::array();
    for (const IntPolynomial& p : cert.translation_identities) identities.push_back(poly_to_json(p));
    return json{{"n", cert.n},
                {"w1", cert.w1},
                {"w2", cert.w2},
                {"scale_identity", poly_to_json(cert.scale_identity)},
                {"translation_identities", std::move(identities)}};
}

OverlapCertificate certificate_from_json(const json& j, std::size_t var_count) {
    for (const char* key : {"n", "w1", "w2", "scale_identity", "translation_identities"}) {
        if (!j.contains(key)) throw InvalidInputError(std::string("certificate missing \"") + key + "\"");
    }
    OverlapCertificate cert;
    cert.n = j["n"].get<unsigned>();
    cert.w1 = j["w1"].get<Word>();
    cert.w2 = j["w2"].get<Word>();
    cert.scale_identity = poly_from_json(j["scale_identity"], var_count);
    for (const json& p : j["translation_identities"]) {
        cert.translation_identities.push_back(poly_from_json(p, var_count));
    }
    return cert;
}

}  // namespace selfsim
