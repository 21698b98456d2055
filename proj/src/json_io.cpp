#include "glvol/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace glvol {

namespace {

mpq_class rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("malformed rational: \"" + s + "\"");
    q.canonicalize();
    return q;
}

}  // namespace

ordered_json scalar_json(const ExactScalar& s) {
    ordered_json terms = ordered_json::array();
    for (const auto& [deg, q] : s.terms()) {
        terms.push_back(ordered_json{{"pi_deg", deg},
                                     {"re", q.re().get_str()},
                                     {"im", q.im().get_str()}});
    }
    return ordered_json{{"terms", std::move(terms)}};
}

ExactScalar scalar_from_json(const ordered_json& j) {
    ExactScalar out;
    for (const auto& term : j.at("terms")) {
        unsigned deg = term.at("pi_deg").get<unsigned>();
        GaussianRational q(rational_from_string(term.at("re").get<std::string>()),
                           rational_from_string(term.at("im").get<std::string>()));
        out += ExactScalar::monomial(q, deg);
    }
    return out;
}

ordered_json form_json(const Form& f) {
    int n = f.n();
    ordered_json out = ordered_json::array();
    for (const auto& [blade, c] : f.terms()) {
        ordered_json factors = ordered_json::array();
        for (Blade rest = blade; rest; rest &= rest - 1) {
            int p = std::countr_zero(rest);
            factors.push_back(ordered_json::array({p / n, p % n}));
        }
        out.push_back(ordered_json{{"blade", std::move(factors)}, {"coeff", scalar_json(c)}});
    }
    return out;
}

ordered_json betti_json(const BettiTable& table) {
    std::vector<long> expected = expected_poincare(table.n);
    bool match = table.betti == expected;
    return ordered_json{{"n", table.n},
                        {"betti", table.betti},
                        {"expected", expected},
                        {"match", match}};
}

ordered_json estimate_json(const IntegrationEstimate& est, double expected_modulus) {
    double modulus = std::abs(est.value);
    ordered_json out{{"n", est.n},
                     {"method", est.method},
                     {"value", {{"re", est.value.real()}, {"im", est.value.imag()}}},
                     {"modulus", modulus},
                     {"stderr", est.std_error},
                     {"evaluations", est.evaluations},
                     {"expected_modulus", expected_modulus},
                     {"rel_error", std::abs(modulus - expected_modulus) / expected_modulus}};
    if (est.seed) out["seed"] = *est.seed;
    return out;
}

ordered_json trace_json(const RecursionTrace& step) {
    return ordered_json{{"n", step.n},
                        {"contraction_checked", step.contraction_checked},
                        {"basis_change", step.basis_change.str()},
                        {"sphere_factor", step.sphere_factor.str()},
                        {"value", step.c_value.str()}};
}

}  // namespace glvol
