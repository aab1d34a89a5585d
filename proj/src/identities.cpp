#include "zakframe/identities.hpp"

#include <random>

#include "json.hpp"

namespace zakframe::identities {

namespace {

Rational R(long long n, long long d) { return zak::make_rational(n, d); }

// seeded coefficients in [-1, 1] bounded away from zero
double draw_coeff(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double c = 0.0;
    do {
        c = dist(rng);
    } while (std::fabs(c) < 0.05);
    return c;
}

std::string fmt(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace

std::vector<IdentityCase> catalog(int m_max, unsigned seed) {
    std::vector<IdentityCase> out;
    QuarticSurd sqrt2 = QuarticSurd::make(1, 1, 4);
    QuarticSurd sqrt3 = QuarticSurd::make(1, 1, 9);
    QuarticSurd sqrt4 = QuarticSurd::make(2, 1, 1);
    QuarticSurd root4_3 = QuarticSurd::make(1, 1, 3);
    QuarticSurd root4_3_inv = root4_3.reciprocal();     // (1/3) 27^{1/4}
    QuarticSurd root4_27 = QuarticSurd::make(1, 1, 27);
    const QuarticSurd sqrt_s[3] = {sqrt2, sqrt3, sqrt4};

    for (int m = 0; m <= m_max; ++m) {
        HermiteWindow w2 = HermiteWindow::single(4 * m + 2);
        for (int p : {1, 3})
            out.push_back({"I1", "m=" + std::to_string(m) + " p=" + std::to_string(p), w2, sqrt2,
                           R(p, 4), R(1, 2), true});
        for (int p : {1, 5})
            out.push_back({"I2", "m=" + std::to_string(m) + " p=" + std::to_string(p), w2, sqrt3,
                           R(p, 6), R(1, 2), true});
        HermiteWindow w3 = HermiteWindow::single(4 * m + 3);
        for (int s = 2; s <= 4; ++s)
            for (int p = 0; p < s; ++p)
                out.push_back({"I3",
                               "m=" + std::to_string(m) + " s=" + std::to_string(s) +
                                   " p=" + std::to_string(p),
                               w3, sqrt_s[s - 2], R(p, s), R(0, 1), true});
    }

    // I4: class versions on the full zero lattices, seeded windows
    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < 10; ++rep) {
        HermiteWindow w({{2, draw_coeff(rng)}, {6, draw_coeff(rng)}, {10, draw_coeff(rng)}});
        std::string tag = "H2#" + std::to_string(rep);
        for (long long px : {1, 2, 3})
            out.push_back({"I4", tag + " sqrt2 x=" + fmt(R(px, 4)), w, sqrt2, R(px, 4), R(1, 2), true});
        for (long long px : {1, 3, 5})
            out.push_back({"I4", tag + " sqrt3 x=" + fmt(R(px, 6)), w, sqrt3, R(px, 6), R(1, 2), true});
    }
    for (int rep = 0; rep < 10; ++rep) {
        HermiteWindow w({{3, draw_coeff(rng)}, {7, draw_coeff(rng)}, {11, draw_coeff(rng)}});
        std::string tag = "H3#" + std::to_string(rep);
        for (int s = 2; s <= 4; ++s)
            for (int p = 0; p < s; ++p)
                out.push_back({"I4", tag + " s=" + std::to_string(s) + " x=" + fmt(R(p, s)), w,
                               sqrt_s[s - 2], R(p, s), R(0, 1), true});
    }

    out.push_back({"I5", "", HermiteWindow::single(4), root4_3, R(0, 1), R(1, 2), false});
    out.push_back({"I6", "", HermiteWindow::single(4), root4_3_inv, R(0, 1), R(1, 2), false});
    for (int p = 0; p < 3; ++p)
        out.push_back({"I7", "p=" + std::to_string(p), HermiteWindow::single(5), root4_27, R(p, 3),
                       R(1, 2), false});
    return out;
}

std::vector<std::string> catalog_ids() { return {"I1", "I2", "I3", "I4", "I5", "I6", "I7"}; }

VerificationReport verify(const IdentityCase& item, Precision prec, const XReal& tolerance) {
    XReal zak_tol = tolerance * 0.125;
    zak::ZakEvaluationX ev = zak::zak_eval_x(item.window, item.lambda, item.x, item.gamma, zak_tol, prec);

    VerificationReport rep{item,   static_cast<int>(prec), ev.value.abs(), ev.truncation_bound,
                           ev.terms_used, false,           "",             ""};
    XReal gate = tolerance;
    XReal quad_bound = ev.truncation_bound * 4.0;
    if (gate < quad_bound) gate = quad_bound;
    rep.pass = rep.residual <= gate;
    rep.residual_str = rep.residual.to_string(20);
    rep.truncation_str = rep.truncation_bound.to_string(8);
    return rep;
}

XReal negative_control(const HermiteWindow& w, const QuarticSurd& lambda, const Rational& x,
                       const Rational& gamma, Precision prec) {
    XReal tol = XReal::parse("1e-20", prec);
    if (static_cast<int>(prec) >= 212) tol = XReal::parse("1e-40", prec);
    zak::ZakEvaluationX ev = zak::zak_eval_x(w, lambda, x, gamma, tol, prec);
    return ev.value.abs();
}

std::string report_json_line(const VerificationReport& rep) {
    nlohmann::json j;
    j["id"] = rep.item.id;
    j["params"] = rep.item.params;
    j["window"] = rep.item.window.spec_string();
    j["lambda"] = rep.item.lambda.to_string();
    j["x"] = fmt(rep.item.x);
    j["gamma"] = fmt(rep.item.gamma);
    j["precision_bits"] = rep.precision_bits;
    j["residual"] = rep.residual_str;
    j["truncation_bound"] = rep.truncation_str;
    j["terms_used"] = rep.terms_used;
    j["verdict"] = rep.pass ? "PASS" : "FAIL";
    j["basis"] = rep.item.proven ? "proven" : "verified-numerically";
    return j.dump();
}

}  // namespace zakframe::identities
