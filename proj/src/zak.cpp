#include "zakframe/zak.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace zakframe::zak {

using hermite::HermiteWindow;

namespace {

long long checked(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error(std::string("zak: rational overflow in ") + what);
    return static_cast<long long>(v);
}

long long floordiv(long long a, long long b) {  // b > 0
    long long q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("zak: rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x) || std::fabs(x) > 1000.0)
        throw std::invalid_argument("zak: coordinate out of range");
    double scaled = std::ldexp(x, 50);
    return make_rational(static_cast<long long>(std::llround(scaled)), 1LL << 50);
}

Rational rational_add(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 den = static_cast<__int128>(a.den) * b.den;
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {checked(num, "add"), checked(den, "add")};
}

Rational rational_sub(const Rational& a, const Rational& b) { return rational_add(a, {-b.num, b.den}); }

Rational rational_neg(const Rational& a) { return {-a.num, a.den}; }

Rational rational_mul(const Rational& a, const Rational& b) {
    long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    __int128 num = static_cast<__int128>(a.num / g1) * (b.num / g2);
    __int128 den = static_cast<__int128>(a.den / g2) * (b.den / g1);
    return {checked(num, "mul"), checked(den, "mul")};
}

long long rational_floor(const Rational& a) { return floordiv(a.num, a.den); }

QuarticSurd QuarticSurd::make(long long u, long long v, long long w) {
    if (u <= 0 || v <= 0 || w <= 0)
        throw std::invalid_argument("zak: quartic surd parts must be positive");
    // move fourth powers of prime factors of w into u
    for (long long p = 2; p * p * p * p <= w; ++p) {
        long long p4 = p * p * p * p;
        while (w % p4 == 0) {
            w /= p4;
            u = checked(static_cast<__int128>(u) * p, "surd");
        }
    }
    long long g = std::gcd(u, v);
    return {u / g, v / g, w};
}

QuarticSurd QuarticSurd::reciprocal() const {
    // 1/((u/v) w^{1/4}) = (v/(u w)) (w^3)^{1/4}
    __int128 w3 = static_cast<__int128>(w) * w * w;
    return make(v, checked(static_cast<__int128>(u) * w, "surd reciprocal"), checked(w3, "surd reciprocal"));
}

double QuarticSurd::to_double() const {
    return static_cast<double>(u) / static_cast<double>(v) * std::pow(static_cast<double>(w), 0.25);
}

XReal QuarticSurd::value(Precision p) const {
    return XReal::from_ratio(u, v, p) * xprec::quarter_root(w, p);
}

std::string QuarticSurd::to_string() const {
    std::string s;
    if (u != 1 || v != 1) {
        s += std::to_string(u);
        if (v != 1) s += "/" + std::to_string(v);
        if (w != 1) s += "*";
    }
    if (w != 1)
        s += std::to_string(w) + "^(1/4)";
    else if (u == 1 && v == 1)
        s = "1";
    return s;
}

double ZakParameter::to_double() const {
    if (exact()) return surd().to_double();
    double d = std::get<double>(v_);
    if (!(d > 0.0)) throw std::invalid_argument("zak: parameter must be positive");
    return d;
}

ZakParameter ZakParameter::reciprocal() const {
    if (exact()) return ZakParameter(surd().reciprocal());
    return ZakParameter(1.0 / std::get<double>(v_));
}

std::complex<double> ReducedPoint::phase() const {
    long long m = ((x_floor % gamma0.den) * (gamma0.num % gamma0.den)) % gamma0.den;
    if (m < 0) m += gamma0.den;
    double theta = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(gamma0.den);
    return {std::cos(theta), std::sin(theta)};
}

XComplex ReducedPoint::phase_x(Precision p) const {
    long long m = ((x_floor % gamma0.den) * (gamma0.num % gamma0.den)) % gamma0.den;
    return xprec::unit_phase_fraction(m, gamma0.den, p);
}

ReducedPoint reduce_point(const Rational& xr, const Rational& gr) {
    Rational x = make_rational(xr.num, xr.den);
    Rational g = make_rational(gr.num, gr.den);
    long long fx = rational_floor(x);
    long long fg = rational_floor(g);
    Rational x0{x.num - fx * x.den, x.den};
    Rational g0{g.num - fg * g.den, g.den};
    return {x0, g0, fx};
}

namespace {

// ---- shared adaptive summation core ---------------------------------------

struct ShellControl {
    double tol_series;   // tolerance for the series part (value / sqrt(lambda))
    int k_start;
    int forced_terms;    // > 0 pins K
    double sum_abs = 0;  // sum of |w(arg)| in double, for the rounding floor
    double m_prev = 0, m_last = 0;
    double bound_series = 0;  // geometric tail bound for the series part
    int terms = 0;
};

// Policy supplies term evaluation; the control flow and certificates are
// shared between the native and extended paths.
template <class Policy>
void sum_shells(Policy& pol, ShellControl& sc) {
    auto add_shell = [&](long long k) {
        double m = 0.0;
        m += pol.add_term(k);
        if (k > 0) m += pol.add_term(-k);
        sc.terms += k > 0 ? 2 : 1;
        sc.sum_abs += m;
        sc.m_prev = sc.m_last;
        sc.m_last = m;
    };

    long long K = sc.forced_terms > 0 ? sc.forced_terms : sc.k_start;
    for (long long k = 0; k <= K; ++k) add_shell(k);

    if (sc.forced_terms > 0) {
        if (sc.m_last == 0.0) {
            sc.bound_series = 0.0;
        } else {
            double r = sc.m_prev > 0.0 ? sc.m_last / sc.m_prev : 0.5;
            sc.bound_series = r < 1.0 ? 2.0 * sc.m_last * r / (1.0 - r) : 1e300;
        }
        return;
    }

    while (true) {
        bool decaying = sc.m_last == 0.0 || (sc.m_prev > 0.0 && sc.m_last <= 0.5 * sc.m_prev) ||
                        (sc.m_prev == 0.0 && sc.m_last == 0.0);
        if (decaying && sc.m_last < 0.25 * sc.tol_series) {
            if (sc.m_last == 0.0) {
                sc.bound_series = 0.0;
            } else {
                double r = std::min(sc.m_last / sc.m_prev, 0.5);
                sc.bound_series = 2.0 * sc.m_last * r / (1.0 - r);
            }
            return;
        }
        long long K2 = 2 * K;
        if (K2 > (1 << 21)) throw std::runtime_error("zak: summation failed to converge");
        for (long long k = K + 1; k <= K2; ++k) add_shell(k);
        K = K2;
    }
}

int start_radius(int max_order, double lambda) {
    return std::max(8, static_cast<int>(std::ceil((max_order + 20) / lambda)));
}

struct NativePolicy {
    const HermiteWindow& w;
    double lambda;
    double x0;
    Rational gamma0;
    std::complex<double> sum{0.0, 0.0};

    double add_term(long long k) {
        double wv = hermite::window_eval(w, lambda * (x0 + static_cast<double>(k)));
        if (wv != 0.0) {
            long long m = ((k % gamma0.den) * (gamma0.num % gamma0.den)) % gamma0.den;
            if (m < 0) m += gamma0.den;
            double theta = -2.0 * M_PI * static_cast<double>(m) / static_cast<double>(gamma0.den);
            sum += wv * std::complex<double>(std::cos(theta), std::sin(theta));
        }
        return std::fabs(wv);
    }
};

struct ExactPolicy {
    const HermiteWindow& w;
    Precision prec;
    XReal root_w;          // w^{1/4} of the surd
    long long arg_num_u;   // u * x0.num
    long long arg_step;    // u * x0.den
    long long arg_den;     // v * x0.den
    Rational gamma0;
    XComplex sum;

    double add_term(long long k) {
        __int128 num = static_cast<__int128>(arg_step) * k + arg_num_u;
        XReal arg = root_w * XReal::from_ratio(checked(num, "zak argument"), arg_den, prec);
        XReal wv = hermite::window_eval(w, arg);
        if (!wv.is_zero()) {
            __int128 ph = -static_cast<__int128>(k % gamma0.den) * (gamma0.num % gamma0.den);
            XComplex phase = xprec::unit_phase_fraction(checked(ph, "zak phase"), gamma0.den, prec);
            sum = sum + phase * wv;
        }
        return std::fabs(wv.to_double());
    }
};

void check_floor(double tol, double floor_est) {
    if (tol < floor_est) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "zak: requested tolerance %.3g is below the rounding floor (about %.3g) at this "
                      "precision",
                      tol, floor_est);
        throw xprec::ToleranceFloorError(buf);
    }
}

}  // namespace

ZakEvaluation zak_eval(const HermiteWindow& w, const ZakParameter& lambda, const Rational& x,
                       const Rational& gamma, double tol, int forced_terms) {
    if (!(tol > 0.0)) throw std::invalid_argument("zak: tolerance must be positive");
    double lam = lambda.to_double();
    ReducedPoint rp = reduce_point(x, gamma);

    NativePolicy pol{w, lam, rp.x0.to_double(), rp.gamma0};
    double sqrt_lam = std::sqrt(lam);
    ShellControl sc{tol / sqrt_lam, start_radius(w.max_order(), lam), forced_terms};
    sum_shells(pol, sc);

    check_floor(tol, 4.0 * xprec::epsilon(Precision::bits53) * sqrt_lam * sc.sum_abs);
    ZakEvaluation out;
    out.value = sqrt_lam * rp.phase() * pol.sum;
    out.truncation_bound = sqrt_lam * sc.bound_series;
    out.terms_used = sc.terms;
    return out;
}

ZakEvaluation zak_eval(const HermiteWindow& w, const ZakParameter& lambda, double x, double gamma,
                       double tol, int forced_terms) {
    return zak_eval(w, lambda, rational_from_double(x), rational_from_double(gamma), tol, forced_terms);
}

ZakEvaluationX zak_eval_x(const HermiteWindow& w, const QuarticSurd& lambda, const Rational& x,
                          const Rational& gamma, const XReal& tol, Precision prec, int forced_terms) {
    if (!(tol.to_double() > 0.0)) throw std::invalid_argument("zak: tolerance must be positive");
    ReducedPoint rp = reduce_point(x, gamma);

    ExactPolicy pol{w,
                    prec,
                    xprec::quarter_root(lambda.w, prec),
                    checked(static_cast<__int128>(lambda.u) * rp.x0.num, "zak argument"),
                    checked(static_cast<__int128>(lambda.u) * rp.x0.den, "zak argument"),
                    checked(static_cast<__int128>(lambda.v) * rp.x0.den, "zak argument"),
                    rp.gamma0,
                    XComplex::zero(prec)};
    double lam = lambda.to_double();
    double sqrt_lam_d = std::sqrt(lam);
    ShellControl sc{tol.to_double() / sqrt_lam_d, start_radius(w.max_order(), lam), forced_terms};
    sum_shells(pol, sc);

    check_floor(tol.to_double(), 4.0 * xprec::epsilon(prec) * sqrt_lam_d * std::max(sc.sum_abs, 1e-30));

    XReal sqrt_lam = xprec::sqrt(lambda.value(prec));
    ZakEvaluationX out{(rp.phase_x(prec) * pol.sum) * sqrt_lam,
                       XReal::from_double(sqrt_lam_d * sc.bound_series, prec), sc.terms};
    return out;
}

namespace {

std::complex<double> dual_outer_phase(const Rational& x, const Rational& gamma) {
    // e^{2 pi i x gamma}; exact when the product denominator stays small
    __int128 num = static_cast<__int128>(x.num) * gamma.num;
    __int128 den = static_cast<__int128>(x.den) * gamma.den;
    if (den <= (1LL << 40) && num < (static_cast<__int128>(1) << 100)) {
        long long n = static_cast<long long>(num % den);
        double theta = 2.0 * M_PI * static_cast<double>(n) / static_cast<double>(den);
        return {std::cos(theta), std::sin(theta)};
    }
    double t = x.to_double() * gamma.to_double();
    t -= std::floor(t);
    return {std::cos(2.0 * M_PI * t), std::sin(2.0 * M_PI * t)};
}

std::complex<double> quarter_pow(int j) {
    switch (((j % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

ZakEvaluation zak_eval_dual(const HermiteWindow& w, const ZakParameter& lambda, const Rational& x,
                            const Rational& gamma, double tol) {
    auto j = w.eigenclass();
    if (!j) throw std::invalid_argument("zak: dual evaluation needs a window with a Fourier eigenclass");
    ZakEvaluation inner = zak_eval(w, lambda.reciprocal(), gamma, rational_neg(x), tol);
    inner.value *= dual_outer_phase(x, gamma) * quarter_pow(-*j);
    return inner;
}

ZakEvaluation zak_eval_dual(const HermiteWindow& w, const ZakParameter& lambda, double x, double gamma,
                            double tol) {
    return zak_eval_dual(w, lambda, rational_from_double(x), rational_from_double(gamma), tol);
}

ZakEvaluationX zak_eval_dual_x(const HermiteWindow& w, const QuarticSurd& lambda, const Rational& x,
                               const Rational& gamma, const XReal& tol, Precision prec) {
    auto j = w.eigenclass();
    if (!j) throw std::invalid_argument("zak: dual evaluation needs a window with a Fourier eigenclass");
    ZakEvaluationX inner = zak_eval_x(w, lambda.reciprocal(), gamma, rational_neg(x), tol, prec);
    Rational prod = rational_mul(x, gamma);
    long long m = prod.num % prod.den;
    XComplex outer = xprec::unit_phase_fraction(m, prod.den, prec).rotate_quarter(-*j);
    inner.value = inner.value * outer;
    return inner;
}

double zak_symmetry_residual(const HermiteWindow& w, const ZakParameter& lambda,
                             const std::vector<std::pair<Rational, Rational>>& samples, double tol) {
    auto parity = w.parity();
    if (!parity) throw std::invalid_argument("zak: symmetry residual needs a window of definite parity");
    double worst = 0.0;
    for (const auto& [x, g] : samples) {
        ZakEvaluation a = zak_eval(w, lambda, x, g, tol);
        ZakEvaluation b = zak_eval(w, lambda, rational_neg(x), rational_neg(g), tol);
        double r = std::abs(a.value - static_cast<double>(*parity) * b.value);
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace zakframe::zak
