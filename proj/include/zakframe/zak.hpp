#pragma once

#include <complex>
#include <variant>

#include "zakframe/hermite.hpp"
#include "zakframe/xprec.hpp"

namespace zakframe::zak {

using xprec::Precision;
using xprec::XComplex;
using xprec::XReal;

/// Exact rational coordinate, reduced, den > 0.
struct Rational {
    long long num = 0;
    long long den = 1;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);
/// Snap a double to the dyadic grid 2^-50 (exact thereafter).
Rational rational_from_double(double x);
Rational rational_add(const Rational& a, const Rational& b);
Rational rational_sub(const Rational& a, const Rational& b);
/// Product; throws std::overflow_error if the reduced result leaves int64.
Rational rational_mul(const Rational& a, const Rational& b);
Rational rational_neg(const Rational& a);
long long rational_floor(const Rational& a);

/// Exact scalar (u/v) w^{1/4}: the form of every Zak parameter used by the
/// identity catalog. Normalized so gcd(u,v)=1 and w is fourth-power-free;
/// closed under reciprocal.
struct QuarticSurd {
    long long u = 1, v = 1, w = 1;

    static QuarticSurd make(long long u, long long v, long long w);
    static QuarticSurd sqrt_of(long long s) { return make(1, 1, s * s); }  // sqrt(s) = (s^2)^{1/4}
    QuarticSurd reciprocal() const;
    double to_double() const;
    XReal value(Precision p) const;
    friend bool operator==(const QuarticSurd&, const QuarticSurd&) = default;
    std::string to_string() const;
};

/// Zak-transform dilation parameter: exact surd (mandatory for identity
/// verification) or a plain positive real (frame-bound scanning).
class ZakParameter {
public:
    ZakParameter(QuarticSurd s) : v_(s) {}  // NOLINT: implicit by design
    ZakParameter(double d) : v_(d) {}       // NOLINT
    bool exact() const { return std::holds_alternative<QuarticSurd>(v_); }
    const QuarticSurd& surd() const { return std::get<QuarticSurd>(v_); }
    double to_double() const;
    ZakParameter reciprocal() const;

private:
    std::variant<QuarticSurd, double> v_;
};

struct ReducedPoint {
    Rational x0, gamma0;  // both in [0,1)
    long long x_floor;    // Z(x,gamma) = e^{2 pi i x_floor gamma0} Z(x0,gamma0)
    std::complex<double> phase() const;
    XComplex phase_x(Precision p) const;
};

/// Quasi-periodic reduction into the fundamental domain.
ReducedPoint reduce_point(const Rational& x, const Rational& gamma);

struct ZakEvaluation {
    std::complex<double> value;
    double truncation_bound = 0.0;
    int terms_used = 0;
};

struct ZakEvaluationX {
    XComplex value;
    XReal truncation_bound;
    int terms_used = 0;
};

/// Z_lambda w (x, gamma) by direct summation over a symmetric index window,
/// adaptively sized until the geometric tail bound drops below tol.
/// forced_terms > 0 pins the summation radius K (diagnostic/regression hook;
/// the reported bound is then only as good as the observed decay).
ZakEvaluation zak_eval(const hermite::HermiteWindow& w, const ZakParameter& lambda, const Rational& x,
                       const Rational& gamma, double tol, int forced_terms = -1);
ZakEvaluation zak_eval(const hermite::HermiteWindow& w, const ZakParameter& lambda, double x, double gamma,
                       double tol, int forced_terms = -1);

/// Extended-precision evaluation; lambda must be exact and coordinates
/// rational so every summand argument is formed from exact integers.
ZakEvaluationX zak_eval_x(const hermite::HermiteWindow& w, const QuarticSurd& lambda, const Rational& x,
                          const Rational& gamma, const XReal& tol, Precision prec, int forced_terms = -1);

/// The Poisson-dual route: e^{2 pi i x gamma} (-i)^j Z_{1/lambda} w (gamma, -x)
/// for a window of eigenclass j. An independent evaluation path; refuses
/// windows without an eigenclass.
ZakEvaluation zak_eval_dual(const hermite::HermiteWindow& w, const ZakParameter& lambda, const Rational& x,
                            const Rational& gamma, double tol);
ZakEvaluation zak_eval_dual(const hermite::HermiteWindow& w, const ZakParameter& lambda, double x,
                            double gamma, double tol);
ZakEvaluationX zak_eval_dual_x(const hermite::HermiteWindow& w, const QuarticSurd& lambda, const Rational& x,
                               const Rational& gamma, const XReal& tol, Precision prec);

/// max over samples of |Z(x,gamma) -+ Z(-x,-gamma)| (sign by window parity).
double zak_symmetry_residual(const hermite::HermiteWindow& w, const ZakParameter& lambda,
                             const std::vector<std::pair<Rational, Rational>>& samples, double tol);

}  // namespace zakframe::zak
