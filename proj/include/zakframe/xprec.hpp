#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zakframe::xprec {

/// Working precision tiers: plain double, double-double, quad-double.
/// The enum value is the effective mantissa width in bits.
enum class Precision : int { bits53 = 53, bits106 = 106, bits212 = 212 };

constexpr int component_count(Precision p) {
    return p == Precision::bits53 ? 1 : p == Precision::bits106 ? 2 : 4;
}

/// Unit roundoff of one arithmetic operation at precision p (2^(1-bits)).
double epsilon(Precision p);

Precision precision_from_bits(int bits);

/// Thrown when a requested tolerance sits below the rounding floor of the
/// working precision.
class ToleranceFloorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Extended-precision real number: an unevaluated sum of 1, 2 or 4
/// non-overlapping doubles (a floating-point expansion). Immutable in
/// spirit: every operation returns a fresh value; safe to share across
/// threads.
class XReal {
public:
    XReal() : comp_{0, 0, 0, 0}, prec_(Precision::bits53) {}

    static XReal zero(Precision p);
    static XReal one(Precision p);
    static XReal from_double(double v, Precision p);
    static XReal from_int(long long v, Precision p);
    static XReal from_ratio(long long num, long long den, Precision p);
    /// Parse a decimal literal ("-3.5", "1e-30", "2.718281828...").
    static XReal parse(std::string_view text, Precision p);

    Precision precision() const { return prec_; }
    int components() const { return component_count(prec_); }
    double component(int i) const { return comp_[i]; }

    double to_double() const;
    /// Decimal string with `digits` significant digits (default: full
    /// working precision).
    std::string to_string(int digits = -1) const;

    bool is_zero() const { return comp_[0] == 0.0; }
    bool is_negative() const { return comp_[0] < 0.0; }
    int sign() const { return comp_[0] < 0 ? -1 : comp_[0] > 0 ? 1 : 0; }

    XReal operator-() const;
    friend XReal operator+(const XReal& a, const XReal& b);
    friend XReal operator-(const XReal& a, const XReal& b);
    friend XReal operator*(const XReal& a, const XReal& b);
    friend XReal operator/(const XReal& a, const XReal& b);
    friend XReal operator*(const XReal& a, double b);
    friend XReal operator*(double a, const XReal& b) { return b * a; }
    friend XReal operator+(const XReal& a, double b);
    friend XReal operator-(const XReal& a, double b) { return a + (-b); }
    friend XReal operator/(const XReal& a, double b);

    XReal& operator+=(const XReal& b) { return *this = *this + b; }
    XReal& operator-=(const XReal& b) { return *this = *this - b; }
    XReal& operator*=(const XReal& b) { return *this = *this * b; }
    XReal& operator/=(const XReal& b) { return *this = *this / b; }

    friend bool operator==(const XReal& a, const XReal& b);
    friend bool operator<(const XReal& a, const XReal& b);
    friend bool operator<=(const XReal& a, const XReal& b);
    friend bool operator>(const XReal& a, const XReal& b) { return b < a; }
    friend bool operator>=(const XReal& a, const XReal& b) { return b <= a; }

    /// Multiply by 2^k (exact).
    XReal ldexp(int k) const;

    /// Low-level constructor from already-normalized components.
    static XReal from_components(const double* c, int n, Precision p);

private:
    std::array<double, 4> comp_;  // decreasing magnitude, non-overlapping
    Precision prec_;
};

XReal abs(const XReal& x);

/// e^x. Throws std::overflow_error when the result exceeds double's
/// exponent range; flushes to zero below it (a valid tail term for the
/// series in this project).
XReal exp(const XReal& x);

/// Square root; std::domain_error for negative input.
XReal sqrt(const XReal& x);

/// w^(1/4) for a positive integer w; exact when w is a fourth power.
XReal quarter_root(long long w, Precision p);

XReal pi(Precision p);
XReal two_pi(Precision p);
XReal ln2(Precision p);

struct XComplex {
    XReal re, im;

    XComplex() = default;
    XComplex(XReal r, XReal i) : re(std::move(r)), im(std::move(i)) {}
    static XComplex zero(Precision p) { return {XReal::zero(p), XReal::zero(p)}; }

    friend XComplex operator+(const XComplex& a, const XComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend XComplex operator-(const XComplex& a, const XComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend XComplex operator*(const XComplex& a, const XComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend XComplex operator*(const XComplex& a, const XReal& s) {
        return {a.re * s, a.im * s};
    }
    XComplex conj() const { return {re, -im}; }
    /// Multiply by i^k, k taken mod 4 (exact rotation).
    XComplex rotate_quarter(int k) const;
    XReal abs() const;
};

/// cos(2*pi*t) and sin(2*pi*t).
void sincos_turn(const XReal& t, XReal& cos_out, XReal& sin_out);

/// e^{2 pi i t}.
XComplex unit_phase(const XReal& t);

/// e^{2 pi i num/den} with the angle reduced exactly in integer arithmetic.
/// Quarter-turn multiples come out exactly as {1, i, -1, -i}.
XComplex unit_phase_fraction(long long num, long long den, Precision p);

}  // namespace zakframe::xprec
