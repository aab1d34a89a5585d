#include "zakframe/xprec.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace zakframe::xprec;

namespace {

const Precision kTiers[] = {Precision::bits53, Precision::bits106, Precision::bits212};

// reference values computed independently (direct series / Newton with
// interval tail bounds), 70 digits
const char* kE70 = "2.718281828459045235360287471352662497757247093699959574966967627724077";
const char* kExpM2Pi = "0.001867442731707988814430212934827030393422805002475317199381538638317935";
const char* kRoot4o3 = "1.316074012952492460819218901796999055160068590205822176731922658595867";
const char* kPi70 = "3.141592653589793238462643383279502884197169399375105820974944592307816";
const char* kSqrtHalf = "0.707106781186547524400844362104849039284835937688474036588339868995366";

double ulps_apart(const XReal& a, const XReal& b) {
    XReal d = abs(a - b);
    if (d.is_zero()) return 0.0;
    double scale = std::fabs(b.to_double());
    if (scale == 0.0) scale = 1.0;
    return d.to_double() / (epsilon(a.precision()) * scale);
}

// Machin's formula in test-local arithmetic: an oracle for the frozen pi
// constant that does not share any code path with it.
XReal machin_pi(Precision p) {
    auto arctan_inv = [&](long long x, int terms) {
        XReal sum = XReal::zero(p);
        for (int n = terms; n >= 0; --n) {  // smallest terms first
            XReal pw = XReal::one(p);
            XReal base = XReal::from_int(x, p);
            long long a = 2LL * n + 1;
            XReal b = base;
            long long m = a;
            while (m > 0) {
                if (m & 1) pw = pw * b;
                b = b * b;
                m >>= 1;
            }
            XReal term = XReal::one(p) / (pw * XReal::from_int(2 * n + 1, p));
            sum = (n % 2 == 0) ? sum + term : sum - term;
        }
        return sum;
    };
    return arctan_inv(5, 50) * 16.0 - arctan_inv(239, 16) * 4.0;
}

}  // namespace

TEST_CASE("exact special cases") {
    for (Precision p : kTiers) {
        CAPTURE(static_cast<int>(p));
        CHECK(exp(XReal::zero(p)) == XReal::one(p));
        CHECK(quarter_root(1, p) == XReal::one(p));
        CHECK(quarter_root(16, p) == XReal::from_int(2, p));
        CHECK(quarter_root(81, p) == XReal::from_int(3, p));
        CHECK(XReal::from_int(3, p) * XReal::from_int(7, p) == XReal::from_int(21, p));
    }
}

TEST_CASE("frozen reference constants at 106 and 212 bits") {
    for (Precision p : {Precision::bits106, Precision::bits212}) {
        CAPTURE(static_cast<int>(p));
        XReal e = exp(XReal::one(p));
        CHECK(ulps_apart(e, XReal::parse(kE70, p)) <= 4.0);

        XReal em2pi = exp(-(two_pi(p)));
        CHECK(ulps_apart(em2pi, XReal::parse(kExpM2Pi, p)) <= 4.0);

        CHECK(ulps_apart(quarter_root(3, p), XReal::parse(kRoot4o3, p)) <= 4.0);
        CHECK(ulps_apart(pi(p), XReal::parse(kPi70, p)) <= 2.0);
    }
    // 30-digit agreement called out for the 106-bit tier
    XReal e106 = exp(XReal::one(Precision::bits106));
    XReal diff = abs(e106 - XReal::parse(kE70, Precision::bits106));
    CHECK(diff.to_double() <= 1e-30);
}

TEST_CASE("pi against the Machin series oracle") {
    XReal m = machin_pi(Precision::bits212);
    CHECK(abs(pi(Precision::bits212) - m).to_double() <= 1e-60);
    XReal m106 = machin_pi(Precision::bits106);
    CHECK(abs(pi(Precision::bits106) - m106).to_double() <= 1e-29);
}

TEST_CASE("exp(x) * exp(-x) = 1 within 8 ulp") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-600.0, 600.0);
    for (Precision p : kTiers) {
        CAPTURE(static_cast<int>(p));
        for (int i = 0; i < 100; ++i) {
            XReal x = XReal::from_double(dist(rng), p);
            XReal prod = exp(x) * exp(-x);
            CHECK(ulps_apart(prod, XReal::one(p)) <= 8.0);
        }
    }
}

TEST_CASE("quarter_root(w)^4 = w within 8 ulp") {
    for (Precision p : kTiers) {
        for (long long w : {2, 3, 4, 9, 16, 27}) {
            CAPTURE(w);
            XReal r = quarter_root(w, p);
            XReal r4 = r * r * r * r;
            CHECK(ulps_apart(r4, XReal::from_int(w, p)) <= 8.0);
        }
    }
}

TEST_CASE("field operations against exact rational arithmetic") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> num(-9999, 9999);
    std::uniform_int_distribution<long long> den(1, 999);
    std::uniform_int_distribution<int> shift(0, 12);
    for (Precision p : kTiers) {
        CAPTURE(static_cast<int>(p));
        for (int i = 0; i < 200; ++i) {
            // dyadic operands are exactly representable, so add/sub/mul must
            // be accurate to the op contract even under full cancellation
            long long a = num(rng), c = num(rng);
            long long b = 1LL << shift(rng), d = 1LL << shift(rng);
            if (c == 0) c = 1;
            XReal x = XReal::from_ratio(a, b, p);
            XReal y = XReal::from_ratio(c, d, p);
            CHECK(ulps_apart(x + y, XReal::from_ratio(a * d + c * b, b * d, p)) <= 2.0);
            CHECK(ulps_apart(x - y, XReal::from_ratio(a * d - c * b, b * d, p)) <= 2.0);
            CHECK(ulps_apart(x * y, XReal::from_ratio(a * c, b * d, p)) <= 2.0);
        }
        for (int i = 0; i < 200; ++i) {
            // general rationals: operands carry their own rounding, so allow
            // the propagated budget; avoid cancellation by matching signs
            long long a = std::abs(num(rng)) + 1, b = den(rng);
            long long c = std::abs(num(rng)) + 1, d = den(rng);
            XReal x = XReal::from_ratio(a, b, p);
            XReal y = XReal::from_ratio(c, d, p);
            CHECK(ulps_apart(x + y, XReal::from_ratio(a * d + c * b, b * d, p)) <= 8.0);
            CHECK(ulps_apart(x * y, XReal::from_ratio(a * c, b * d, p)) <= 8.0);
            // division checked by multiplying back (exact oracle-free check)
            XReal q = x / y;
            CHECK(ulps_apart(q * y, x) <= 8.0);
        }
    }
}

TEST_CASE("sqrt") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(1e-6, 1e6);
    for (Precision p : kTiers) {
        for (int i = 0; i < 100; ++i) {
            XReal x = XReal::from_double(dist(rng), p);
            XReal s = sqrt(x);
            CHECK(ulps_apart(s * s, x) <= 8.0);
        }
    }
    CHECK(ulps_apart(sqrt(XReal::from_ratio(1, 2, Precision::bits106)),
                     XReal::parse(kSqrtHalf, Precision::bits106)) <= 4.0);
    CHECK_THROWS_AS((void)sqrt(XReal::from_int(-1, Precision::bits106)), std::domain_error);
}

TEST_CASE("unit phases") {
    for (Precision p : kTiers) {
        // quarter turns are exact
        XComplex q1 = unit_phase_fraction(1, 4, p);
        CHECK(q1.re.is_zero());
        CHECK(q1.im == XReal::one(p));
        XComplex q2 = unit_phase_fraction(3, 2, p);
        CHECK(q2.re == -XReal::one(p));
        CHECK(q2.im.is_zero());
        // eighth turn
        XComplex e8 = unit_phase_fraction(1, 8, p);
        CHECK(ulps_apart(e8.re, XReal::parse(kSqrtHalf, p)) <= 6.0);
        CHECK(ulps_apart(e8.im, XReal::parse(kSqrtHalf, p)) <= 6.0);
        // |e^{i theta}| = 1
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<long long> num(-1000, 1000);
        std::uniform_int_distribution<long long> den(1, 997);
        for (int i = 0; i < 50; ++i) {
            XComplex z = unit_phase_fraction(num(rng), den(rng), p);
            CHECK(ulps_apart(z.re * z.re + z.im * z.im, XReal::one(p)) <= 8.0);
        }
    }
    // consistency between the fraction path and the turn path
    XComplex a = unit_phase_fraction(3, 7, Precision::bits212);
    XComplex b = unit_phase(XReal::from_ratio(3, 7, Precision::bits212));
    CHECK(abs(a.re - b.re).to_double() <= 1e-62);
    CHECK(abs(a.im - b.im).to_double() <= 1e-62);
}

TEST_CASE("range errors") {
    CHECK_THROWS_AS((void)exp(XReal::from_int(1000, Precision::bits106)), std::overflow_error);
    CHECK(exp(XReal::from_int(-800, Precision::bits212)).is_zero());
    CHECK_THROWS_AS((void)(XReal::one(Precision::bits53) + XReal::one(Precision::bits106)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)quarter_root(0, Precision::bits106), std::domain_error);
}

TEST_CASE("decimal parse / print round trips") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::uniform_int_distribution<int> scale(-30, 30);
    for (Precision p : kTiers) {
        for (int i = 0; i < 50; ++i) {
            XReal x = XReal::from_double(dist(rng), p) * exp(XReal::from_int(scale(rng), p));
            XReal y = XReal::parse(x.to_string(), p);
            CHECK(ulps_apart(y, x) <= 16.0);
        }
    }
    CHECK(XReal::parse("1e-30", Precision::bits212).to_string(3) == "1.00e-30");
    CHECK(XReal::parse("-2.5", Precision::bits106).to_double() == -2.5);
    CHECK(XReal::zero(Precision::bits106).to_string() == "0");
    CHECK_THROWS_AS((void)XReal::parse("abc", Precision::bits53), std::invalid_argument);
}

TEST_CASE("comparisons and helpers") {
    Precision p = Precision::bits106;
    XReal a = XReal::from_ratio(1, 3, p), b = XReal::from_ratio(2, 3, p);
    CHECK(a < b);
    CHECK(b > a);
    CHECK(a <= a);
    CHECK(a == a);
    CHECK(abs(-b) == b);
    CHECK((a.ldexp(2)) == XReal::from_ratio(4, 3, p));
    CHECK(XReal::from_double(1.5, p).to_double() == 1.5);
}
