#include "zakframe/xprec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

namespace zakframe::xprec {

namespace {

// ---- error-free transformations -----------------------------------------

inline double two_sum(double a, double b, double& err) {
    double s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

// requires |a| >= |b| (or a == 0)
inline double quick_two_sum(double a, double b, double& err) {
    double s = a + b;
    err = b - (s - a);
    return s;
}

inline double two_prod(double a, double b, double& err) {
    double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

// ---- expansions (increasing magnitude, non-overlapping) ------------------

constexpr int kMaxExp = 48;

struct Expansion {
    double c[kMaxExp];
    int n = 0;
};

// Shewchuk's GROW-EXPANSION with zero elimination: e (non-overlapping,
// increasing) + b, exact.
inline void grow(Expansion& e, double b) {
    double q = b;
    int out = 0;
    for (int i = 0; i < e.n; ++i) {
        double err;
        q = two_sum(q, e.c[i], err);
        if (err != 0.0) e.c[out++] = err;
    }
    e.c[out++] = q;
    e.n = out;
}

// Distill an arbitrary list of doubles into an exact expansion.
inline void distill(const double* v, int n, Expansion& out) {
    out.n = 0;
    for (int i = 0; i < n; ++i)
        if (v[i] != 0.0) grow(out, v[i]);
}

// Round an exact expansion to at most k components, stored decreasing and
// canonical. Runs Shewchuk's COMPRESS first so the components are maximally
// packed; only then is the top-k prefix within one ulp of the value at the
// k-component format.
inline void round_expansion(const Expansion& e, double* out, int k) {
    for (int i = 0; i < k; ++i) out[i] = 0.0;
    double in[kMaxExp];
    int m = 0;
    for (int i = 0; i < e.n; ++i)
        if (e.c[i] != 0.0) in[m++] = e.c[i];  // increasing magnitude
    if (m == 0) return;

    // COMPRESS, downward pass: squeeze the value into the leading entries
    double g[kMaxExp];
    double q = in[m - 1];
    int bottom = m - 1;
    for (int i = m - 2; i >= 0; --i) {
        double err;
        double s = quick_two_sum(q, in[i], err);
        if (err != 0.0) {
            g[bottom--] = s;
            q = err;
        } else {
            q = s;
        }
    }
    g[bottom] = q;

    // upward pass: emit a nonoverlapping, nonadjacent expansion (increasing)
    double h[kMaxExp];
    int top = 0;
    q = g[bottom];
    for (int i = bottom + 1; i <= m - 1; ++i) {
        double err;
        double s = quick_two_sum(g[i], q, err);
        if (err != 0.0) h[top++] = err;
        q = s;
    }
    h[top++] = q;  // h[0..top) increasing, h[top-1] within 1 ulp of the sum

    double t[8];
    int nt = 0;
    for (int i = top - 1; i >= 0 && nt < k; --i) t[nt++] = h[i];
    if (top > k) {  // fold the sub-ulp tail once
        double tail = 0.0;
        for (int i = top - k - 1; i >= 0; --i) tail += h[i];
        t[k - 1] += tail;
    }
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = nt - 1; i > 0; --i) {
            double err;
            t[i - 1] = quick_two_sum(t[i - 1], t[i], err);
            t[i] = err;
        }
    }
    for (int i = 0; i < nt; ++i) out[i] = t[i];
}

inline void load(const XReal& x, Expansion& e) {
    e.n = 0;
    for (int i = component_count(x.precision()) - 1; i >= 0; --i)
        if (x.component(i) != 0.0) e.c[e.n++] = x.component(i);
}

void require_same(Precision a, Precision b) {
    if (a != b) throw std::invalid_argument("xprec: precision mismatch between operands");
}

// ---- constants ------------------------------------------------------------

// 6-double expansions (about 318 bits); the extra components keep the
// exp/sincos argument reductions exact well past the 212-bit tier.
constexpr int kConstLen = 6;
constexpr double kPi6[kConstLen] = {
    0x1.921fb54442d18p+1,  0x1.1a62633145c07p-53,  -0x1.f1976b7ed8fbcp-109,
    0x1.4cf98e804177dp-163, 0x1.31d89cd9128a5p-217, 0x1.0f31c6809bbdfp-275};
constexpr double kTwoPi6[kConstLen] = {
    0x1.921fb54442d18p+2,  0x1.1a62633145c07p-52,  -0x1.f1976b7ed8fbcp-108,
    0x1.4cf98e804177dp-162, 0x1.31d89cd9128a5p-216, 0x1.0f31c6809bbdfp-274};
constexpr double kLn2_6[kConstLen] = {
    0x1.62e42fefa39efp-1,   0x1.abc9e3b39803fp-56,  0x1.7b57a079a1934p-111,
    -0x1.ace93a4ebe5d1p-165, -0x1.23a2a82ea0c24p-219, 0x1.d881b7aeb2615p-274};

XReal const_from(const double* c, Precision p) {
    Expansion e;
    distill(c, kConstLen, e);
    double out[4];
    round_expansion(e, out, component_count(p));
    return XReal::from_components(out, component_count(p), p);
}

// 1/n! at working precision, cached per tier.
const std::vector<XReal>& inv_factorials(Precision p) {
    static const std::vector<XReal> t53 = [] {
        std::vector<XReal> v;
        XReal f = XReal::one(Precision::bits53);
        for (int n = 0; n <= 60; ++n) {
            if (n > 0) f = f / XReal::from_int(n, Precision::bits53);
            v.push_back(f);
        }
        return v;
    }();
    static const std::vector<XReal> t106 = [] {
        std::vector<XReal> v;
        XReal f = XReal::one(Precision::bits106);
        for (int n = 0; n <= 60; ++n) {
            if (n > 0) f = f / XReal::from_int(n, Precision::bits106);
            v.push_back(f);
        }
        return v;
    }();
    static const std::vector<XReal> t212 = [] {
        std::vector<XReal> v;
        XReal f = XReal::one(Precision::bits212);
        for (int n = 0; n <= 60; ++n) {
            if (n > 0) f = f / XReal::from_int(n, Precision::bits212);
            v.push_back(f);
        }
        return v;
    }();
    switch (p) {
        case Precision::bits53: return t53;
        case Precision::bits106: return t106;
        default: return t212;
    }
}

}  // namespace

double epsilon(Precision p) {
    switch (p) {
        case Precision::bits53: return 0x1p-52;
        case Precision::bits106: return 0x1p-105;
        default: return 0x1p-211;
    }
}

Precision precision_from_bits(int bits) {
    switch (bits) {
        case 53: return Precision::bits53;
        case 106: return Precision::bits106;
        case 212: return Precision::bits212;
        default: throw std::invalid_argument("xprec: supported precisions are 53, 106 and 212 bits");
    }
}

XReal XReal::from_components(const double* c, int n, Precision p) {
    XReal r;
    r.prec_ = p;
    for (int i = 0; i < 4; ++i) r.comp_[i] = i < n ? c[i] : 0.0;
    return r;
}

XReal XReal::zero(Precision p) {
    XReal r;
    r.prec_ = p;
    return r;
}

XReal XReal::one(Precision p) { return from_double(1.0, p); }

XReal XReal::from_double(double v, Precision p) {
    XReal r;
    r.prec_ = p;
    r.comp_[0] = v;
    return r;
}

XReal XReal::from_int(long long v, Precision p) {
    double hi = static_cast<double>(v);
    double lo = static_cast<double>(v - static_cast<long long>(hi));
    double c[2] = {hi, lo};
    Expansion e;
    distill(c, 2, e);
    double out[4];
    round_expansion(e, out, component_count(p));
    return from_components(out, component_count(p), p);
}

XReal XReal::from_ratio(long long num, long long den, Precision p) {
    return from_int(num, p) / from_int(den, p);
}

double XReal::to_double() const {
    double s = 0.0;
    for (int i = components() - 1; i >= 0; --i) s += comp_[i];
    return s;
}

XReal XReal::operator-() const {
    XReal r = *this;
    for (double& c : r.comp_) c = -c;
    return r;
}

XReal abs(const XReal& x) { return x.is_negative() ? -x : x; }

XReal operator+(const XReal& a, const XReal& b) {
    require_same(a.precision(), b.precision());
    int k = component_count(a.precision());
    if (k == 1) return XReal::from_double(a.component(0) + b.component(0), a.precision());
    Expansion ea, r;
    load(a, ea);
    for (int i = k - 1; i >= 0; --i)
        if (b.component(i) != 0.0) grow(ea, b.component(i));
    double out[4];
    round_expansion(ea, out, k);
    return XReal::from_components(out, k, a.precision());
}

XReal operator-(const XReal& a, const XReal& b) { return a + (-b); }

XReal operator+(const XReal& a, double b) {
    int k = component_count(a.precision());
    if (k == 1) return XReal::from_double(a.component(0) + b, a.precision());
    Expansion ea;
    load(a, ea);
    if (b != 0.0) grow(ea, b);
    double out[4];
    round_expansion(ea, out, k);
    return XReal::from_components(out, k, a.precision());
}

XReal operator*(const XReal& a, const XReal& b) {
    require_same(a.precision(), b.precision());
    int k = component_count(a.precision());
    if (k == 1) return XReal::from_double(a.component(0) * b.component(0), a.precision());
    // exact partial products down to significance level k, one level of
    // plain products below that (those sit at ~2^-53(k+1) relative)
    double terms[32];
    int n = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (a.component(i) == 0.0 || b.component(j) == 0.0) continue;
            if (i + j < k) {
                double err;
                terms[n] = two_prod(a.component(i), b.component(j), err);
                ++n;
                if (err != 0.0) terms[n++] = err;
            } else if (i + j == k) {
                terms[n++] = a.component(i) * b.component(j);
            }
        }
    }
    Expansion e;
    distill(terms, n, e);
    double out[4];
    round_expansion(e, out, k);
    return XReal::from_components(out, k, a.precision());
}

XReal operator*(const XReal& a, double b) {
    int k = component_count(a.precision());
    if (k == 1) return XReal::from_double(a.component(0) * b, a.precision());
    double terms[8];
    int n = 0;
    for (int i = 0; i < k; ++i) {
        if (a.component(i) == 0.0 || b == 0.0) continue;
        double err;
        terms[n] = two_prod(a.component(i), b, err);
        ++n;
        if (err != 0.0) terms[n++] = err;
    }
    Expansion e;
    distill(terms, n, e);
    double out[4];
    round_expansion(e, out, k);
    return XReal::from_components(out, k, a.precision());
}

XReal operator/(const XReal& a, const XReal& b) {
    require_same(a.precision(), b.precision());
    int k = component_count(a.precision());
    if (b.is_zero()) throw std::domain_error("xprec: division by zero");
    if (k == 1) return XReal::from_double(a.component(0) / b.component(0), a.precision());
    // long division: k+1 quotient digits, then one exact accumulation
    double q[5];
    XReal r = a;
    double b0 = b.component(0);
    for (int d = 0; d <= k; ++d) {
        q[d] = r.component(0) / b0;
        if (d < k) r = r - b * q[d];
    }
    Expansion e;
    distill(q, k + 1, e);
    double out[4];
    round_expansion(e, out, k);
    return XReal::from_components(out, k, a.precision());
}

XReal operator/(const XReal& a, double b) {
    int k = component_count(a.precision());
    if (k == 1) return XReal::from_double(a.component(0) / b, a.precision());
    return a / XReal::from_double(b, a.precision());
}

bool operator==(const XReal& a, const XReal& b) { return (a - b).is_zero(); }
bool operator<(const XReal& a, const XReal& b) { return (a - b).is_negative(); }
bool operator<=(const XReal& a, const XReal& b) {
    XReal d = a - b;
    return d.is_negative() || d.is_zero();
}

XReal XReal::ldexp(int k) const {
    XReal r = *this;
    for (double& c : r.comp_) c = std::ldexp(c, k);
    return r;
}

// ---- elementary functions -------------------------------------------------

XReal exp(const XReal& x) {
    Precision p = x.precision();
    double xd = x.to_double();
    if (xd > 709.7) throw std::overflow_error("xprec: exp overflow");
    if (xd < -745.0) return XReal::zero(p);
    if (component_count(p) == 1) return XReal::from_double(std::exp(xd), p);
    if (x.is_zero()) return XReal::one(p);

    // x = m ln2 + r with r in [0, ln2); the reduction is exact up to the
    // 6-double representation of ln2
    long long m = static_cast<long long>(std::floor(xd / 0x1.62e42fefa39efp-1));
    Expansion e;
    load(x, e);
    double md = static_cast<double>(m);
    for (int i = 0; i < kConstLen; ++i) {
        double err;
        double hi = two_prod(kLn2_6[i], -md, err);
        if (hi != 0.0) grow(e, hi);
        if (err != 0.0) grow(e, err);
    }
    int k = component_count(p);
    double rc[4];
    round_expansion(e, rc, k);
    XReal r = XReal::from_components(rc, k, p);

    const auto& invf = inv_factorials(p);
    int terms = p == Precision::bits106 ? 31 : 49;
    XReal acc = invf[terms];
    for (int n = terms - 1; n >= 0; --n) acc = acc * r + invf[n];

    if (m == 0) return acc;
    return acc.ldexp(static_cast<int>(m));
}

XReal sqrt(const XReal& x) {
    Precision p = x.precision();
    if (x.is_zero()) return XReal::zero(p);
    if (x.is_negative()) throw std::domain_error("xprec: sqrt of negative value");
    double s0 = std::sqrt(x.to_double());
    if (component_count(p) == 1) return XReal::from_double(s0, p);
    XReal s = XReal::from_double(s0, p);
    int iters = p == Precision::bits106 ? 2 : 3;
    for (int i = 0; i < iters; ++i) s = (s + x / s) * 0.5;
    return s;
}

XReal quarter_root(long long w, Precision p) {
    if (w <= 0) throw std::domain_error("xprec: quarter_root requires a positive integer");
    long long r = std::llround(std::pow(static_cast<double>(w), 0.25));
    for (long long cand = std::max(1LL, r - 1); cand <= r + 1; ++cand) {
        if (cand * cand * cand * cand == w) return XReal::from_int(cand, p);
    }
    return sqrt(sqrt(XReal::from_int(w, p)));
}

XReal pi(Precision p) { return const_from(kPi6, p); }
XReal two_pi(Precision p) { return const_from(kTwoPi6, p); }
XReal ln2(Precision p) { return const_from(kLn2_6, p); }

namespace {

// cos/sin of an angle |theta| <= pi/4 + eps by Taylor series in theta^2
void sincos_small(const XReal& theta, XReal& c, XReal& s) {
    Precision p = theta.precision();
    const auto& invf = inv_factorials(p);
    int half_terms = p == Precision::bits53 ? 9 : p == Precision::bits106 ? 15 : 26;
    XReal t2 = theta * theta;
    XReal cc = invf[2 * half_terms];
    XReal ss = invf[2 * half_terms + 1];
    for (int j = half_terms - 1; j >= 0; --j) {
        cc = invf[2 * j] - t2 * cc;
        ss = invf[2 * j + 1] - t2 * ss;
    }
    c = cc;
    s = ss * theta;
}

// rotate (c, s) by i^quarter
void apply_quarter(int quarter, XReal& c, XReal& s) {
    switch (((quarter % 4) + 4) % 4) {
        case 0: break;
        case 1: {
            XReal t = c;
            c = -s;
            s = t;
            break;
        }
        case 2:
            c = -c;
            s = -s;
            break;
        default: {
            XReal t = c;
            c = s;
            s = -t;
            break;
        }
    }
}

}  // namespace

void sincos_turn(const XReal& t, XReal& cos_out, XReal& sin_out) {
    Precision p = t.precision();
    double td = t.to_double();
    double rt = std::nearbyint(td);
    XReal v = t + (-rt);  // exact when |rt| is within double range
    int quad = static_cast<int>(std::llround(4.0 * v.to_double()));
    XReal w = v - XReal::from_ratio(quad, 4, p);  // dyadic, exact
    XReal theta = two_pi(p) * w;
    sincos_small(theta, cos_out, sin_out);
    apply_quarter(quad, cos_out, sin_out);
}

XComplex unit_phase(const XReal& t) {
    XComplex z;
    sincos_turn(t, z.re, z.im);
    return z;
}

XComplex unit_phase_fraction(long long num, long long den, Precision p) {
    if (den <= 0) throw std::invalid_argument("xprec: phase denominator must be positive");
    long long m = num % den;
    if (m < 0) m += den;
    if ((4 * m) % den == 0) {
        // exact quarter turn
        int quarter = static_cast<int>((4 * m) / den);
        XReal c = XReal::one(p), s = XReal::zero(p);
        apply_quarter(quarter, c, s);
        return {c, s};
    }
    long long quad = (8 * m + den) / (2 * den);  // round(4m/den)
    long long num2 = 4 * m - quad * den;         // |num2| <= den/2
    XReal theta = two_pi(p) * XReal::from_ratio(num2, 4 * den, p);
    XComplex z;
    sincos_small(theta, z.re, z.im);
    apply_quarter(static_cast<int>(quad), z.re, z.im);
    return z;
}

XComplex XComplex::rotate_quarter(int k) const {
    XComplex z = *this;
    switch (((k % 4) + 4) % 4) {
        case 0: return z;
        case 1: return {-z.im, z.re};
        case 2: return {-z.re, -z.im};
        default: return {z.im, -z.re};
    }
}

XReal XComplex::abs() const { return xprec::sqrt(re * re + im * im); }

// ---- decimal conversion ---------------------------------------------------

XReal XReal::parse(std::string_view text, Precision p) {
    size_t i = 0;
    auto fail = [&] { throw std::invalid_argument("xprec: cannot parse '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    XReal v = XReal::zero(p);
    XReal ten = XReal::from_int(10, p);
    int frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    int kept = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
            if (kept < 70) {
                v = v * ten + XReal::from_int(c - '0', p);
                ++kept;
                if (seen_dot) ++frac_digits;
            } else if (!seen_dot) {
                --frac_digits;  // dropped integer digit: one more factor of 10
            }
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            fail();
        }
    }
    if (!seen_digit) fail();
    long long ex = 0;
    if (i < text.size()) {
        ++i;  // skip 'e'
        bool exneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exneg = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) fail();
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') fail();
            ex = ex * 10 + (text[i] - '0');
            if (ex > 100000) fail();
        }
        if (exneg) ex = -ex;
    }
    ex -= frac_digits;
    if (ex != 0) {
        // v *= 10^ex by binary exponentiation
        long long a = ex < 0 ? -ex : ex;
        XReal pw = XReal::one(p), base = ten;
        while (a > 0) {
            if (a & 1) pw = pw * base;
            base = base * base;
            a >>= 1;
        }
        v = ex < 0 ? v / pw : v * pw;
    }
    return neg ? -v : v;
}

std::string XReal::to_string(int digits) const {
    Precision p = prec_;
    if (digits <= 0) {
        digits = p == Precision::bits53 ? 17 : p == Precision::bits106 ? 32 : 64;
    }
    if (is_zero()) return "0";
    XReal y = xprec::abs(*this);
    int e10 = static_cast<int>(std::floor(std::log10(std::fabs(comp_[0]))));
    XReal ten = XReal::from_int(10, p);
    auto pow10 = [&](int k) {  // 0 <= k <= 100, stays finite
        XReal pw = XReal::one(p), base = ten;
        int a = k;
        while (a > 0) {
            if (a & 1) pw = pw * base;
            base = base * base;
            a >>= 1;
        }
        return pw;
    };
    // chunked so no intermediate power overflows even for subnormal inputs
    auto scale_down = [&](int k) {
        while (k > 0) {
            int step = std::min(k, 100);
            y = y / pow10(step);
            k -= step;
        }
    };
    auto scale_up = [&](int k) {
        while (k > 0) {
            int step = std::min(k, 100);
            y = y * pow10(step);
            k -= step;
        }
    };
    if (e10 > 0)
        scale_down(e10);
    else if (e10 < 0)
        scale_up(-e10);
    while (y >= ten) {
        y = y / ten;
        ++e10;
    }
    while (y < XReal::one(p)) {
        y = y * ten;
        --e10;
    }
    std::string ds;
    for (int d = 0; d < digits + 1; ++d) {
        int dig = static_cast<int>(y.to_double());
        dig = std::clamp(dig, 0, 9);
        ds.push_back(static_cast<char>('0' + dig));
        y = (y - XReal::from_int(dig, p)) * ten;
    }
    // round the guard digit
    if (ds.back() >= '5') {
        int pos = static_cast<int>(ds.size()) - 2;
        while (pos >= 0) {
            if (ds[pos] != '9') {
                ++ds[pos];
                break;
            }
            ds[pos] = '0';
            --pos;
        }
        if (pos < 0) {
            ds.insert(ds.begin(), '1');
            ++e10;
        }
    }
    ds.resize(digits);
    std::string out;
    if (is_negative()) out.push_back('-');
    out.push_back(ds[0]);
    if (digits > 1) {
        out.push_back('.');
        out.append(ds.begin() + 1, ds.end());
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%+03d", e10);
    out += buf;
    return out;
}

}  // namespace zakframe::xprec
