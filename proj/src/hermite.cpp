#include "zakframe/hermite.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace zakframe::hermite {

using xprec::Precision;
using xprec::XReal;

namespace {

void check_order(int n) {
    if (n < 0 || n > kMaxOrder)
        throw std::domain_error("hermite: order " + std::to_string(n) + " outside supported range [0, " +
                                std::to_string(kMaxOrder) + "]");
}

constexpr double kQuarterRoot2 = 1.1892071150027210667174999705605;

struct DConsts {
    double two_sqrt_pi_over[kMaxOrder + 1];  // 2 sqrt(pi/(n+1))
    double sqrt_ratio[kMaxOrder + 1];        // sqrt(n/(n+1))
};

const DConsts& dconsts() {
    static const DConsts c = [] {
        DConsts d;
        for (int n = 0; n <= kMaxOrder; ++n) {
            d.two_sqrt_pi_over[n] = 2.0 * std::sqrt(M_PI / (n + 1));
            d.sqrt_ratio[n] = std::sqrt(static_cast<double>(n) / (n + 1));
        }
        return d;
    }();
    return c;
}

// cached per-precision recurrence constants
struct XConsts {
    XReal fourth_root_two;
    XReal pi;
    std::vector<XReal> two_sqrt_pi_over;  // 2 sqrt(pi/(n+1))
    std::vector<XReal> sqrt_ratio;        // sqrt(n/(n+1))
};

const XConsts& xconsts(Precision p) {
    static auto build = [](Precision pp) {
        XConsts c;
        c.fourth_root_two = xprec::quarter_root(2, pp);
        c.pi = xprec::pi(pp);
        for (int n = 0; n <= kMaxOrder; ++n) {
            c.two_sqrt_pi_over.push_back(xprec::sqrt(c.pi / XReal::from_int(n + 1, pp)) * 2.0);
            c.sqrt_ratio.push_back(xprec::sqrt(XReal::from_ratio(n, n + 1, pp)));
        }
        return c;
    };
    static const XConsts c53 = build(Precision::bits53);
    static const XConsts c106 = build(Precision::bits106);
    static const XConsts c212 = build(Precision::bits212);
    switch (p) {
        case Precision::bits53: return c53;
        case Precision::bits106: return c106;
        default: return c212;
    }
}

}  // namespace

HermiteWindow::HermiteWindow(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("hermite: window needs at least one term");
    int prev = -1;
    for (const Term& t : terms_) {
        check_order(t.order);
        if (t.order <= prev) throw std::invalid_argument("hermite: window orders must be strictly increasing");
        if (t.coeff == 0.0 || !std::isfinite(t.coeff))
            throw std::invalid_argument("hermite: window coefficients must be nonzero and finite");
        prev = t.order;
    }
    int j = terms_.front().order % 4;
    bool same = true;
    for (const Term& t : terms_)
        if (t.order % 4 != j) same = false;
    if (same) eigenclass_ = j;
}

std::optional<int> HermiteWindow::parity() const {
    int j = terms_.front().order % 2;
    for (const Term& t : terms_)
        if (t.order % 2 != j) return std::nullopt;
    return j == 0 ? 1 : -1;
}

HermiteWindow HermiteWindow::parse(std::string_view spec) {
    std::vector<Term> terms;
    size_t pos = 0;
    auto fail = [&] { throw std::invalid_argument("hermite: bad window spec '" + std::string(spec) + "'"); };
    if (spec.empty()) fail();
    while (pos < spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string_view item = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        size_t colon = item.find(':');
        std::string_view order_part = item.substr(0, colon);
        int order = 0;
        auto [p1, ec1] = std::from_chars(order_part.data(), order_part.data() + order_part.size(), order);
        if (ec1 != std::errc() || p1 != order_part.data() + order_part.size()) fail();
        double coeff = 1.0;
        if (colon != std::string_view::npos) {
            std::string cstr(item.substr(colon + 1));
            size_t used = 0;
            try {
                coeff = std::stod(cstr, &used);
            } catch (const std::exception&) {
                fail();
            }
            if (used != cstr.size()) fail();
        }
        terms.push_back({order, coeff});
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return HermiteWindow(std::move(terms));
}

std::string HermiteWindow::spec_string() const {
    if (terms_.size() == 1 && terms_[0].coeff == 1.0) return std::to_string(terms_[0].order);
    std::string out;
    char buf[48];
    for (const Term& t : terms_) {
        if (!out.empty()) out.push_back(',');
        std::snprintf(buf, sizeof buf, "%d:%.17g", t.order, t.coeff);
        out += buf;
    }
    return out;
}

// The recurrence family: hr_0 = 2^{1/4} e^{-pi x^2},
// hr_{n+1} = 2 sqrt(pi/(n+1)) x hr_n - sqrt(n/(n+1)) hr_{n-1};
// h_n = (-1)^n hr_n.

double hermite_eval(int n, double x) {
    check_order(n);
    const DConsts& c = dconsts();
    double g = kQuarterRoot2 * std::exp(-M_PI * x * x);
    double prev = 0.0, cur = g;
    for (int m = 0; m < n; ++m) {
        double next = c.two_sqrt_pi_over[m] * x * cur - c.sqrt_ratio[m] * prev;
        prev = cur;
        cur = next;
    }
    return (n % 2 == 0) ? cur : -cur;
}

XReal hermite_eval(int n, const XReal& x) {
    check_order(n);
    Precision p = x.precision();
    const XConsts& c = xconsts(p);
    XReal g = c.fourth_root_two * xprec::exp(-(c.pi * x * x));
    XReal prev = XReal::zero(p), cur = g;
    for (int m = 0; m < n; ++m) {
        XReal next = c.two_sqrt_pi_over[m] * x * cur - c.sqrt_ratio[m] * prev;
        prev = cur;
        cur = next;
    }
    return (n % 2 == 0) ? cur : -cur;
}

double window_eval(const HermiteWindow& w, double x) {
    int nmax = w.max_order();
    const DConsts& c = dconsts();
    double g = kQuarterRoot2 * std::exp(-M_PI * x * x);
    double prev = 0.0, cur = g;
    double acc = 0.0;
    size_t idx = 0;
    for (int m = 0; m <= nmax; ++m) {
        if (idx < w.terms().size() && w.terms()[idx].order == m) {
            acc += w.terms()[idx].coeff * (m % 2 == 0 ? cur : -cur);
            ++idx;
        }
        if (m == nmax) break;
        double next = c.two_sqrt_pi_over[m] * x * cur - c.sqrt_ratio[m] * prev;
        prev = cur;
        cur = next;
    }
    return acc;
}

XReal window_eval(const HermiteWindow& w, const XReal& x) {
    Precision p = x.precision();
    const XConsts& c = xconsts(p);
    int nmax = w.max_order();
    XReal g = c.fourth_root_two * xprec::exp(-(c.pi * x * x));
    XReal prev = XReal::zero(p), cur = g;
    XReal acc = XReal::zero(p);
    size_t idx = 0;
    for (int m = 0; m <= nmax; ++m) {
        if (idx < w.terms().size() && w.terms()[idx].order == m) {
            XReal v = (m % 2 == 0) ? cur : -cur;
            acc += v * w.terms()[idx].coeff;
            ++idx;
        }
        if (m == nmax) break;
        XReal next = c.two_sqrt_pi_over[m] * x * cur - c.sqrt_ratio[m] * prev;
        prev = cur;
        cur = next;
    }
    return acc;
}

std::optional<int> classify_eigenspace(const HermiteWindow& w) { return w.eigenclass(); }

RodriguesPolynomial RodriguesPolynomial::compute(int n) {
    check_order(n);
    std::vector<long long> s{1};  // S_0 = 1
    for (int m = 0; m < n; ++m) {
        std::vector<long long> next(s.size() + 1, 0);
        // S' contributes (k+1) c_{k+1} to degree k; -2t S contributes -2 c_{k-1}
        for (size_t k = 0; k + 1 < s.size() + 1; ++k) {
            if (k + 1 < s.size()) next[k] += static_cast<long long>(k + 1) * s[k + 1];
        }
        for (size_t k = 1; k < next.size(); ++k) {
            long long prod;
            if (__builtin_mul_overflow(s[k - 1], -2LL, &prod) ||
                __builtin_add_overflow(next[k], prod, &next[k]))
                throw std::overflow_error("hermite: Rodrigues coefficients exceed 64-bit range at order " +
                                          std::to_string(m + 1));
            (void)prod;
        }
        s = std::move(next);
    }
    return RodriguesPolynomial(n, std::move(s));
}

double RodriguesPolynomial::eval_hermite(double x) const {
    double t = std::sqrt(2.0 * M_PI) * x;
    double poly = 0.0;
    for (size_t k = coeffs_.size(); k-- > 0;) poly = poly * t + static_cast<double>(coeffs_[k]);
    double norm = kQuarterRoot2 / std::sqrt(std::ldexp(1.0, order_) * std::tgamma(order_ + 1.0));
    return norm * poly * std::exp(-M_PI * x * x);
}

XReal RodriguesPolynomial::eval_hermite(const XReal& x) const {
    Precision p = x.precision();
    const XConsts& c = xconsts(p);
    XReal t = xprec::sqrt(c.pi * 2.0) * x;
    XReal poly = XReal::zero(p);
    for (size_t k = coeffs_.size(); k-- > 0;) poly = poly * t + XReal::from_int(coeffs_[k], p);
    XReal fact = XReal::one(p);
    for (int i = 2; i <= order_; ++i) fact *= XReal::from_int(i, p);
    XReal norm = c.fourth_root_two / xprec::sqrt(fact.ldexp(order_));
    return norm * poly * xprec::exp(-(c.pi * x * x));
}

}  // namespace zakframe::hermite
