#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zakframe/xprec.hpp"

namespace zakframe::hermite {

/// Highest supported Hermite order.
constexpr int kMaxOrder = 64;

struct Term {
    int order;
    double coeff;
};

/// A finite linear combination of Hermite functions. Orders are strictly
/// increasing and coefficients nonzero; the Fourier eigenclass j (all orders
/// congruent j mod 4, eigenvalue (-i)^j) is classified on construction.
/// Immutable; safe for concurrent use.
class HermiteWindow {
public:
    explicit HermiteWindow(std::vector<Term> terms);
    static HermiteWindow single(int order) { return HermiteWindow({{order, 1.0}}); }

    /// Window spec syntax: "n" for one Hermite function, or
    /// "n0:c0,n1:c1,..." with decimal coefficients.
    static HermiteWindow parse(std::string_view spec);

    const std::vector<Term>& terms() const { return terms_; }
    std::optional<int> eigenclass() const { return eigenclass_; }
    int max_order() const { return terms_.back().order; }
    /// Even windows return +1, odd windows -1, mixed-parity none.
    std::optional<int> parity() const;
    std::string spec_string() const;

private:
    std::vector<Term> terms_;
    std::optional<int> eigenclass_;
};

/// h_n(x) with the sign convention of the Rodrigues-type definition
/// h_n = c_n^{-1/2} e^{pi x^2} (d/dx)^n e^{-2 pi x^2}, c_n = (2 pi)^n 2^(n-1/2) n!,
/// which equals (-1)^n times the positive-leading normalized family.
/// Evaluated by the stable normalized three-term recurrence.
double hermite_eval(int n, double x);
xprec::XReal hermite_eval(int n, const xprec::XReal& x);

double window_eval(const HermiteWindow& w, double x);
xprec::XReal window_eval(const HermiteWindow& w, const xprec::XReal& x);

std::optional<int> classify_eigenspace(const HermiteWindow& w);

/// Exact coefficients of the polynomial S_n with
///   (d/dx)^n e^{-2 pi x^2} = (2 pi)^{n/2} S_n(t) e^{-2 pi x^2},  t = sqrt(2 pi) x,
/// obtained from S_0 = 1, S_{n+1} = S_n' - 2 t S_n (the Rodrigues recursion
/// R_{n+1} = R_n' - 4 pi x R_n expressed in the basis where all coefficients
/// are integers). Ground-truth oracle for hermite_eval.
class RodriguesPolynomial {
public:
    static RodriguesPolynomial compute(int n);

    int order() const { return order_; }
    /// Coefficient of t^k in S_n.
    const std::vector<long long>& coefficients() const { return coeffs_; }

    /// h_n(x) through the exact polynomial: 2^{1/4}/sqrt(2^n n!) S_n(t) e^{-pi x^2}.
    double eval_hermite(double x) const;
    xprec::XReal eval_hermite(const xprec::XReal& x) const;

private:
    RodriguesPolynomial(int order, std::vector<long long> coeffs)
        : order_(order), coeffs_(std::move(coeffs)) {}
    int order_;
    std::vector<long long> coeffs_;
};

}  // namespace zakframe::hermite
