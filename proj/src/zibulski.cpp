#include "zakframe/zibulski.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zakframe::zz {

RationalDensity::RationalDensity(int p_, int q_) : p(p_), q(q_) {
    if (p <= 0 || q <= 0) throw std::invalid_argument("zibulski: density parts must be positive");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("zibulski: density must be in lowest terms");
}

ZZMatrixSample zz_matrix(const HermiteWindow& w, const ZakParameter& b, const RationalDensity& density,
                         const Rational& x, const Rational& gamma, double tol) {
    ZZMatrixSample s;
    s.x = x;
    s.gamma = gamma;
    s.p = density.p;
    s.q = density.q;
    s.m.resize(static_cast<size_t>(density.p) * density.q);
    ZakParameter lambda = b.reciprocal();
    double scale = 1.0 / std::sqrt(static_cast<double>(density.p));
    for (int k = 0; k < density.p; ++k) {
        Rational gk = zak::rational_add(gamma, zak::make_rational(k, density.p));
        for (int l = 0; l < density.q; ++l) {
            Rational xl = zak::rational_sub(x, zak::make_rational(static_cast<long long>(l) * density.p,
                                                                  density.q));
            zak::ZakEvaluation e = zak::zak_eval(w, lambda, xl, gk, tol);
            s.at(k, l) = scale * e.value;
            s.truncation_bound = std::max(s.truncation_bound, scale * e.truncation_bound);
        }
    }
    return s;
}

std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a, int n) {
    auto at = [&](int i, int j) -> std::complex<double>& { return a[static_cast<size_t>(i) * n + j]; };
    if (n == 1) return {a[0].real()};

    double fro2 = 0.0;
    for (const auto& v : a) fro2 += std::norm(v);
    double target = 1e-32 * std::max(fro2, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off2 += 2.0 * std::norm(at(i, j));
        if (off2 <= target) break;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                std::complex<double> g = at(i, j);
                double ag = std::abs(g);
                if (ag == 0.0) continue;
                std::complex<double> phase = g / ag;  // g = |g| e^{i phi}
                double alpha = at(i, i).real(), beta = at(j, j).real();
                double tau = (beta - alpha) / (2.0 * ag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sr = t * c;
                // U columns i,j: [c, s; -s e^{-i phi}, c e^{-i phi}]
                std::complex<double> s_lo = sr * std::conj(phase);
                std::complex<double> c_lo = c * std::conj(phase);
                // B = A U on columns i, j
                for (int k = 0; k < n; ++k) {
                    std::complex<double> aki = at(k, i), akj = at(k, j);
                    at(k, i) = c * aki - s_lo * akj;
                    at(k, j) = sr * aki + c_lo * akj;
                }
                // A' = U* B on rows i, j
                for (int k = 0; k < n; ++k) {
                    std::complex<double> aik = at(i, k), ajk = at(j, k);
                    at(i, k) = c * aik - sr * phase * ajk;
                    at(j, k) = sr * aik + c * phase * ajk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::pair<double, double> singular_extremes(const std::vector<std::complex<double>>& m, int p, int q) {
    if (p <= 0 || q <= 0 || m.size() != static_cast<size_t>(p) * q)
        throw std::invalid_argument("zibulski: bad matrix dimensions");
    for (const auto& v : m)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("zibulski: non-finite matrix entry");

    int r = std::min(p, q);
    // Gram of the smaller side
    std::vector<std::complex<double>> gram(static_cast<size_t>(r) * r);
    if (p <= q) {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                std::complex<double> s{0.0, 0.0};
                for (int l = 0; l < q; ++l)
                    s += m[static_cast<size_t>(i) * q + l] * std::conj(m[static_cast<size_t>(j) * q + l]);
                gram[static_cast<size_t>(i) * p + j] = s;
            }
    } else {
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                std::complex<double> s{0.0, 0.0};
                for (int k = 0; k < p; ++k)
                    s += std::conj(m[static_cast<size_t>(k) * q + i]) * m[static_cast<size_t>(k) * q + j];
                gram[static_cast<size_t>(i) * q + j] = s;
            }
    }
    std::vector<double> ev = hermitian_eigenvalues(std::move(gram), r);
    double lo = std::sqrt(std::max(ev.front(), 0.0));
    double hi = std::sqrt(std::max(ev.back(), 0.0));
    // fewer than p columns cannot frame C^p
    if (p > q) lo = 0.0;
    return {lo, hi};
}

void fill_singular_extremes(ZZMatrixSample& sample) {
    auto [lo, hi] = singular_extremes(sample.m, sample.p, sample.q);
    sample.sigma_min = lo;
    sample.sigma_max = hi;
}

double integer_oversampled_bound(const HermiteWindow& w, const ZakParameter& b, int q, const Rational& x,
                                 const Rational& gamma, double tol) {
    if (q <= 0) throw std::invalid_argument("zibulski: q must be positive");
    ZakParameter lambda = b.reciprocal();
    double acc = 0.0;
    for (int l = 0; l < q; ++l) {
        Rational xl = zak::rational_sub(x, zak::make_rational(l, q));
        zak::ZakEvaluation e = zak::zak_eval(w, lambda, xl, gamma, tol);
        acc += std::norm(e.value);
    }
    return std::sqrt(acc);
}

ZZEntriesX zz_matrix_x(const HermiteWindow& w, const QuarticSurd& b, const RationalDensity& density,
                       const Rational& x, const Rational& gamma, const XReal& tol, Precision prec) {
    ZZEntriesX out;
    out.p = density.p;
    out.q = density.q;
    out.entries.resize(static_cast<size_t>(density.p) * density.q);
    out.max_truncation = XReal::zero(prec);
    QuarticSurd lambda = b.reciprocal();
    XReal scale = XReal::one(prec) / xprec::sqrt(XReal::from_int(density.p, prec));
    for (int k = 0; k < density.p; ++k) {
        Rational gk = zak::rational_add(gamma, zak::make_rational(k, density.p));
        for (int l = 0; l < density.q; ++l) {
            Rational xl = zak::rational_sub(x, zak::make_rational(static_cast<long long>(l) * density.p,
                                                                  density.q));
            zak::ZakEvaluationX e = zak::zak_eval_x(w, lambda, xl, gk, tol, prec);
            out.entries[static_cast<size_t>(k) * density.q + l] = e.value * scale;
            if (out.max_truncation < e.truncation_bound) out.max_truncation = e.truncation_bound;
        }
    }
    return out;
}

}  // namespace zakframe::zz
