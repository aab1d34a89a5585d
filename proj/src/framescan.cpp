#include "zakframe/framescan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace zakframe::framescan {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ZAKFRAME_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    int t = std::min<size_t>(resolve_threads(threads), n == 0 ? 1 : n);
    if (t <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += t) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

FrameBoundsEstimate estimate_bounds(const HermiteWindow& w, double a, double b,
                                    const RationalDensity& density, const GridSpec& grid, double tol,
                                    int threads) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("framescan: a and b must be positive");
    if (std::fabs(a * b - density.value()) > 1e-12)
        throw std::invalid_argument("framescan: a*b does not match the rational density p/q");
    if (grid.nx < 2 || grid.ngamma < 2) throw std::invalid_argument("framescan: grid needs at least 2x2 points");

    std::vector<std::pair<Rational, Rational>> points;
    points.reserve(static_cast<size_t>(grid.nx) * grid.ngamma + grid.probe_points.size());
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ngamma; ++j)
            points.push_back({zak::make_rational(i, grid.nx), zak::make_rational(j, grid.ngamma)});
    for (const auto& pr : grid.probe_points) points.push_back(pr);

    struct PointResult {
        double lo, hi, trunc;
    };
    std::vector<PointResult> results(points.size());
    parallel_for(points.size(), threads, [&](size_t i) {
        zz::ZZMatrixSample s = zz::zz_matrix(w, b, density, points[i].first, points[i].second, tol);
        zz::fill_singular_extremes(s);
        results[i] = {s.sigma_min, s.sigma_max, s.truncation_bound};
    });

    FrameBoundsEstimate out;
    out.a = a;
    out.b = b;
    out.p = density.p;
    out.q = density.q;
    out.sqrtA = results[0].lo;
    out.sqrtB = results[0].hi;
    out.argmin_x = points[0].first;
    out.argmin_gamma = points[0].second;
    out.max_truncation = results[0].trunc;
    for (size_t i = 1; i < results.size(); ++i) {
        if (results[i].lo < out.sqrtA) {
            out.sqrtA = results[i].lo;
            out.argmin_x = points[i].first;
            out.argmin_gamma = points[i].second;
        }
        out.sqrtB = std::max(out.sqrtB, results[i].hi);
        out.max_truncation = std::max(out.max_truncation, results[i].trunc);
    }
    return out;
}

std::vector<FrameBoundsEstimate> scan_hyperbola(const HermiteWindow& w, const RationalDensity& density,
                                                double b_min, double b_max, int n_samples,
                                                const GridSpec& grid, double tol,
                                                const std::vector<double>& extra_b, int threads) {
    if (!(0.0 < b_min && b_min < b_max)) throw std::invalid_argument("framescan: need 0 < b_min < b_max");
    if (n_samples < 2) throw std::invalid_argument("framescan: need at least 2 samples");

    std::vector<double> bs;
    bs.reserve(n_samples + extra_b.size());
    double l0 = std::log(b_min), l1 = std::log(b_max);
    for (int i = 0; i < n_samples; ++i)
        bs.push_back(std::exp(l0 + (l1 - l0) * static_cast<double>(i) / (n_samples - 1)));
    for (double b : extra_b) {
        if (!(b > 0.0)) throw std::invalid_argument("framescan: probe b must be positive");
        bs.push_back(b);
    }
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());

    std::vector<FrameBoundsEstimate> out(bs.size());
    // parallelism lives inside each estimate; rows stay ordered by b
    for (size_t i = 0; i < bs.size(); ++i)
        out[i] = estimate_bounds(w, density.value() / bs[i], bs[i], density, grid, tol, threads);
    return out;
}

namespace {

Rational R(long long n, long long d) { return zak::make_rational(n, d); }

}  // namespace

std::vector<std::pair<Rational, Rational>> default_probes(std::optional<int> eigenclass) {
    if (!eigenclass) return {};
    switch (*eigenclass) {
        case 0:
            return {{R(1, 2), R(1, 2)}, {R(0, 1), R(1, 2)}, {R(1, 4), R(0, 1)}, {R(3, 4), R(0, 1)}};
        case 1:
            return {{R(0, 1), R(0, 1)}, {R(1, 2), R(0, 1)}, {R(0, 1), R(1, 2)},
                    {R(1, 3), R(1, 2)}, {R(2, 3), R(1, 2)}, {R(1, 6), R(0, 1)}, {R(5, 6), R(0, 1)}};
        case 2:
            return {{R(1, 4), R(1, 2)}, {R(1, 2), R(1, 2)}, {R(3, 4), R(1, 2)},
                    {R(1, 6), R(1, 2)}, {R(5, 6), R(1, 2)}};
        default:
            return {{R(0, 1), R(0, 1)}, {R(1, 2), R(0, 1)}, {R(0, 1), R(1, 2)}, {R(1, 4), R(0, 1)},
                    {R(3, 4), R(0, 1)}, {R(1, 3), R(0, 1)}, {R(2, 3), R(0, 1)}};
    }
}

std::vector<std::pair<Rational, Rational>> scan_probes(std::optional<int> eigenclass, int q) {
    // closed under the pairing map (x, gamma) -> sample at (gamma/q, -qx), so
    // estimates at (a,b) and (b,a) range over identical value sets
    if (eigenclass && q == 2) {
        if (*eigenclass == 2)
            return {{R(1, 4), R(1, 2)}, {R(3, 4), R(1, 2)}, {R(1, 2), R(1, 2)},
                    {R(1, 4), R(0, 1)}, {R(3, 4), R(0, 1)}};
        if (*eigenclass == 0)
            return {{R(0, 1), R(1, 2)}, {R(1, 2), R(1, 2)}, {R(1, 4), R(0, 1)}, {R(3, 4), R(0, 1)}};
    }
    if (eigenclass && q == 3 && (*eigenclass == 1 || *eigenclass == 3)) {
        return {{R(0, 1), R(0, 1)},  {R(0, 1), R(1, 2)}, {R(1, 3), R(1, 2)}, {R(2, 3), R(1, 2)},
                {R(1, 6), R(0, 1)}, {R(1, 2), R(0, 1)}, {R(5, 6), R(0, 1)}};
    }
    return default_probes(eigenclass);
}

const std::vector<ObstructionPoint>& obstruction_points() {
    static const std::vector<ObstructionPoint> pts = [] {
        QuarticSurd inv_sqrt2 = QuarticSurd::make(1, 2, 4);   // 1/sqrt(2)
        QuarticSurd inv_sqrt3 = QuarticSurd::make(1, 3, 9);   // 1/sqrt(3)
        QuarticSurd half = QuarticSurd::make(1, 2, 1);        // 1/2
        QuarticSurd two_over_sqrt3 = QuarticSurd::make(2, 3, 9);
        std::vector<ObstructionPoint> v;
        v.push_back({0, inv_sqrt2, inv_sqrt2, 1, 2, {{2, R(3, 4), R(1, 2), 0}}, -1});
        v.push_back({1, inv_sqrt3, inv_sqrt3, 1, 3,
                     {{2, R(5, 6), R(1, 2), 0}, {3, R(2, 3), R(0, 1), 0}}, -1});
        v.push_back({2, half, half, 1, 4, {{3, R(3, 4), R(0, 1), 0}}, -1});
        v.push_back({3, two_over_sqrt3, inv_sqrt3, 2, 3, {{2, R(5, 6), R(1, 2), 0}}, -1});
        v.push_back({4, inv_sqrt3, two_over_sqrt3, 2, 3, {{2, R(5, 6), R(1, 2), 0}}, 3});
        return v;
    }();
    return pts;
}

CertificationReport certify_obstruction(const HermiteWindow& w, const ObstructionPoint& point,
                                        const XReal& tol, Precision prec) {
    auto cls = hermite::classify_eigenspace(w);
    if (!cls)
        throw std::invalid_argument("framescan: obstruction certification needs a window with an eigenclass");
    const ObstructionPoint::Witness* witness = nullptr;
    for (const auto& wit : point.witnesses)
        if (wit.eigenclass == *cls) witness = &wit;
    if (!witness)
        throw std::invalid_argument("framescan: obstruction point " + std::to_string(point.id) +
                                    " does not apply to eigenclass " + std::to_string(*cls));

    // id-4 points are certified through their a<->b partner (the frame bounds
    // of G(w,a,b) and G(w,b,a) coincide for eigenclass windows)
    const ObstructionPoint& eval_point =
        point.delegate_id >= 0 ? obstruction_points()[point.delegate_id] : point;

    zz::RationalDensity density(eval_point.p, eval_point.q);
    XReal entry_tol = tol * 0.25;
    zz::ZZEntriesX entries = zz::zz_matrix_x(w, eval_point.b, density, witness->x, witness->gamma,
                                             entry_tol, prec);

    XReal worst = XReal::zero(prec);
    for (int l = 0; l < eval_point.q; ++l) {
        XReal mag = entries.at(witness->vanishing_row, l).abs();
        if (worst < mag) worst = mag;
    }

    CertificationReport rep;
    rep.point_id = point.id;
    rep.eigenclass = *cls;
    rep.witness_x = witness->x;
    rep.witness_gamma = witness->gamma;
    rep.residual = worst.to_double();
    rep.residual_str = worst.to_string(30);
    rep.max_truncation = entries.max_truncation.to_double();
    rep.precision_bits = static_cast<int>(prec);
    rep.pass = worst <= tol;
    if (point.delegate_id >= 0)
        rep.note = "verified via point " + std::to_string(point.delegate_id) + " and a<->b symmetry";
    else if (eval_point.p > 1)
        rep.note = "row " + std::to_string(witness->vanishing_row) + " of the " + std::to_string(eval_point.p) +
                   "x" + std::to_string(eval_point.q) + " matrix vanishes";
    return rep;
}

}  // namespace zakframe::framescan
