#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zakframe/zibulski.hpp"

namespace zakframe::framescan {

using hermite::HermiteWindow;
using xprec::Precision;
using xprec::XReal;
using zak::QuarticSurd;
using zak::Rational;
using zz::RationalDensity;

/// Uniform sampling grid of the fundamental domain: points (i/nx, j/ngamma),
/// plus explicitly injected probe points (always evaluated in addition to the
/// grid; sharp frame-bound drops are too narrow for uniform grids to catch).
struct GridSpec {
    int nx = 51;
    int ngamma = 51;
    std::vector<std::pair<Rational, Rational>> probe_points;
};

struct FrameBoundsEstimate {
    double a = 0.0, b = 0.0;
    int p = 1, q = 1;
    double sqrtA = 0.0;  // min over grid+probes of sigma_min
    double sqrtB = 0.0;  // max over grid+probes of sigma_max
    Rational argmin_x, argmin_gamma;
    double max_truncation = 0.0;
};

/// Thread cap resolution: requested > 0 wins, else ZAKFRAME_THREADS, else
/// hardware concurrency (0 = auto everywhere).
int resolve_threads(int requested);

/// Deterministic parallel map: fn(i) for i in [0, n), results independent of
/// the thread count.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

/// Grid min/max of the Zibulski-Zeevi singular extremes for G(w, a, b).
/// Requires a*b = p/q within 1e-12.
FrameBoundsEstimate estimate_bounds(const HermiteWindow& w, double a, double b,
                                    const RationalDensity& density, const GridSpec& grid, double tol,
                                    int threads = 0);

/// Sweep along the hyperbola ab = p/q: n_samples log-spaced b values in
/// [b_min, b_max] plus any extra probe b values, sorted by b.
std::vector<FrameBoundsEstimate> scan_hyperbola(const HermiteWindow& w, const RationalDensity& density,
                                                double b_min, double b_max, int n_samples,
                                                const GridSpec& grid, double tol,
                                                const std::vector<double>& extra_b = {}, int threads = 0);

/// Probe points the scanner always appends for a window of the given
/// eigenclass: the known zero lattices restricted to [0,1)^2. For the scan
/// case (q given) the set is closed under the a<->b pairing map so paired
/// rows sample identical value sets.
std::vector<std::pair<Rational, Rational>> default_probes(std::optional<int> eigenclass);
std::vector<std::pair<Rational, Rational>> scan_probes(std::optional<int> eigenclass, int q);

/// One of the five lattice points where entire window classes fail the frame
/// property, with per-class witness points where the ZZ matrix loses rank.
struct ObstructionPoint {
    int id = 0;
    QuarticSurd a, b;
    int p = 1, q = 1;
    struct Witness {
        int eigenclass;
        Rational x, gamma;
        int vanishing_row;  // row index of the ZZ matrix that vanishes
    };
    std::vector<Witness> witnesses;
    int delegate_id = -1;  // certified through another point plus a<->b symmetry
};

const std::vector<ObstructionPoint>& obstruction_points();

struct CertificationReport {
    int point_id = 0;
    int eigenclass = -1;
    Rational witness_x, witness_gamma;
    double residual = 0.0;        // max |entry| over the vanishing set
    std::string residual_str;
    double max_truncation = 0.0;
    int precision_bits = 0;
    bool pass = false;
    std::string note;
};

/// Evaluate the vanishing row of the ZZ matrix at the witness point in exact
/// arithmetic; PASS when max |entry| <= tol. Throws std::invalid_argument
/// when the window's eigenclass does not match the point.
CertificationReport certify_obstruction(const HermiteWindow& w, const ObstructionPoint& point,
                                        const XReal& tol, Precision prec);

/// Probe location of the unexplained narrow dip reported along ab = 1/2
/// (status: inconclusive; reproduced as regression data, no zero asserted).
constexpr double kUnexplainedDipB = 3.5261848971734;

}  // namespace zakframe::framescan
