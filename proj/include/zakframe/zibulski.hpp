#pragma once

#include <complex>
#include <vector>

#include "zakframe/zak.hpp"

namespace zakframe::zz {

using hermite::HermiteWindow;
using xprec::Precision;
using xprec::XComplex;
using xprec::XReal;
using zak::QuarticSurd;
using zak::Rational;
using zak::ZakParameter;

/// Lattice density ab = p/q in lowest terms. Densities >= 1 are accepted for
/// exploration but flagged (the frame regions of interest have p/q < 1).
struct RationalDensity {
    int p = 1, q = 1;

    RationalDensity(int p_, int q_);
    bool flagged() const { return p >= q; }
    double value() const { return static_cast<double>(p) / q; }
};

/// The p x q matrix of shifted Zak samples at one phase-space point:
/// entry (k, l) = p^{-1/2} Z_{1/b} g(x - l p/q, gamma + k/p), together with
/// its extreme singular values once filled in.
struct ZZMatrixSample {
    Rational x, gamma;
    int p = 1, q = 1;
    std::vector<std::complex<double>> m;  // row-major, p rows, q columns
    double sigma_min = -1.0, sigma_max = -1.0;
    double truncation_bound = 0.0;  // max entrywise Zak truncation bound

    std::complex<double>& at(int k, int l) { return m[static_cast<size_t>(k) * q + l]; }
    const std::complex<double>& at(int k, int l) const { return m[static_cast<size_t>(k) * q + l]; }
};

ZZMatrixSample zz_matrix(const HermiteWindow& w, const ZakParameter& b, const RationalDensity& density,
                         const Rational& x, const Rational& gamma, double tol);

/// Extreme singular values of a p x q complex matrix (row-major), computed
/// as eigenvalue extremes of the p x p Gram matrix by cyclic Jacobi.
/// sigma_min is the p-th largest singular value: the lower frame bound of the
/// column system as a frame for C^p (zero when p > q).
std::pair<double, double> singular_extremes(const std::vector<std::complex<double>>& m, int p, int q);

/// Convenience: compute and store both extremes in the sample.
void fill_singular_extremes(ZZMatrixSample& sample);

/// Eigenvalues of an n x n Hermitian matrix (row-major), ascending, by
/// cyclic Jacobi with unitary rotations.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a, int n);

/// Integer oversampling (p = 1): (sum_l |Z_{1/b} w(x - l/q, gamma)|^2)^{1/2},
/// the quantity squeezed between A and B in the frame characterization.
double integer_oversampled_bound(const HermiteWindow& w, const ZakParameter& b, int q, const Rational& x,
                                 const Rational& gamma, double tol);

/// Extended-precision entries of the ZZ matrix (exact parameter required).
struct ZZEntriesX {
    int p = 1, q = 1;
    std::vector<XComplex> entries;  // row-major
    XReal max_truncation;
    const XComplex& at(int k, int l) const { return entries[static_cast<size_t>(k) * q + l]; }
};

ZZEntriesX zz_matrix_x(const HermiteWindow& w, const QuarticSurd& b, const RationalDensity& density,
                       const Rational& x, const Rational& gamma, const XReal& tol, Precision prec);

}  // namespace zakframe::zz
