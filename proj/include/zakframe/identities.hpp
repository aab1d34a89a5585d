#pragma once

#include <string>
#include <vector>

#include "zakframe/zak.hpp"

namespace zakframe::identities {

using hermite::HermiteWindow;
using xprec::Precision;
using xprec::XReal;
using zak::QuarticSurd;
using zak::Rational;

/// One vanishing-Zak-value claim: Z_lambda window (x, gamma) = 0 with exact
/// lambda and rational coordinates. Families:
///   I1  Z_{sqrt2}  h_{4m+2}(p/4, 1/2) = 0,  p in {1,3}
///   I2  Z_{sqrt3}  h_{4m+2}(p/6, 1/2) = 0,  p in {1,5}
///   I3  Z_{sqrt s} h_{4m+3}(p/s, 0)   = 0,  s in {2,3,4}, p in {0..s-1}
///   I4  the class versions of I1-I3 for general finite H_2 / H_3 windows
///   I5  Z_{3^{1/4}}  h_4(0, 1/2) = 0
///   I6  Z_{3^{-1/4}} h_4(0, 1/2) = 0
///   I7  Z_{27^{1/4}} h_5(p/3, 1/2) = 0,  p in {0,1,2}
/// I1-I4 hold by the eigenclass argument; I5-I7 are verified numerically
/// only (no closed-form derivation is known for them).
struct IdentityCase {
    std::string id;       // catalog family: I1..I7
    std::string params;   // human-readable parameter tag
    HermiteWindow window;
    QuarticSurd lambda;
    Rational x, gamma;
    bool proven;          // false for I5-I7: numerically verified only
};

struct VerificationReport {
    IdentityCase item;
    int precision_bits = 0;
    XReal residual;          // |Z|
    XReal truncation_bound;
    int terms_used = 0;
    bool pass = false;       // residual <= max(tolerance, 4 * truncation_bound)
    std::string residual_str;
    std::string truncation_str;
};

constexpr unsigned kDefaultSeed = 0x5eed2023u;

/// Deterministic catalog: I1-I3 for m in {0..m_max}, I4 for 10 seeded H_2
/// and 10 seeded H_3 windows, I5-I7.
std::vector<IdentityCase> catalog(int m_max = 2, unsigned seed = kDefaultSeed);

/// All distinct family ids, in catalog order.
std::vector<std::string> catalog_ids();

VerificationReport verify(const IdentityCase& item, Precision prec, const XReal& tolerance);

/// |Z_lambda window (x, gamma)| at extended precision: shows the catalog
/// zeros are class-specific, not artifacts of the evaluator.
XReal negative_control(const HermiteWindow& w, const QuarticSurd& lambda, const Rational& x,
                       const Rational& gamma, Precision prec);

/// JSON-lines serialization (one object per case).
std::string report_json_line(const VerificationReport& rep);

}  // namespace zakframe::identities
