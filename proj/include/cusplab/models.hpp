#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "cusplab/common.hpp"
#include "cusplab/cxmath.hpp"

// Closed-form wavefunctions for the sudden-switch scenarios, in Hartree
// atomic units: the vaporized-nucleus free propagation, its all-order
// time-Taylor resummation, the short-time expansions with their half-power
// terms, the fourth-order reduced-variable term with its finite closed-form
// correction, and the dipole / photoabsorption tail constants.

namespace cusplab::models {

using cxmath::erfcx;
using cxmath::faddeeva_w;

inline constexpr Complex kI{0.0, 1.0};

// Validity rule for the short-time asymptotic forms: r >> sqrt(t) is
// operationalized as r >= 5 sqrt(t) and enforced as a precondition.
inline constexpr double kAsymptoticRadiusFactor = 5.0;

inline double psi0_normalization(double Z) { return std::pow(Z, 1.5) / kSqrtPi; }

// Ground state Z^{3/2} e^{-Z r} / sqrt(pi).
inline Complex psi0_hydrogen(double r, const ModelParams& p) {
    p.validate();
    require(r >= 0.0, "psi0_hydrogen: requires r >= 0");
    return psi0_normalization(p.Z) * std::exp(-p.Z * r);
}

// 1D delta-well ground state sqrt(Z) e^{-Z |x|}.
inline Complex psi0_delta_well(double x, const ModelParams& p) {
    p.validate();
    return std::sqrt(p.Z) * std::exp(-p.Z * std::abs(x));
}

namespace detail {

// F(rho) = (rho + iZt) e^{Z rho} erfc((rho + iZt)/sqrt(2 i t)), evaluated in
// the scaled form (rho + iZt) e^{i(rho^2 - Z^2 t^2)/(2 t)} w(i zeta): the
// exponent is purely imaginary, so the product never overflows. For rho < 0
// the reflection of w is applied by hand so that the phase factors of the
// dominant 2 e^{-(i zeta)^2} term cancel exactly (phase * e^{zeta^2} = e^{Z rho});
// at short times the raw phase argument is ~ r^2/t and its rounding would
// otherwise dominate.
inline Complex exact_free_piece(double rho, double t, double Z) {
    const Complex a(0.0, Z * t);
    const double inv = 1.0 / std::sqrt(2.0 * t);
    const Complex q = std::polar(inv, kPi / 4.0);  // d(i zeta)/drho
    const Complex izeta = (rho + a) * q;
    const Complex phase = std::exp(Complex(0.0, (rho * rho - Z * Z * t * t) / (2.0 * t)));
    if (izeta.imag() >= 0.0) return (rho + a) * phase * faddeeva_w(izeta);
    return (rho + a) * (2.0 * std::exp(Z * rho) - phase * faddeeva_w(-izeta));
}

}  // namespace detail

// Free evolution of the hydrogen ground state after the nucleus is removed.
// Finite everywhere; below r = 1e-4 sqrt(t) the 0/0 quotient is replaced by
// its Taylor continuation in r.
inline Complex psi_exact_free(double r, double t, const ModelParams& p) {
    p.validate();
    require(r >= 0.0, "psi_exact_free: requires r >= 0");
    if (t < 0.0) throw domain_error("psi_exact_free: requires t >= 0");
    const double Z = p.Z;
    if (t == 0.0) return psi0_hydrogen(r, p);

    if (r < 1e-4 * std::sqrt(t)) {
        // psi = (Z^{3/2}/sqrt(pi)) [ w0 (1 + i Z^2 t) - 2 beta/sqrt(pi)
        //        + (r^2/(2t)) (i w0 - Z^2 t w0 - 2 i beta/sqrt(pi)) ]
        // with beta = Z sqrt(t/2) e^{i pi/4}, w0 = w(-conj(beta)).
        const Complex beta = std::polar(Z * std::sqrt(0.5 * t), kPi / 4.0);
        const Complex w0 = faddeeva_w(-std::conj(beta));
        const Complex lead = w0 * (1.0 + kI * Z * Z * t) - 2.0 * beta / kSqrtPi;
        const Complex curv =
            (kI * w0 - Z * Z * t * w0 - 2.0 * kI * beta / kSqrtPi) * (r * r / (2.0 * t));
        return checked(psi0_normalization(Z) * (lead + curv), "psi_exact_free");
    }

    const Complex pref =
        std::pow(Z, 1.5) * std::exp(Complex(0.0, 0.5 * Z * Z * t)) / (2.0 * kSqrtPi * r);
    const Complex val =
        pref * (detail::exact_free_piece(r, t, Z) - detail::exact_free_piece(-r, t, Z));
    return checked(val, "psi_exact_free");
}

// All-order sum of the time-Taylor (TE) propagation of the same state:
// Z^{3/2}/sqrt(pi) e^{-Z r + i Z^2 t/2} (1 - i Z t / r). Divergent at r = 0
// for t > 0; reported as an infinite-magnitude value, never NaN.
inline Complex psi_te_free(double r, double t, const ModelParams& p) {
    p.validate();
    require(r >= 0.0, "psi_te_free: requires r >= 0");
    if (r == 0.0 && t != 0.0)
        return Complex(std::numeric_limits<double>::infinity(), 0.0);
    Complex val = psi0_normalization(p.Z) *
                  std::exp(Complex(-p.Z * r, 0.5 * p.Z * p.Z * t)) *
                  (1.0 - kI * p.Z * t / r);
    if (r == 0.0) val = psi0_normalization(p.Z);  // t == 0 here
    return val;
}

// ---------------------------------------------------------------------------
// One non-analytic short-time contribution: amplitude * t^nu * ctheta^k /
// r^r_power, optionally carrying the oscillatory factor e^{i r^2/(2 t)}.
// ---------------------------------------------------------------------------

enum class AngularFactor { none, cos_theta };

struct HalfPowerTerm {
    Complex amplitude;
    Rational t_exponent;
    int r_power = 0;
    AngularFactor angular = AngularFactor::none;
    bool oscillatory = false;

    Complex eval(double r, double ctheta, double t) const {
        Complex v = amplitude * std::pow(t, t_exponent.value()) / std::pow(r, r_power);
        if (angular == AngularFactor::cos_theta) v *= ctheta;
        if (oscillatory) v *= std::exp(Complex(0.0, r * r / (2.0 * t)));
        return v;
    }
};

// t^{5/2} term of the vaporized-nucleus expansion.
inline HalfPowerTerm halfpower_free_term(const ModelParams& p) {
    return {-(2.0 + 2.0 * kI) * std::pow(p.Z, 2.5) / kPi, Rational{5, 2}, 4,
            AngularFactor::none, true};
}

// t^{11/2} term of the hydrogen-in-field expansion.
inline HalfPowerTerm halfpower_field_term(const ModelParams& p) {
    return {-(8.0 - 8.0 * kI) * p.field * std::pow(p.Z, 2.5) / kPi, Rational{11, 2}, 7,
            AngularFactor::cos_theta, true};
}

// t^{9/2} term of the 1D delta-well-in-field expansion.
inline HalfPowerTerm halfpower_delta_well_term(const ModelParams& p) {
    return {-(4.0 + 4.0 * kI) * p.field * std::pow(p.Z, 1.5) / kSqrtPi, Rational{9, 2}, 5,
            AngularFactor::none, true};
}

inline void check_asymptotic_window(double r, double t, const char* who) {
    if (!(r >= kAsymptoticRadiusFactor * std::sqrt(t)))
        throw range_error(std::string(who) +
                          ": outside validity window, requires r >= 5 sqrt(t)");
}

// Short-time expansion of the vaporized-nucleus wavefunction at fixed r:
// the t^0, t^1, t^2 terms and optionally the t^{5/2} half-power term.
inline Complex short_time_free(double r, double t, const ModelParams& p,
                               bool include_half_power) {
    p.validate();
    require(t >= 0.0, "short_time_free: requires t >= 0");
    if (t > 0.0) check_asymptotic_window(r, t, "short_time_free");
    require(r > 0.0, "short_time_free: requires r > 0");
    const double Z = p.Z;
    const double e = std::exp(-Z * r);
    const Complex c0 = psi0_normalization(Z) * e;
    const Complex c1 = kI * std::pow(Z, 2.5) * (Z * r - 2.0) * e / (2.0 * kSqrtPi * r);
    const Complex c2 = -std::pow(Z, 4.5) * (Z * r - 4.0) * e / (8.0 * kSqrtPi * r);
    Complex val = c0 + c1 * t + c2 * t * t;
    if (include_half_power && t > 0.0) val += halfpower_free_term(p).eval(r, 1.0, t);
    return val;
}

inline Complex leading_half_power_field(double r, double ctheta, double t,
                                        const ModelParams& p) {
    p.validate();
    require(t > 0.0, "leading_half_power_field: requires t > 0");
    check_asymptotic_window(r, t, "leading_half_power_field");
    return halfpower_field_term(p).eval(r, ctheta, t);
}

// Odd in x, as a field-linear response must be; magnitude even in x.
inline Complex leading_half_power_delta_well(double x, double t, const ModelParams& p) {
    p.validate();
    require(t > 0.0, "leading_half_power_delta_well: requires t > 0");
    check_asymptotic_window(std::abs(x), t, "leading_half_power_delta_well");
    return halfpower_delta_well_term(p).eval(x, 1.0, t);
}

// Magnitude of the t^{9/2} coefficient of the induced dipole moment, per unit
// field; the term enters mu(t) with a minus sign.
inline double dipole_short_time_coefficient(const ModelParams& p) {
    p.validate();
    return 256.0 * std::pow(p.Z, 5.0) / (2835.0 * kSqrtPi);
}

// High-frequency photoabsorption tail 16 sqrt(2) Z^5 pi / (3 c omega^{7/2}).
inline double sigma_tail(double omega, const ModelParams& p) {
    p.validate();
    require(omega > 0.0, "sigma_tail: requires omega > 0");
    return 16.0 * std::sqrt(2.0) * std::pow(p.Z, 5.0) * kPi /
           (3.0 * p.light_speed * std::pow(omega, 3.5));
}

// ---------------------------------------------------------------------------
// Reduced-variable short-time terms. Fields are stored per angular channel:
// an s-wave part and a cos(theta) part, psi_m = A_m(rbar) + B_m(rbar) cos.
// The field-linear parts enter first at order 3.
// ---------------------------------------------------------------------------

// Vaporized nucleus, orders 0..4 (s-wave only).
inline Complex reduced_te_free(int m, double rbar, const ModelParams& p) {
    p.validate();
    require(m >= 0 && m <= 4, "reduced_te_free: orders 0..4 are tabulated");
    require(rbar > 0.0, "reduced_te_free: requires rbar > 0");
    const double c = psi0_normalization(p.Z);
    const double r = rbar, r2 = rbar * rbar;
    const double s2 = std::sqrt(2.0);
    switch (m) {
        case 0: return c;
        case 1: return c * Complex(-s2 * r, -1.0 / (s2 * r));
        case 2: return c * Complex(r2, 1.5);
        case 3: return c * Complex(-s2 * r2 * r / 3.0 + 1.0 / (2.0 * s2 * r), -s2 * r);
        case 4: return c * Complex(r2 * r2 / 6.0 - 5.0 / 8.0, 5.0 * r2 / 6.0);
    }
    return 0.0;
}

// Hydrogen atom in a suddenly switched field, s-wave parts of orders 0..4.
inline Complex reduced_te_field_l0(int m, double rbar, const ModelParams& p) {
    p.validate();
    require(m >= 0 && m <= 4, "reduced_te_field_l0: orders 0..4 are tabulated");
    const double c = psi0_normalization(p.Z);
    const double r = rbar, r2 = rbar * rbar;
    const double s2 = std::sqrt(2.0);
    switch (m) {
        case 0: return c;
        case 1: return -c * s2 * r;
        case 2: return c * Complex(r2, 0.5);
        case 3: return c * Complex(-s2 * r2 * r / 3.0, -r / s2);
        case 4: return c * Complex(4.0 * r2 * r2 - 3.0, 12.0 * r2) / 24.0;
    }
    return 0.0;
}

// cos(theta) radial profiles of the same orders; divergent as rbar^{-2} at
// order 4 (the defect the closed-form correction removes).
inline Complex reduced_te_field_l1(int m, double rbar, const ModelParams& p) {
    p.validate();
    require(m >= 0 && m <= 4, "reduced_te_field_l1: orders 0..4 are tabulated");
    require(rbar > 0.0, "reduced_te_field_l1: requires rbar > 0");
    if (m <= 2) return 0.0;
    const double z32 = std::pow(p.Z, 1.5);
    if (m == 3) return -kI * std::sqrt(2.0) * p.field * rbar / (kSqrtPi * z32);
    const double r2 = rbar * rbar;
    return kI * p.field * (1.0 + 6.0 * kI * r2 + 24.0 * r2 * r2) /
           (12.0 * kSqrtPi * z32 * r2);
}

// Fourth-order TE term: both displayed pieces, with zbar = rbar * ctheta.
inline Complex psi4_te(double rbar, double ctheta, const ModelParams& p) {
    p.validate();
    if (rbar == 0.0)
        return Complex(std::numeric_limits<double>::infinity(), 0.0);
    return reduced_te_field_l0(4, rbar, p) + reduced_te_field_l1(4, rbar, p) * ctheta;
}

// ---------------------------------------------------------------------------
// Closed-form correction xi4 = e^{S(rbar)} zbar that restores finiteness of
// the fourth order at the nucleus.
//
// Normalization: with the bracket as printed, finiteness of psi4 requires
//   c2 = (1 - i) field / (sqrt(2) pi Z^{3/2}),
// and with this value the leading t^{11/2} half-power comes out exactly as
// halfpower_field_term. (The constant is fixed here by the finiteness
// requirement itself; see xi4_c2.)
// ---------------------------------------------------------------------------

inline Complex xi4_c2(const ModelParams& p) {
    p.validate();
    return (1.0 - kI) * p.field / (std::sqrt(2.0) * kPi * std::pow(p.Z, 1.5));
}

namespace detail {

// closed bracket in extended precision; cancellation costs ~ rbar^{10} eps
inline ComplexL xi4_bracket_ld(long double r) {
    const ComplexL i(0.0L, 1.0L);
    const long double r2 = r * r;
    const ComplexL osc = std::exp(i * r2);
    const long double sq2pi = 2.50662827463100050241576528481104525L;
    // erfc(alpha r) with alpha = (1-i)/sqrt2: (alpha r)^2 = -i r^2, so
    // erfc = e^{i r^2} erfcx(alpha r); |e^{i r^2}| = 1.
    const long double inv_sq2 = 0.707106781186547524400844362104849039L;
    const ComplexL alpha_r(inv_sq2 * r, -inv_sq2 * r);
    const ComplexL erfc_val = osc * cxmath::erfcx_ld(alpha_r);
    const ComplexL poly1 = ComplexL(-3.0L + 4.0L * r2 * r2, 16.0L * r2);
    const ComplexL poly2 = ComplexL(-18.0L * r2, 3.0L + 36.0L * r2 * r2) +
                           ComplexL(8.0L * r2 * r2 * r2, 0.0L);
    return ComplexL(2.0L, 2.0L) * osc * r * poly1 - sq2pi * poly2 * erfc_val;
}

// coefficients of the factorially divergent inverse-power branch
inline double xi4_series_log_abs(int m) {
    return std::lgamma(2.0 * m + 7.0) - std::lgamma(m + 2.0) -
           (2.0 * m + 5.0) * std::log(2.0) + std::log((m + 4.0) / 9.0);
}
inline Complex xi4_series_phase(int m) {
    switch ((m + 1) & 3) {  // (-i)^{m+1}
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

}  // namespace detail

// a_m of the divergent branch: (-i)^{m+1} (m+4) (2m+6)! / ((m+1)! 2^{2m+5} 9),
// via log-Gamma so no intermediate factorial overflows.
inline Complex xi4_series_coefficient(int m) {
    require(m >= 0, "xi4_series_coefficient: requires m >= 0");
    require(m <= 200, "xi4_series_coefficient: tabulated range is m <= 200");
    return detail::xi4_series_phase(m) * std::exp(detail::xi4_series_log_abs(m));
}

// Radial profile e^{S(rbar)} (the object multiplying zbar). Representation
// switch at rbar = 6.5: extended-precision closed form below, optimally
// truncated inverse-power series above; both sides agree to ~1e-11 at the
// seam.
inline Complex xi4_radial_profile(double rbar, const ModelParams& p) {
    p.validate();
    require(rbar >= 0.0, "xi4_radial_profile: requires rbar >= 0");
    const Complex c2 = xi4_c2(p);
    if (rbar == 0.0)
        return Complex(std::numeric_limits<double>::infinity(), 0.0);
    if (rbar <= 6.5) {
        const ComplexL br = detail::xi4_bracket_ld(rbar);
        const ComplexL pref = ComplexL(1.0L, 1.0L) /
                              (72.0L * static_cast<long double>(rbar) *
                               static_cast<long double>(rbar) * static_cast<long double>(rbar));
        const ComplexL v = pref * br;
        return c2 * Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
    // large rbar: profile = -c2 e^{i rbar^2}/rbar^8 [1 + sum a_m rbar^{-2m-2}]
    const double lr = std::log(rbar);
    Complex sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= 200; ++m) {
        const double lmag = detail::xi4_series_log_abs(m) - (2.0 * m + 2.0) * lr;
        if (lmag > prev) break;  // optimal truncation
        prev = lmag;
        if (lmag < -745.0) break;
        sum += detail::xi4_series_phase(m) * std::exp(lmag);
    }
    const Complex osc = std::exp(Complex(0.0, rbar * rbar));
    return -c2 * osc * sum / std::pow(rbar, 8.0);
}

// xi4(rbar, theta) = profile * zbar with zbar = rbar cos(theta).
inline Complex xi4_closed(double rbar, double ctheta, const ModelParams& p) {
    return xi4_radial_profile(rbar, p) * rbar * ctheta;
}

// Fourth-order term with the correction applied; finite at the nucleus.
inline Complex psi4_total(double rbar, double ctheta, const ModelParams& p) {
    return psi4_te(rbar, ctheta, p) + xi4_closed(rbar, ctheta, p);
}

}  // namespace cusplab::models
