#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cusplab/common.hpp"
#include "cusplab/cxmath.hpp"
#include "cusplab/grid.hpp"
#include "cusplab/models.hpp"

// Short-time machinery: time-Taylor coefficients on a grid, the reduced
// coordinates s = Z sqrt(t), rbar = r/sqrt(2t), the order-by-order residual
// operator, and the handling of divergent inverse-power expansions (optimal
// truncation and Borel resummation).

namespace cusplab::series {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class SeriesVariable { t, s };

struct TimePowerSeries {
    SeriesVariable variable = SeriesVariable::t;
    std::vector<ComplexField> coeffs;  // c_p, p = 0..order
    std::vector<std::string> warnings;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const Grid1D& grid() const {
        require(!coeffs.empty(), "TimePowerSeries: empty");
        return coeffs.front().grid;
    }
    void validate() const {
        require(!coeffs.empty(), "TimePowerSeries: empty");
        for (const auto& c : coeffs) {
            c.validate();
            require(c.grid.same_as(coeffs.front().grid),
                    "TimePowerSeries: coefficients must share one grid");
        }
    }
    // partial sum through order P at time/variable value x
    ComplexField partial_sum(double x, int P = -1) const {
        validate();
        if (P < 0) P = order();
        require(P <= order(), "TimePowerSeries: requested order not stored");
        ComplexField out = coeffs[0];
        double xp = 1.0;
        for (int p = 1; p <= P; ++p) {
            xp *= x;
            for (std::size_t j = 0; j < out.size(); ++j)
                out.values[j] += coeffs[static_cast<std::size_t>(p)].values[j] * xp;
        }
        return out;
    }
};

enum class AngularTag { scalar, cos_theta };

struct PotentialTerm {
    AngularTag angular = AngularTag::scalar;
    std::function<double(double)> profile;  // radial profile of v_p(rbar)
};

// v(r, t) = sum_p v_p(rbar) s^p; the Coulomb term sits at p = -1, a static
// dipole term at p = +1.
struct ReducedPotential {
    std::map<int, PotentialTerm> terms;
};

enum class DivergenceType { terminating, factorial };

// prefactor * rbar^{r_power} * e^{i rbar^2 (if oscillatory)} *
//   sum_k coeffs[k] rbar^{-2k}
struct AsymptoticSeries {
    Complex amplitude{1.0, 0.0};
    double r_power = 0.0;
    bool oscillatory = false;
    DivergenceType divergence = DivergenceType::factorial;
    std::vector<Complex> coeffs;

    Complex prefactor(double rbar) const {
        Complex v = amplitude * std::pow(rbar, r_power);
        if (oscillatory) v *= std::exp(Complex(0.0, rbar * rbar));
        return v;
    }
};

// ---------------------------------------------------------------------------
// Reduced coordinates
// ---------------------------------------------------------------------------

struct ReducedCoords {
    double s;
    double rbar;
};

inline ReducedCoords reduced_coords(double r, double t, const ModelParams& p) {
    p.validate();
    if (!(t > 0.0)) throw domain_error("reduced_coords: requires t > 0");
    require(r >= 0.0, "reduced_coords: requires r >= 0");
    return {p.Z * std::sqrt(t), r / std::sqrt(2.0 * t)};
}

inline double radius_from_reduced(const ReducedCoords& rc, const ModelParams& p) {
    return std::sqrt(2.0) * rc.rbar * rc.s / p.Z;
}

// v = -Z/r + field z expressed in reduced variables:
//   v_{-1}(rbar) = -Z^2/(sqrt(2) rbar),  v_{+1}(rbar) = sqrt(2) field rbar / Z
// (the latter multiplying cos(theta)). Other shapes are not supported.
inline ReducedPotential reduced_potential_terms(const ModelParams& p) {
    p.validate();
    require(p.dim == 3, "reduced_potential_terms: reduced recursion is set up in 3D");
    ReducedPotential pot;
    const double Z = p.Z;
    pot.terms[-1] = {AngularTag::scalar,
                     [Z](double rbar) { return -Z * Z / (std::sqrt(2.0) * rbar); }};
    if (p.field != 0.0) {
        const double f = p.field;
        pot.terms[1] = {AngularTag::cos_theta,
                        [f, Z](double rbar) { return std::sqrt(2.0) * f * rbar / Z; }};
    }
    return pot;
}

// ---------------------------------------------------------------------------
// Taylor-expansion coefficients on a grid: c_p = (-i H)^p psi0 / p!.
// ---------------------------------------------------------------------------

struct HamiltonianSpec {
    GridKind kind = GridKind::radial;            // line or radial (l = 0)
    std::function<double(double)> potential;      // V(x) or V(r); empty = free
    int fd_order = 6;                             // 4 or 6
};

namespace detail {

inline std::vector<Complex> laplacian(const std::vector<Complex>& f, double h, int order) {
    return order >= 6 ? fd::deriv2_o6(f, h) : fd::deriv2_o4(f, h);
}

inline std::vector<Complex> apply_hamiltonian(const HamiltonianSpec& ham,
                                              const Grid1D& g,
                                              const std::vector<Complex>& f) {
    std::vector<Complex> out(f.size());
    if (ham.kind == GridKind::radial) {
        // -1/2 (1/r) d^2/dr^2 (r f) for the l = 0 channel
        std::vector<Complex> u(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) u[j] = g.point(j) * f[j];
        auto lap = laplacian(u, g.step, ham.fd_order);
        for (std::size_t j = 0; j < f.size(); ++j) out[j] = -0.5 * lap[j] / g.point(j);
    } else {
        auto lap = laplacian(f, g.step, ham.fd_order);
        for (std::size_t j = 0; j < f.size(); ++j) out[j] = -0.5 * lap[j];
    }
    if (ham.potential)
        for (std::size_t j = 0; j < f.size(); ++j) out[j] += ham.potential(g.point(j)) * f[j];
    return out;
}

}  // namespace detail

// Repeated application of the discretized Hamiltonian. High coefficient
// orders amplify rounding noise roughly like lam_max^p / p! with
// lam_max ~ pi^2/(2 h^2) + max|V|; a warning (not a failure) is attached when
// that estimate becomes significant. The heuristic carries a safety factor of
// 1e4 for the one-sided boundary closures.
inline TimePowerSeries te_coefficients_grid(const HamiltonianSpec& ham,
                                            const ComplexField& psi0, int P) {
    psi0.validate();
    require(P >= 0, "te_coefficients_grid: requires P >= 0");
    TimePowerSeries out;
    out.variable = SeriesVariable::t;
    out.coeffs.reserve(static_cast<std::size_t>(P) + 1);
    out.coeffs.push_back(psi0);

    double vmax = 0.0;
    if (ham.potential)
        for (std::size_t j = 0; j < psi0.grid.n; ++j)
            vmax = std::max(vmax, std::abs(ham.potential(psi0.grid.point(j))));
    const double lam_max = kPi * kPi / (2.0 * psi0.grid.step * psi0.grid.step) + vmax;

    ComplexField c = psi0;
    double norm0 = 0.0;
    for (const auto& v : psi0.values) norm0 = std::max(norm0, std::abs(v));
    for (int p = 1; p <= P; ++p) {
        auto hv = detail::apply_hamiltonian(ham, c.grid, c.values);
        for (std::size_t j = 0; j < hv.size(); ++j)
            hv[j] *= Complex(0.0, -1.0) / static_cast<double>(p);
        c.values = std::move(hv);
        out.coeffs.push_back(c);

        double cmax = 0.0;
        for (const auto& v : c.values) cmax = std::max(cmax, std::abs(v));
        const double log_noise = std::log(2.2e-16 * norm0 * 1e4) +
                                 p * std::log(lam_max) - cxmath::log_gamma(p + 1.0);
        if (cmax > 0.0 && log_noise > std::log(cmax) + std::log(1e-8)) {
            out.warnings.push_back(
                "order " + std::to_string(p) +
                ": rounding amplification near coefficient scale (spectral-radius "
                "heuristic); refine by coarsening the grid or lowering P");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Order-by-order residual of the reduced equation
//   {L - m i} psi_m + (2/Z^2) sum_p v_{p-2} psi_{m-p},   L = -lap/2 + i rbar d/drbar
// on a single angular channel. Fourth-order differences with one-sided
// closures; includes the centrifugal term for the cos(theta) channel.
// ---------------------------------------------------------------------------

struct OrderedField {
    int order = 0;
    ComplexField field;
};

namespace detail {

inline int ell_of(Channel ch) {
    switch (ch) {
        case Channel::s_wave: return 0;
        case Channel::cos_theta: return 1;
        default: throw unsupported_error("reduced_residual: field needs an angular channel");
    }
}

}  // namespace detail

inline ComplexField reduced_residual(int m, const ComplexField& psi_m,
                                     const std::vector<OrderedField>& lower,
                                     const ReducedPotential& pot,
                                     const ModelParams& p) {
    p.validate();
    psi_m.validate();
    require(m >= 0, "reduced_residual: requires m >= 0");
    const Grid1D& g = psi_m.grid;
    require(g.n >= 9, "reduced_residual: grid too coarse for the stencil");
    if (g.step > 0.02)
        throw resolution_error(
            "reduced_residual: grid spacing too coarse for 1e-6 discrete residuals");
    const int ell = detail::ell_of(psi_m.channel);

    auto d1 = fd::deriv1_o4(psi_m.values, g.step);
    auto d2 = fd::deriv2_o4(psi_m.values, g.step);

    ComplexField res;
    res.grid = g;
    res.channel = psi_m.channel;
    res.values.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double r = g.point(j);
        const Complex lap =
            d2[j] + 2.0 * d1[j] / r - static_cast<double>(ell * (ell + 1)) * psi_m.values[j] / (r * r);
        res.values[j] = -0.5 * lap + Complex(0.0, r) * d1[j] -
                        Complex(0.0, static_cast<double>(m)) * psi_m.values[j];
    }

    // + (2/Z^2) sum over stored lower orders: p = m - order picks v_{p-2}
    for (const auto& low : lower) {
        low.field.validate();
        require(low.field.grid.same_as(g), "reduced_residual: fields must share one grid");
        const int pw = m - low.order;
        auto it = pot.terms.find(pw - 2);
        if (it == pot.terms.end()) continue;
        const auto& term = it->second;
        const int low_ell = detail::ell_of(low.field.channel);

        // angular projection of v * psi onto the target channel
        double coupling = 0.0;
        if (term.angular == AngularTag::scalar) {
            coupling = (low_ell == ell) ? 1.0 : 0.0;
        } else {
            // cos * s-wave -> cos channel (coefficient 1);
            // cos * cos channel -> s-wave (coefficient 1/3); the l = 2 part is
            // outside the modeled space and belongs to a different equation.
            if (low_ell == 0 && ell == 1) coupling = 1.0;
            if (low_ell == 1 && ell == 0) coupling = 1.0 / 3.0;
        }
        if (coupling == 0.0) continue;
        const double scale = 2.0 / (p.Z * p.Z) * coupling;
        for (std::size_t j = 0; j < g.n; ++j)
            res.values[j] += scale * term.profile(g.point(j)) * low.field.values[j];
    }
    return res;
}

// Pointwise magnitude scale of the operator terms, for relative residuals.
inline std::vector<double> reduced_scale(int m, const ComplexField& psi_m) {
    const Grid1D& g = psi_m.grid;
    const int ell = detail::ell_of(psi_m.channel);
    auto d1 = fd::deriv1_o4(psi_m.values, g.step);
    auto d2 = fd::deriv2_o4(psi_m.values, g.step);
    std::vector<double> s(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double r = g.point(j);
        s[j] = 0.5 * std::abs(d2[j]) + std::abs(d1[j]) / r +
               0.5 * ell * (ell + 1) * std::abs(psi_m.values[j]) / (r * r) +
               r * std::abs(d1[j]) + (m + 1) * std::abs(psi_m.values[j]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// S-equation residual: S'' + (S')^2 - 2 i rbar S' + 4 S'/rbar + 6 i.
// ---------------------------------------------------------------------------

inline ComplexField s_ode_residual(const ComplexField& S) {
    S.validate();
    const Grid1D& g = S.grid;
    require(g.n >= 9, "s_ode_residual: grid too coarse for the stencil");
    if (g.step > 0.02)
        throw resolution_error("s_ode_residual: grid spacing too coarse");
    auto d1 = fd::deriv1_o4(S.values, g.step);
    auto d2 = fd::deriv2_o4(S.values, g.step);
    ComplexField res;
    res.grid = g;
    res.channel = S.channel;
    res.values.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double r = g.point(j);
        res.values[j] = d2[j] + d1[j] * d1[j] - Complex(0.0, 2.0 * r) * d1[j] +
                        4.0 * d1[j] / r + Complex(0.0, 6.0);
    }
    return res;
}

// Branch-continuous log of a nonvanishing sampled profile; the imaginary part
// is unwrapped along the grid so finite differences see no 2 pi jumps.
inline ComplexField continuous_log(const ComplexField& f) {
    f.validate();
    ComplexField out;
    out.grid = f.grid;
    out.channel = f.channel;
    out.values.resize(f.size());
    double offset = 0.0;
    double prev_arg = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const Complex z = f.values[j];
        require(std::abs(z) > 0.0, "continuous_log: profile vanishes on the grid");
        double arg = std::arg(z);
        if (j > 0) {
            while (arg + offset - prev_arg > kPi) offset -= 2.0 * kPi;
            while (arg + offset - prev_arg < -kPi) offset += 2.0 * kPi;
        }
        prev_arg = arg + offset;
        out.values[j] = Complex(std::log(std::abs(z)), prev_arg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Series objects for the fourth-order correction.
// ---------------------------------------------------------------------------

// a_m of the divergent inverse-power branch, via log-Gamma accumulation.
inline Complex borel_coefficient(int m) { return models::xi4_series_coefficient(m); }

// Divergent branch, scaled so that the resummed series equals the closed-form
// radial profile: amplitude = -c2, prefactor e^{i rbar^2}/rbar^8.
inline AsymptoticSeries xi4_asymptotic_series(const ModelParams& p, int n_coeffs = 48) {
    require(n_coeffs >= 2 && n_coeffs <= 200, "xi4_asymptotic_series: 2..200 coefficients");
    AsymptoticSeries s;
    s.amplitude = -models::xi4_c2(p);
    s.r_power = -8.0;
    s.oscillatory = true;
    s.divergence = DivergenceType::factorial;
    s.coeffs.resize(static_cast<std::size_t>(n_coeffs));
    s.coeffs[0] = 1.0;
    for (int m = 0; m + 1 < n_coeffs; ++m)
        s.coeffs[static_cast<std::size_t>(m + 1)] = models::xi4_series_coefficient(m);
    return s;
}

// Terminating branch (polynomial in rbar with inverse powers).
inline AsymptoticSeries xi4_terminating_branch(Complex c1) {
    AsymptoticSeries s;
    s.amplitude = c1;
    s.r_power = 3.0;
    s.oscillatory = false;
    s.divergence = DivergenceType::terminating;
    s.coeffs = {Complex(1.0, 0.0), Complex(0.0, 4.5), Complex(-2.25, 0.0),
                Complex(0.0, 0.375)};
    return s;
}

struct OptimalTruncationResult {
    Complex value;
    double error_estimate;  // magnitude of the first omitted term (absolute)
    int terms_used;
};

// Sum to the smallest term; the error estimate is the first omitted term.
inline OptimalTruncationResult asymptotic_eval_optimal(const AsymptoticSeries& s,
                                                       double rbar) {
    require(rbar > 0.0, "asymptotic_eval_optimal: requires rbar > 0");
    require(!s.coeffs.empty(), "asymptotic_eval_optimal: empty series");
    const double lr = std::log(rbar);
    KahanSum<Complex> sum;
    double prev = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    double omitted = 0.0;
    for (; k < s.coeffs.size(); ++k) {
        const double mag = std::abs(s.coeffs[k]);
        const double lmag = (mag > 0.0 ? std::log(mag) : -1e308) - 2.0 * k * lr;
        if (s.divergence == DivergenceType::factorial && lmag > prev) {
            omitted = std::exp(lmag);
            break;
        }
        prev = lmag;
        sum.add(s.coeffs[k] * std::exp(-2.0 * k * lr));
    }
    if (s.divergence == DivergenceType::factorial && k == s.coeffs.size())
        omitted = std::exp(prev);  // ran out of coefficients before the minimum
    const Complex pref = s.prefactor(rbar);
    const Complex value = pref * sum.value();
    const double err = std::abs(pref) * omitted;
    if (s.divergence == DivergenceType::factorial &&
        omitted > 1e-3 * std::abs(sum.value()))
        throw optimal_truncation_error(
            "asymptotic_eval_optimal: no usable smallest term at this rbar "
            "(series still diverging); increase rbar or resum");
    return {value, err, static_cast<int>(k)};
}

// ---------------------------------------------------------------------------
// Borel resummation: b(zeta) = sum a_k zeta^k / k! represented by a diagonal
// rational approximant, then the Laplace integral along the ray of the given
// angle. The Pade construction and the quadrature run in extended precision;
// a near-zero denominator on the ray raises ray_obstruction_error.
// ---------------------------------------------------------------------------

namespace detail {

// Gauss elimination with partial pivoting, extended precision.
inline std::vector<ComplexL> solve_dense_ld(std::vector<std::vector<ComplexL>> A,
                                            std::vector<ComplexL> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        long double best = std::abs(A[col][col]);
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > best) {
                best = std::abs(A[r][col]);
                piv = r;
            }
        if (best == 0.0L)
            throw data_error("borel_resum: singular Pade system (degenerate coefficients)");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == ComplexL{}) continue;
            const ComplexL f = A[r][col] / A[col][col];
            for (std::size_t c2 = col; c2 < n; ++c2) A[r][c2] -= f * A[col][c2];
            b[r] -= f * b[col];
        }
    }
    std::vector<ComplexL> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

struct PadeLd {
    std::vector<ComplexL> num;  // ascending powers
    std::vector<ComplexL> den;

    ComplexL eval_num(ComplexL z) const {
        ComplexL v = 0.0L;
        for (std::size_t i = num.size(); i-- > 0;) v = v * z + num[i];
        return v;
    }
    ComplexL eval_den(ComplexL z) const {
        ComplexL v = 0.0L;
        for (std::size_t i = den.size(); i-- > 0;) v = v * z + den[i];
        return v;
    }
};

inline PadeLd pade_diagonal_ld(const std::vector<ComplexL>& cs, int K) {
    // denominator from sum_{j=1..K} b_j c_{K+i-j} = -c_{K+i}, i = 1..K
    std::vector<std::vector<ComplexL>> A(static_cast<std::size_t>(K),
                                         std::vector<ComplexL>(static_cast<std::size_t>(K)));
    std::vector<ComplexL> rhs(static_cast<std::size_t>(K));
    for (int i = 1; i <= K; ++i) {
        for (int j = 1; j <= K; ++j) {
            const int idx = K + i - j;
            A[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                idx >= 0 ? cs[static_cast<std::size_t>(idx)] : ComplexL{};
        }
        rhs[static_cast<std::size_t>(i - 1)] = -cs[static_cast<std::size_t>(K + i)];
    }
    auto bsol = solve_dense_ld(std::move(A), std::move(rhs));
    PadeLd p;
    p.den.resize(static_cast<std::size_t>(K) + 1);
    p.den[0] = 1.0L;
    for (int j = 1; j <= K; ++j) p.den[static_cast<std::size_t>(j)] = bsol[static_cast<std::size_t>(j - 1)];
    p.num.resize(static_cast<std::size_t>(K) + 1);
    for (int n = 0; n <= K; ++n) {
        ComplexL acc = 0.0L;
        for (int j = 0; j <= std::min(n, K); ++j)
            acc += p.den[static_cast<std::size_t>(j)] * cs[static_cast<std::size_t>(n - j)];
        p.num[static_cast<std::size_t>(n)] = acc;
    }
    return p;
}

}  // namespace detail

// Resummed value of the full series object at rbar (prefactor included).
// pade_order K requires at least 2K+1 stored coefficients. The default order
// 21 was calibrated against the closed form; the branch-point structure of
// the transform limits the continuation, so much larger orders do not help.
inline Complex borel_resum(const AsymptoticSeries& s, double rbar,
                           double ray_angle = -kPi / 4.0, int pade_order = 21) {
    require(rbar > 0.0, "borel_resum: requires rbar > 0");
    require(pade_order >= 1, "borel_resum: pade_order >= 1");
    require(static_cast<int>(s.coeffs.size()) >= 2 * pade_order + 1,
            "borel_resum: coefficient count must be at least 2*pade_order + 1");
    require(std::abs(ray_angle) < kPi / 2.0,
            "borel_resum: |ray angle| must be below pi/2 for a convergent Laplace integral");

    const double x = 1.0 / (rbar * rbar);
    // Borel transform coefficients a_k / k!
    std::vector<ComplexL> cs(static_cast<std::size_t>(2 * pade_order + 1));
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const double lg = cxmath::log_gamma(static_cast<double>(k) + 1.0);
        cs[k] = ComplexL(s.coeffs[k].real(), s.coeffs[k].imag()) *
                std::exp(static_cast<long double>(-lg));
    }
    const auto pade = detail::pade_diagonal_ld(cs, pade_order);

    const ComplexL w = std::polar(1.0L, static_cast<long double>(ray_angle));
    const long double decay = std::cos(static_cast<long double>(ray_angle));
    // adaptive panel extension with 16-point Gauss-Legendre per panel
    static const double gx[8] = {0.0950125098376374, 0.2816035507792589,
                                 0.4580167776572274, 0.6178762444026438,
                                 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
    static const double gw[8] = {0.1894506104550685, 0.1826034150449236,
                                 0.1691565193950025, 0.1495959888165767,
                                 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
    ComplexL total = 0.0L;
    long double den_floor = std::numeric_limits<long double>::infinity();
    const long double panel = 2.0L;
    long double u0 = 0.0L;
    int quiet = 0;
    while (u0 < 4000.0L) {
        ComplexL acc = 0.0L;
        const long double mid = u0 + 0.5L * panel, half = 0.5L * panel;
        for (int i = 0; i < 8; ++i) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                const long double u = mid + sgn * half * static_cast<long double>(gx[i]);
                const ComplexL zeta = w * u * static_cast<long double>(x);
                const ComplexL dnv = pade.eval_den(zeta);
                den_floor = std::min(den_floor, std::abs(dnv));
                if (std::abs(dnv) < 1e-9L)
                    throw ray_obstruction_error(
                        "borel_resum: rational approximant pole on the integration ray; "
                        "try a different ray angle");
                acc += static_cast<long double>(gw[i]) * half * w *
                       std::exp(-w * u) * (pade.eval_num(zeta) / dnv);
            }
        }
        total += acc;
        u0 += panel;
        // stop once panels are negligible and the exponential cutoff is active
        if (std::abs(acc) < 1e-20L * std::max(std::abs(total), 1e-30L) &&
            u0 * decay > 30.0L) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    const Complex f(static_cast<double>(total.real()), static_cast<double>(total.imag()));
    return s.prefactor(rbar) * f;
}

// ---------------------------------------------------------------------------
// JSON serialization ([re, im] pairs), for the CLI round-trips.
// ---------------------------------------------------------------------------

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }
inline Complex complex_from_json(const json& j) {
    require(j.is_array() && j.size() == 2, "complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Grid1D& g) {
    const char* kind = g.kind == GridKind::line ? "line"
                       : g.kind == GridKind::radial ? "radial"
                                                    : "reduced_radial";
    return {{"kind", kind}, {"start", g.start}, {"step", g.step}, {"n", g.n}};
}

inline json to_json(const TimePowerSeries& s) {
    s.validate();
    json coeffs = json::array();
    for (const auto& c : s.coeffs) {
        json vals = json::array();
        for (const auto& v : c.values) vals.push_back(to_json(v));
        coeffs.push_back(std::move(vals));
    }
    return {{"type", "time_power_series"},
            {"variable", s.variable == SeriesVariable::t ? "t" : "s"},
            {"grid", to_json(s.grid())},
            {"order", s.order()},
            {"coeffs", std::move(coeffs)},
            {"warnings", s.warnings}};
}

inline json to_json(const AsymptoticSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
    return {{"type", "asymptotic_series"},
            {"amplitude", to_json(s.amplitude)},
            {"prefactor", {{"r_power", s.r_power}, {"oscillatory", s.oscillatory}}},
            {"divergence",
             s.divergence == DivergenceType::terminating ? "terminating" : "factorial"},
            {"coeffs", std::move(coeffs)}};
}

inline AsymptoticSeries asymptotic_series_from_json(const json& j) {
    require(j.value("type", "") == std::string("asymptotic_series"),
            "asymptotic_series_from_json: wrong type tag");
    AsymptoticSeries s;
    s.amplitude = complex_from_json(j.at("amplitude"));
    s.r_power = j.at("prefactor").at("r_power").get<double>();
    s.oscillatory = j.at("prefactor").at("oscillatory").get<bool>();
    s.divergence = j.at("divergence").get<std::string>() == "terminating"
                       ? DivergenceType::terminating
                       : DivergenceType::factorial;
    for (const auto& c : j.at("coeffs")) s.coeffs.push_back(complex_from_json(c));
    return s;
}

}  // namespace cusplab::series
