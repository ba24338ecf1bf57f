#include "dqo/drude_parameters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dqo/errors.hpp"

namespace dqo {

namespace {

// The Drude relations written for Gamma = omega_cut - Omega:
//   g(Gamma) = gamma w (w - Gamma) - Gamma [(w - Gamma)^2 + omega0^2].
// Working in Gamma keeps both Gamma and Omega accurate when Gamma << omega_cut.
struct GammaCubic {
    double gamma, omega0, w;

    double operator()(double G) const noexcept {
        const double O = w - G;
        return gamma * w * O - G * (O * O + omega0 * omega0);
    }
    double derivative(double G) const noexcept {
        return -3.0 * G * G + 4.0 * w * G - (w * w + omega0 * omega0 + gamma * w);
    }
};

double bisect_then_newton(const GammaCubic& g, double lo, double hi) {
    double glo = g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(std::abs(hi), 1e-300); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double d = g.derivative(x);
        if (d == 0.0) break;
        const double next = x - g(x) / d;
        if (!(next >= lo && next <= hi)) break;
        if (std::abs(next - x) <= 1e-16 * std::abs(x)) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

complex horner(const std::array<complex, 3>& c, complex s) {
    // monic cubic s^3 + c[0] s^2 + c[1] s + c[2]
    return ((s + c[0]) * s + c[1]) * s + c[2];
}

complex horner_derivative(const std::array<complex, 3>& c, complex s) {
    return (3.0 * s + 2.0 * c[0]) * s + c[1];
}

// Durand-Kerner for a monic cubic, finished with Newton steps on each root.
std::array<complex, 3> cubic_roots(const std::array<complex, 3>& c) {
    double bound = 1.0;
    for (const auto& ci : c) bound = std::max(bound, 1.0 + std::abs(ci));
    std::array<complex, 3> z;
    const complex seed{0.4, 0.9};
    z[0] = bound * seed;
    z[1] = z[0] * seed;
    z[2] = z[1] * seed;
    for (int it = 0; it < 1000; ++it) {
        double change = 0.0;
        for (int i = 0; i < 3; ++i) {
            complex denom{1.0, 0.0};
            for (int j = 0; j < 3; ++j) {
                if (j != i) denom *= (z[i] - z[j]);
            }
            const complex step = horner(c, z[i]) / denom;
            z[i] -= step;
            change = std::max(change, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (change < 1e-15) break;
    }
    for (auto& zi : z) {
        for (int it = 0; it < 3; ++it) {
            const complex d = horner_derivative(c, zi);
            if (std::abs(d) == 0.0) break;
            zi -= horner(c, zi) / d;
        }
    }
    return z;
}

}  // namespace

double drude_cubic(double gamma, double omega0, double omega_cut, double Omega) noexcept {
    const double w02 = omega0 * omega0;
    return ((Omega - omega_cut) * Omega + (w02 + gamma * omega_cut)) * Omega - w02 * omega_cut;
}

DrudePoles invert_drude(double gamma, double omega0, double omega_cut) {
    if (!(gamma > 0.0) || !(omega0 > 0.0) || !(omega_cut > 0.0) || !std::isfinite(gamma) ||
        !std::isfinite(omega0) || !std::isfinite(omega_cut)) {
        throw InvalidParameter("invert_drude: gamma, omega0 and omega_cut must be positive");
    }
    const GammaCubic g{gamma, omega0, omega_cut};

    // g(0) = gamma w^2 > 0, g(w) = -w omega0^2 < 0.  In the over-damped regime all three
    // roots lie in (0, w); they are the same set {Omega, z+, z-}, so take the smallest
    // Gamma (largest Omega), the branch that tends to Omega -> omega_cut as gamma -> 0.
    std::vector<double> edges{0.0};
    const double disc = 16.0 * omega_cut * omega_cut -
                        12.0 * (omega_cut * omega_cut + omega0 * omega0 + gamma * omega_cut);
    if (disc > 0.0) {
        const double r = std::sqrt(disc);
        for (double cp : {(4.0 * omega_cut - r) / 6.0, (4.0 * omega_cut + r) / 6.0}) {
            if (cp > 0.0 && cp < omega_cut) edges.push_back(cp);
        }
    }
    edges.push_back(omega_cut);

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        const double glo = g(lo);
        const double ghi = g(hi);
        const bool root_at_lo = glo == 0.0 && lo > 0.0;
        if (root_at_lo || (glo > 0.0) != (ghi > 0.0) || ghi == 0.0) {
            const double Gamma = root_at_lo ? lo
                                 : ghi == 0.0 ? hi
                                              : bisect_then_newton(g, lo, hi);
            DrudePoles p;
            p.Gamma = Gamma;
            p.Omega = omega_cut - Gamma;
            if (!(p.Omega > 0.0) || !(Gamma > 0.0)) break;
            const double Omega0_sq = omega0 * omega0 * omega_cut / p.Omega;
            p.Omega0 = std::sqrt(Omega0_sq);
            const double half = 0.5 * Gamma;
            const double d = half * half - Omega0_sq;
            if (d < 0.0) {
                const double im = std::sqrt(-d);
                p.z_plus = {half, im};
                p.z_minus = {half, -im};
            } else {
                const double zp = half + std::sqrt(d);
                p.z_plus = {zp, 0.0};
                p.z_minus = {Omega0_sq / zp, 0.0};
            }
            return p;
        }
    }
    throw NoRealRootError("invert_drude: no sign change of the Drude cubic on (0, omega_cut)");
}

DrudePoles invert_drude(const SystemSpec& sys, const BathSpec& bath) {
    if (!bath.is_drude()) {
        throw InvalidParameter("invert_drude: pole parameters exist only for a Drude bath");
    }
    return invert_drude(bath.gamma, sys.omega0, bath.omega_cut);
}

DrudeParameters forward_map(const DrudePoles& p) noexcept {
    const double s = p.Omega + p.Gamma;
    const double O02 = p.Omega0 * p.Omega0;
    return {p.Gamma * (p.Omega * s + O02) / (s * s), std::sqrt(O02 * p.Omega / s), s};
}

MagnetoPoles magneto_poles(const DrudePoles& poles, double omega_c) {
    if (!(omega_c >= 0.0)) throw InvalidParameter("magneto_poles: omega_c must be >= 0");
    const double G = poles.Gamma;
    MagnetoPoles m;
    m.a = 0.25 * omega_c * omega_c + (poles.Omega0 * poles.Omega0 - 0.25 * G * G);
    const double q = 0.5 * G * omega_c;
    m.b = std::hypot(m.a, q);
    // b - a and b + a without cancellation: (b - a)(b + a) = q^2.
    double b_minus_a, b_plus_a;
    if (m.a >= 0.0) {
        b_plus_a = m.b + m.a;
        b_minus_a = b_plus_a > 0.0 ? q * q / b_plus_a : 0.0;
    } else {
        b_minus_a = m.b - m.a;
        b_plus_a = b_minus_a > 0.0 ? q * q / b_minus_a : 0.0;
    }
    const double re = std::sqrt(0.5 * b_minus_a);
    const double im = std::sqrt(0.5 * b_plus_a);
    m.Omega1 = {0.5 * G + re, -(0.5 * omega_c + im)};
    m.Omega2 = {0.5 * G - re, -(0.5 * omega_c - im)};
    return m;
}

std::array<complex, 6> xy_response_roots(const SystemSpec& sys, const BathSpec& bath) {
    if (!bath.is_drude()) {
        throw InvalidParameter("xy_response_roots: requires a Drude bath");
    }
    const double w = bath.omega_cut;
    const double wc = sys.omega_c;
    const double w02 = sys.omega0 * sys.omega0;
    const std::array<complex, 3> coeffs{complex{w, wc}, complex{w02 + bath.gamma * w, wc * w},
                                        complex{w02 * w, 0.0}};
    const auto s = cubic_roots(coeffs);
    std::array<complex, 6> out;
    for (int i = 0; i < 3; ++i) {
        out[i] = -s[i];
        out[i + 3] = std::conj(-s[i]);
    }
    return out;
}

}  // namespace dqo
