#include <doctest.h>

#include <cmath>

#include "dqo/errors.hpp"
#include "dqo/matsubara.hpp"

using namespace dqo;

namespace {

const SystemSpec unit{1.0, 1.0, 0.0};
const BathSpec table_bath = BathSpec::drude(1.0, 10.0);

TruncationConfig terms(std::size_t n, bool parallel = true) {
    TruncationConfig t;
    t.terms = n;
    t.parallel = parallel;
    return t;
}

}  // namespace

TEST_CASE("weak-coupling energy") {
    CHECK(weak_coupling_energy(0.1) == doctest::Approx(1.000833194).epsilon(1e-9));
    CHECK(weak_coupling_energy(2.0) == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
    CHECK(weak_coupling_energy(2.0) == doctest::Approx(1.313035).epsilon(1e-6));
    CHECK(weak_coupling_energy(1e-9) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(weak_coupling_energy(200.0) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK_THROWS_AS(weak_coupling_energy(0.0), InvalidParameter);
}

TEST_CASE("Matsubara grid") {
    const auto st = ThermalState::from_alpha(unit, 0.5);
    const MatsubaraGrid g(st, 100);
    CHECK(g.size() == 100);
    CHECK(g.spacing() == doctest::Approx(2.0 * M_PI * 2.0));
    for (std::size_t n = 1; n < 100; ++n) {
        CHECK(g(n + 1) > g(n));
        CHECK(g(n) / static_cast<double>(n) == doctest::Approx(g.spacing()).epsilon(1e-15));
    }
}

TEST_CASE("reference table 1 mean and Gibbs energies") {
    const auto E05 = mean_energy_1d(unit, table_bath, ThermalState::from_alpha(unit, 0.5));
    const auto E75 = mean_energy_1d(unit, table_bath, ThermalState::from_alpha(unit, 7.5));
    CHECK(E05.terms_used == 10000);
    CHECK(std::abs(E05.beta_energy - 1.08702) < 2e-5);
    CHECK(std::abs(E75.beta_energy - 5.52459) < 2e-5);
    const auto G05 = gibbs_energy_1d(unit, table_bath, ThermalState::from_alpha(unit, 0.5));
    const auto G15 = gibbs_energy_1d(unit, table_bath, ThermalState::from_alpha(unit, 1.5));
    CHECK(std::abs(G05.beta_energy - 1.13288) < 2e-5);
    CHECK(std::abs(G15.beta_energy - 1.69976) < 2e-5);
}

TEST_CASE("reference table 1 internal energy") {
    const auto poles = invert_drude(unit, table_bath);
    const auto U05 = internal_energy_1d(unit, poles, ThermalState::from_alpha(unit, 0.5));
    CHECK(std::abs(U05.beta_energy - 1.13288) < 2e-5);
    // The reference U digits drift from the series above alpha ~ 2 (3.8e-5 at alpha = 3.5);
    // the acceptance suite reports that against 2e-5.
    const auto U35 = internal_energy_1d(unit, poles, ThermalState::from_alpha(unit, 3.5));
    CHECK(std::abs(U35.beta_energy - 3.18759) < 5e-5);
}

TEST_CASE("U and Egibbs coincide term by term in 1D") {
    for (double g : {0.1, 1.0, 3.0}) {
        for (double cut : {2.0, 10.0, 80.0}) {
            const auto bath = BathSpec::drude(g, cut);
            const auto poles = invert_drude(unit, bath);
            const auto st = ThermalState::from_alpha(unit, 2.0);
            const MatsubaraGrid nu(st, 50);
            for (std::size_t n = 1; n <= 50; n += 7) {
                const complex u = internal_energy_term_1d(poles, cut, nu(n));
                CHECK(u.real() == doctest::Approx(gibbs_energy_term_1d(unit, bath, nu(n))).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("energy ordering in 1D") {
    for (double g : {0.2, 1.0, 2.5}) {
        for (double cut : {3.0, 10.0, 50.0}) {
            for (double a : {0.3, 1.5, 5.0}) {
                const auto bath = BathSpec::drude(g, cut);
                const auto st = ThermalState::from_alpha(unit, a);
                const double E = mean_energy_1d(unit, bath, st).beta_energy;
                const double U = internal_energy_1d(unit, invert_drude(unit, bath), st).beta_energy;
                const double G = gibbs_energy_1d(unit, bath, st).beta_energy;
                CHECK(U > E);
                CHECK(G >= U - 1e-12 * U);
                CHECK(std::abs(G - U) < 1e-10 * U);
            }
        }
    }
}

TEST_CASE("energy ordering in 3D with a field") {
    for (double g : {0.5, 1.0, 2.0}) {
        for (double wc : {0.5, 2.5, 5.0}) {
            for (double a : {0.5, 2.0, 5.0}) {
                const SystemSpec sys{1.0, 1.0, wc};
                const auto bath = BathSpec::drude(g, 10.0);
                const auto st = ThermalState::from_alpha(sys, a);
                const auto poles = invert_drude(sys, bath);
                const double E = mean_energy_3d(sys, bath, st).beta_energy;
                const double U = internal_energy_3d(sys, poles, magneto_poles(poles, wc), st).beta_energy;
                const double G = gibbs_energy_3d(sys, bath, st).beta_energy;
                CHECK(U > E);
                CHECK(G > U);
            }
        }
    }
}

TEST_CASE("classical limit") {
    const double a = 1e-4;
    const auto st = ThermalState::from_alpha(unit, a);
    const auto poles = invert_drude(unit, table_bath);
    CHECK(std::abs(mean_energy_1d(unit, table_bath, st).beta_energy - 1.0) < 1e-3);
    CHECK(std::abs(internal_energy_1d(unit, poles, st).beta_energy - 1.0) < 1e-3);
    CHECK(std::abs(gibbs_energy_1d(unit, table_bath, st).beta_energy - 1.0) < 1e-3);
    for (double wc : {0.0, 2.5, 5.0}) {
        const SystemSpec sys{1.0, 1.0, wc};
        const auto st3 = ThermalState::from_alpha(sys, a);
        CHECK(std::abs(mean_energy_3d(sys, table_bath, st3).beta_energy - 3.0) < 1e-3);
        CHECK(std::abs(internal_energy_3d(sys, poles, magneto_poles(poles, wc), st3).beta_energy - 3.0) < 3e-3);
        CHECK(std::abs(gibbs_energy_3d(sys, table_bath, st3).beta_energy - 3.0) < 3e-3);
    }
}

TEST_CASE("weak coupling limit of all six functions") {
    const auto bath = BathSpec::drude(1e-6, 10.0);
    const auto poles = invert_drude(unit, bath);
    const auto t = terms(100000);
    for (double a : {0.5, 2.0, 5.0}) {
        const double ref = weak_coupling_energy(a);
        const auto st = ThermalState::from_alpha(unit, a);
        CHECK(std::abs(mean_energy_1d(unit, bath, st, t).extrapolated - ref) < 1e-4);
        CHECK(std::abs(internal_energy_1d(unit, poles, st, t).extrapolated - ref) < 1e-4);
        CHECK(std::abs(gibbs_energy_1d(unit, bath, st, t).extrapolated - ref) < 1e-4);
        CHECK(std::abs(mean_energy_3d(unit, bath, st, t).extrapolated - 3 * ref) < 1e-4);
        CHECK(std::abs(internal_energy_3d(unit, poles, magneto_poles(poles, 0.0), st, t).extrapolated - 3 * ref) < 1e-4);
        CHECK(std::abs(gibbs_energy_3d(unit, bath, st, t).extrapolated - 3 * ref) < 1e-4);
    }
}

TEST_CASE("field-free 3D reduces to three copies of 1D") {
    const auto st = ThermalState::from_alpha(unit, 1.5);
    const auto poles = invert_drude(unit, table_bath);
    CHECK(mean_energy_3d(unit, table_bath, st).beta_energy ==
          doctest::Approx(3 * mean_energy_1d(unit, table_bath, st).beta_energy).epsilon(1e-13));
    CHECK(internal_energy_3d(unit, poles, magneto_poles(poles, 0.0), st).beta_energy ==
          doctest::Approx(3 * internal_energy_1d(unit, poles, st).beta_energy).epsilon(1e-13));
    CHECK(gibbs_energy_3d(unit, table_bath, st).beta_energy ==
          doctest::Approx(3 * gibbs_energy_1d(unit, table_bath, st).beta_energy).epsilon(1e-13));
    CHECK(gibbs_energy_xy(unit, table_bath, st).beta_energy ==
          doctest::Approx(2 * gibbs_energy_1d(unit, table_bath, st).beta_energy).epsilon(1e-13));
    CHECK(internal_energy_3d_exact(unit, table_bath, st).beta_energy ==
          doctest::Approx(3 * internal_energy_1d(unit, poles, st).beta_energy).epsilon(1e-11));
}

TEST_CASE("exact-root U equals the Gibbs energy in a field") {
    for (double wc : {0.5, 2.5, 5.0}) {
        for (double a : {0.1, 1.5, 7.5}) {
            const SystemSpec sys{1.0, 1.0, wc};
            const auto st = ThermalState::from_alpha(sys, a);
            const double U = internal_energy_3d_exact(sys, table_bath, st).beta_energy;
            const double G = gibbs_energy_3d(sys, table_bath, st).beta_energy;
            CHECK(U == doctest::Approx(G).epsilon(1e-11));
        }
    }
}

TEST_CASE("Ohmic series diverge") {
    const auto o = BathSpec::ohmic(1.0);
    const auto st = ThermalState::from_alpha(unit, 0.5);
    CHECK_THROWS_AS(mean_energy_1d(unit, o, st), DivergenceError);
    CHECK_THROWS_AS(gibbs_energy_1d(unit, o, st), DivergenceError);
    CHECK_THROWS_AS(mean_energy_3d(unit, o, st), DivergenceError);
    CHECK_THROWS_AS(gibbs_energy_3d(unit, o, st), DivergenceError);
    // Constant friction: Gibbs and mean-energy terms coincide.
    for (double nu : {0.1, 3.0, 500.0}) {
        CHECK(gibbs_energy_term_1d(unit, o, nu) == mean_energy_term_1d(unit, o, nu));
        // and decay like gamma / nu
        if (nu > 1.0) CHECK(nu * mean_energy_term_1d(unit, o, nu) > 0.5);
    }
}

TEST_CASE("partial sums are monotone and the tail estimate bounds the truncation") {
    const auto st = ThermalState::from_alpha(unit, 2.0);
    double prev = 1.0;
    for (std::size_t n = 1; n <= 60; ++n) {
        const double v = mean_energy_1d(unit, table_bath, st, terms(n, false)).beta_energy;
        CHECK(v >= prev);
        prev = v;
    }
    const auto limit = mean_energy_1d(unit, table_bath, st, terms(4000000)).extrapolated;
    for (std::size_t n : {100ul, 1000ul, 10000ul}) {
        const auto r = mean_energy_1d(unit, table_bath, st, terms(n));
        CHECK(r.tail_estimate >= 0.0);
        CHECK(limit - r.beta_energy <= r.tail_estimate);
        CHECK(limit - r.beta_energy > 0.0);
        // Richardson removes most of the truncation error.
        CHECK(std::abs(r.extrapolated - limit) < 1e-2 * (limit - r.beta_energy));
        const auto g = gibbs_energy_1d(unit, table_bath, st, terms(n));
        CHECK(g.tail_estimate >= 0.0);
    }
    const auto poles = invert_drude(unit, table_bath);
    const auto ulim = internal_energy_1d(unit, poles, st, terms(4000000)).extrapolated;
    const auto u = internal_energy_1d(unit, poles, st, terms(10000));
    CHECK(u.tail_estimate >= 0.0);
    CHECK(std::abs(ulim - u.beta_energy) < 2.0 * u.tail_estimate);
    CHECK(std::abs(ulim - u.extrapolated) < 1e-8);
}

TEST_CASE("serial and parallel series agree") {
    const SystemSpec sys{1.0, 1.0, 2.5};
    const auto st = ThermalState::from_alpha(sys, 1.5);
    const auto s = gibbs_energy_3d(sys, table_bath, st, terms(50000, false));
    const auto p = gibbs_energy_3d(sys, table_bath, st, terms(50000, true));
    CHECK(s.beta_energy == doctest::Approx(p.beta_energy).epsilon(1e-14));
    const auto p2 = gibbs_energy_3d(sys, table_bath, st, terms(50000, true));
    CHECK(p.beta_energy == p2.beta_energy);
}

TEST_CASE("residue check catches a broken conjugate pair") {
    auto poles = invert_drude(unit, table_bath);
    poles.z_minus = -poles.z_minus;
    CHECK_THROWS_AS(internal_energy_1d(unit, poles, ThermalState::from_alpha(unit, 0.5)), ResidueError);
    auto ok = invert_drude(unit, table_bath);
    ok.z_minus = std::conj(ok.z_plus);
    CHECK_NOTHROW(internal_energy_1d(unit, ok, ThermalState::from_alpha(unit, 0.5)));
}

TEST_CASE("invalid truncation") {
    CHECK_THROWS_AS(mean_energy_1d(unit, table_bath, ThermalState::from_alpha(unit, 0.5), terms(0)),
                    InvalidParameter);
}
