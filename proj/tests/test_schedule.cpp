#include "qmem/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace qmem;

namespace {

// Exact maximizer of the truncated norm for Cm = 100, computed offline
// with 50-digit arithmetic; the companion values below are frozen from
// the same run.
constexpr double kTmax100 = 0.019741546560257098;

}  // namespace

TEST_CASE("peak amplitude limits") {
    // T = 0 collapses to plain exponential decay with Fm = sqrt(2 Cm)
    for (double cm : {0.5, 3.0, 100.0}) {
        CHECK(peak_amplitude(cm, 0.0) ==
              doctest::Approx(std::sqrt(2.0 * cm)).epsilon(1e-12));
    }
    // Cm T >> 1: Fm -> sqrt(Cm (Cm+2)/(Cm+1)) e^{-T}
    const double cm = 100.0;
    const double t = 1.0;
    const double asym =
        std::sqrt(cm * (cm + 2.0) / (cm + 1.0)) * std::exp(-t);
    CHECK(peak_amplitude(cm, t) == doctest::Approx(asym).epsilon(1e-12));
}

TEST_CASE("frozen schedule constants at Cm=100") {
    const auto s = build_emission(100.0, kTmax100);
    CHECK(s.A == doctest::Approx(1.1111552017230621).epsilon(1e-12));
    CHECK(s.Fm == doctest::Approx(9.8966949866085439).epsilon(1e-12));
    CHECK(C_of_t(s, 0.0) ==
          doctest::Approx(0.90797551881882511).epsilon(1e-11));
}

TEST_CASE("cooperativity profile boundary behaviour") {
    const auto s = build_emission(100.0, 0.02);
    CHECK(C_of_t(s, s.T) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(C_of_t(s, s.T + 0.5) == 100.0);
    CHECK(C_of_t(s, 10.0) == 100.0);
    // continuous at T
    CHECK(C_of_t(s, s.T - 1e-12) == doctest::Approx(100.0).epsilon(1e-9));
    // strictly increasing on [0, T]
    double prev = C_of_t(s, 0.0);
    for (int i = 1; i <= 500; ++i) {
        const double cur = C_of_t(s, s.T * i / 500.0);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(build_emission(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_emission(10.0, -0.1), std::invalid_argument);
}

TEST_CASE("bernoulli denominator stays positive over the window") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> cms(0.5, 400.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double cm = cms(rng);
        const double t_peak = 2.0 * frac(rng) / cm;
        const auto s = build_emission(cm, t_peak);
        const double t = s.T * frac(rng);
        const double d =
            s.A * (cm + 2.0) * std::exp(-2.0 * (cm + 2.0) * t) - 1.0;
        CHECK(d > 0.0);
    }
}

TEST_CASE("profile solves the defining pulse-shape equation") {
    // Substituting C(t) back into the shape condition
    //   sqrt(2 C(t)) exp(-int_0^t (C+1)) = Fm e^{(Cm+1)(t-T)}
    // must leave no residual anywhere on the rising branch.
    std::mt19937 rng(42);
    for (double cm : {10.0, 100.0}) {
        const double t_peak = cm == 100.0 ? 0.02 : 0.15;
        const auto s = build_emission(cm, t_peak);
        std::uniform_real_distribution<double> ts(0.0, s.T);
        for (int i = 0; i < 50; ++i) {
            const double t = ts(rng);
            const double lhs = std::sqrt(2.0 * C_of_t(s, t)) *
                               std::exp(-accumulated_decay(s, t));
            const double rhs =
                s.Fm * std::exp((cm + 1.0) * (t - s.T));
            CHECK(lhs / rhs == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("defining-equation residual on a dense grid") {
    for (double cm : {10.0, 100.0, 1000.0}) {
        const auto s = build_emission(cm, optimal_window(cm).T_max);
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t = s.T * i / 1000.0;
            const double lhs = std::sqrt(2.0 * C_of_t(s, t)) *
                               std::exp(-accumulated_decay(s, t));
            const double rhs = s.Fm * std::exp((cm + 1.0) * (t - s.T));
            worst = std::max(worst, std::abs(lhs / rhs - 1.0));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("accumulated decay matches quadrature of C + 1") {
    const auto s = build_emission(100.0, 0.02);
    for (double t : {0.001, 0.005, 0.013, 0.02, 0.05}) {
        const double by_quad = oracle::romberg(
            [&](double tau) { return C_of_t(s, tau) + 1.0; }, 0.0,
            std::min(t, s.T), 1e-13);
        const double tail =
            t > s.T ? (100.0 + 1.0) * (t - s.T) : 0.0;
        CHECK(accumulated_decay(s, t) ==
              doctest::Approx(by_quad + tail).epsilon(1e-10));
    }
}

TEST_CASE("profile agrees with re-integrating the shape ODE") {
    // The shape condition differentiates to C' = 2C (C + Cm + 2).
    // Integrate it backwards from C(T) = Cm with a test-side RK4 and
    // compare the starting value.
    const double cm = 100.0;
    const auto s = build_emission(cm, kTmax100);
    const double c0 = oracle::rk4_scalar(
        [cm](double, double c) { return 2.0 * c * (c + cm + 2.0); }, s.T, 0.0,
        cm, 50000);
    CHECK(C_of_t(s, 0.0) == doctest::Approx(c0).epsilon(1e-7));
}

TEST_CASE("norm closed form equals quadrature of the envelope") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> cms(3.0, 300.0);
    std::uniform_real_distribution<double> frac(0.1, 4.0);
    for (int i = 0; i < 20; ++i) {
        const double cm = cms(rng);
        const double t_peak = frac(rng) * std::log(cm) / cm;
        const auto s = build_emission(cm, t_peak);
        const auto pulse = target_pulse(s);
        auto sq = [&](double t) {
            const double f = envelope(pulse, t);
            return f * f;
        };
        const double k = cm + 1.0;
        // split at the kink, carry the tail out 40 decay times
        const double full = oracle::romberg(sq, 0.0, t_peak, 1e-14) +
                            oracle::romberg(sq, t_peak, t_peak + 40.0 / k, 1e-14);
        const double trunc = oracle::romberg(sq, 0.0, t_peak, 1e-14) +
                             oracle::romberg(sq, t_peak, 2.0 * t_peak, 1e-14);
        CHECK(norm(cm, t_peak) == doctest::Approx(full).epsilon(1e-10));
        CHECK(norm_truncated(cm, t_peak) ==
              doctest::Approx(trunc).epsilon(1e-10));
    }
}

TEST_CASE("norm special values") {
    // T = 0 gives Cm/(Cm+1)
    for (double cm : {1.0, 10.0, 100.0}) {
        CHECK(norm(cm, 0.0) ==
              doctest::Approx(cm / (cm + 1.0)).epsilon(1e-12));
        CHECK(norm_truncated(cm, 0.0) == 0.0);
    }
    // frozen at the Cm = 100 optimum
    CHECK(norm(100.0, kTmax100) ==
          doctest::Approx(0.96075837761528576).epsilon(1e-12));
    CHECK(norm_truncated(100.0, kTmax100) ==
          doctest::Approx(0.9517685209933172).epsilon(1e-12));
    // large-Cm form at Cm = 100, T = 5
    const double asym = (1.0 - 1e-4) * std::exp(-10.0);
    CHECK(norm(100.0, 5.0) == doctest::Approx(asym).epsilon(1e-3));
}

TEST_CASE("truncated norm stays below the full norm") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> cms(0.5, 500.0);
    std::uniform_real_distribution<double> ts(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double cm = cms(rng);
        const double t = ts(rng);
        const double n = norm(cm, t);
        const double nt = norm_truncated(cm, t);
        CHECK(nt <= n);
        // ratio identity from the two closed forms
        const double x = std::exp(-2.0 * (cm + 1.0) * t);
        CHECK(nt == doctest::Approx(n * 2.0 * (1.0 - x) / (2.0 - x))
                        .epsilon(1e-12));
    }
    // the truncated fraction approaches one for long windows
    CHECK(norm_truncated(100.0, 0.5) / norm(100.0, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimal window") {
    const auto w = optimal_window(100.0);
    CHECK(w.T_max == doctest::Approx(kTmax100).epsilon(1e-7));
    CHECK(w.N_max == doctest::Approx(0.9517685209933172).epsilon(1e-10));
    CHECK(w.asym_valid);
    CHECK(w.T_max_asym == doctest::Approx(std::log(50.0) / 200.0).epsilon(1e-14));
    CHECK(w.N_max_asym ==
          doctest::Approx(1.0 - (std::log(50.0) + 1.0) / 100.0).epsilon(1e-14));
    // the asymptotic optimum is close but not exact
    CHECK(std::abs(w.N_max - w.N_max_asym) < 0.005);

    // interior maximum: finite-difference derivative changes sign
    const double h = 1e-6;
    const double up =
        norm_truncated(100.0, w.T_max - 10 * h + h) - norm_truncated(100.0, w.T_max - 10 * h);
    const double down =
        norm_truncated(100.0, w.T_max + 10 * h + h) - norm_truncated(100.0, w.T_max + 10 * h);
    CHECK(up > 0.0);
    CHECK(down < 0.0);

    // exact optimum still computed when the asymptotics are meaningless
    const auto small = optimal_window(1.5);
    CHECK_FALSE(small.asym_valid);
    CHECK(small.T_max > 0.0);
    CHECK(small.N_max > 0.0);
    CHECK(small.N_max < 1.0);
}

TEST_CASE("asymptotic window converges with Cm") {
    double prev_rel = 1.0;
    for (double cm : {100.0, 1000.0, 10000.0}) {
        const auto w = optimal_window(cm);
        const double rel = std::abs(w.T_max - w.T_max_asym) / w.T_max;
        CHECK(rel < prev_rel);
        prev_rel = rel;
    }
}

TEST_CASE("finesse feasibility") {
    // optimal window: condition reduces to finesse^2 > Cm
    const auto ok = finesse_feasibility(100.0, kTmax100, 1000.0);
    CHECK(ok.general_ok);
    CHECK(ok.reduced_ok);
    CHECK(ok.exact_ok);
    CHECK(ok.C_start >= ok.C_min);

    // long delay: required finesse^2 = 2 e^{40} dwarfs 1e6
    const auto bad = finesse_feasibility(100.0, 0.2, 1000.0);
    CHECK_FALSE(bad.general_ok);
    CHECK_FALSE(bad.exact_ok);
    CHECK(bad.finesse_sq_required > 1e17);

    // unbounded finesse always passes
    const auto huge = finesse_feasibility(100.0, 0.2, 1e12);
    CHECK(huge.general_ok);
    CHECK(huge.exact_ok);
}

TEST_CASE("time reversal") {
    const auto em = build_emission(100.0, 0.02);
    const auto st = time_reverse(em);
    CHECK(st.direction == Direction::storage);
    CHECK(C_of_t(st, -em.T) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(C_of_t(st, 0.0) == C_of_t(em, 0.0));
    // mirror on random samples
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ts(0.0, 2.0 * em.T);
    for (int i = 0; i < 100; ++i) {
        const double t = ts(rng);
        CHECK(C_of_t(st, -t) == C_of_t(em, t));
    }
    // double reversal is the identity
    const auto back = time_reverse(st);
    CHECK(back.direction == Direction::emission);
    for (int i = 0; i < 20; ++i) {
        const double t = ts(rng);
        CHECK(C_of_t(back, t) == C_of_t(em, t));
    }
}

TEST_CASE("storage input pulse carries unit norm") {
    const auto s = build_emission(100.0, 0.02);
    const auto input = storage_input(s);
    CHECK(input.normalized);
    auto sq = [&](double t) {
        const double f = envelope(input, t);
        return f * f;
    };
    const double k = s.Cm + 1.0;
    const double total =
        oracle::romberg(sq, -s.T - 40.0 / k, -s.T, 1e-14) +
        oracle::romberg(sq, -s.T, 0.0, 1e-14);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    // peak sits at -T
    CHECK(envelope(input, -s.T) == doctest::Approx(input.Fm));
    CHECK(envelope(input, -s.T + 0.001) < input.Fm);
}
