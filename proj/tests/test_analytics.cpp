#include <doctest.h>

#include <cmath>

#include "misim/analytics.hpp"
#include "misim/rng.hpp"
#include "oracles.hpp"

using namespace misim;

namespace {

ChannelParams example_params() {
    // h1^2 = 0.3981, sigma^2 = 0.1: the 4 dB SIR / 10 dB SNR working point.
    return ChannelParams(std::sqrt(0.3981), std::sqrt(0.1));
}

}  // namespace

TEST_SUITE_BEGIN("analytics");

TEST_CASE("q_function basics") {
    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-13));
    CHECK(q_function(1.0) == doctest::Approx(oracles::gauss_tail(1.0)).epsilon(1e-13));
}

TEST_CASE("q_function matches the density-integration oracle to 1e-12 relative") {
    for (int i = -32; i <= 32; ++i) {
        const double x = i / 4.0;
        const double ref = oracles::gauss_tail(x);
        CHECK(std::abs(q_function(x) - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("q_function reflection and monotonicity") {
    for (int i = -800; i <= 800; ++i) {
        const double x = i / 100.0;
        CHECK(std::abs(q_function(x) + q_function(-x) - 1.0) <= 1e-12);
    }
    // strict decrease; the 0.25 step keeps adjacent values more than one
    // ulp apart even where Q is within 1e-15 of 0 or 1
    double prev = 2.0;
    for (int i = -32; i <= 32; ++i) {
        const double x = i / 4.0;
        CHECK(q_function(x) < prev);
        prev = q_function(x);
    }
}

TEST_CASE("effective interference power") {
    CHECK(effective_interference_power(ChannelParams(0.5, 0.0), Misalignment(0.0)) == 0.25);
    // minimum at delta = 0.5 is h1^2 / 2; direct substitution at 0.25
    const ChannelParams p(0.8, 0.0);
    CHECK(effective_interference_power(p, Misalignment(0.5)) == doctest::Approx(0.32));
    CHECK(effective_interference_power(p, Misalignment(0.25)) ==
          doctest::Approx(0.64 * 0.625));
}

TEST_CASE("effective interference power bound and symmetry") {
    Rng rng(RngSeed{7});
    for (int t = 0; t < 50; ++t) {
        const double h1 = 0.05 + 0.9 * rng.uniform01();
        const ChannelParams p(h1, 0.0);
        CHECK(effective_interference_power(p, Misalignment(0.0)) == h1 * h1);
        for (int i = 1; i < 40; ++i) {
            const double d = i / 40.0;
            const double v = effective_interference_power(p, Misalignment(d));
            CHECK(v < h1 * h1);
            CHECK(v >= h1 * h1 / 2.0);
            CHECK(v == doctest::Approx(effective_interference_power(p, Misalignment(1.0 - d)))
                           .epsilon(1e-13));
        }
    }
}

TEST_CASE("interference support") {
    const ChannelParams p(0.6, 0.1);
    const auto s = InterferenceSupport::from(p, Misalignment(0.25));
    CHECK(s.probabilities[0] + s.probabilities[1] + s.probabilities[2] + s.probabilities[3] ==
          1.0);
    CHECK(s.points[0] == 0.6);
    CHECK(s.points[1] == -0.6);
    CHECK(s.points[2] == doctest::Approx(0.3));
    // degenerate at delta = 0: values coincide pairwise, so each of +-h1
    // carries probability 1/2
    const auto s0 = InterferenceSupport::from(p, Misalignment(0.0));
    CHECK(s0.points[2] == s0.points[0]);
    CHECK(s0.points[3] == s0.points[1]);

    Rng rng(RngSeed{11});
    for (int t = 0; t < 100; ++t) {
        const ChannelParams q(0.999 * rng.uniform01(), 0.0);
        const Misalignment d(rng.uniform01());
        const auto sup = InterferenceSupport::from(q, d);
        CHECK(std::abs(sup.second_moment() - effective_interference_power(q, d)) <= 1e-15);
    }
}

TEST_CASE("conventional sinr and esinr") {
    CHECK(conventional_sinr(ChannelParams(0.0, 1.0)) == 1.0);
    const ChannelParams p = example_params();
    CHECK(conventional_sinr(p) == doctest::Approx(1.0 / (0.3981 + 0.1)).epsilon(1e-12));
    CHECK(conventional_sinr(p) == doctest::Approx(2.007628990162618).epsilon(1e-12));
    CHECK(esinr(p, Misalignment(0.5)) ==
          doctest::Approx(1.0 / (0.3981 / 2.0 + 0.1)).epsilon(1e-12));
    CHECK(esinr(p, Misalignment(0.5)) == doctest::Approx(3.343922420999833).epsilon(1e-12));
    CHECK_THROWS_AS(conventional_sinr(ChannelParams(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(esinr(ChannelParams(0.0, 0.0), Misalignment(0.3)), std::domain_error);

    Rng rng(RngSeed{13});
    for (int t = 0; t < 100; ++t) {
        const ChannelParams q(0.98 * rng.uniform01(), 0.02 + rng.uniform01());
        CHECK(esinr(q, Misalignment(0.0)) == conventional_sinr(q));
        CHECK(esinr(q, Misalignment(0.3)) ==
              doctest::Approx(esinr(q, Misalignment(0.7))).epsilon(1e-13));
    }
}

TEST_CASE("first-symbol BER") {
    const double sigma = 0.3162;
    CHECK(ber_first_symbol(ChannelParams(0.0, sigma), Misalignment(0.3)) ==
          doctest::Approx(q_function(1.0 / sigma)).epsilon(1e-13));
    // vanishing overlap: h1 (1 - delta) -> 0 as delta -> 1
    CHECK(ber_first_symbol(ChannelParams(0.631, sigma), Misalignment(1.0 - 1e-12)) ==
          doctest::Approx(q_function(1.0 / sigma)).epsilon(1e-9));
    const double expected =
        0.5 * (oracles::gauss_tail((1.0 - 0.631) / sigma) +
               oracles::gauss_tail((1.0 + 0.631) / sigma));
    CHECK(ber_first_symbol(ChannelParams(0.631, sigma), Misalignment(0.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(ber_first_symbol(ChannelParams(0.631, sigma), Misalignment(0.0)) ==
          doctest::Approx(0.06080437893637897).epsilon(1e-12));
    CHECK_THROWS_AS(ber_first_symbol(ChannelParams(0.631, 0.0), Misalignment(0.0)),
                    std::domain_error);
}

TEST_CASE("steady-state BER") {
    const double sigma = 0.3162;
    const ChannelParams p(0.631, sigma);
    CHECK(ber_steady_state(p, Misalignment(0.0)) ==
          doctest::Approx(0.06080437893637897).epsilon(1e-12));
    const double expected_half =
        0.25 * (oracles::gauss_tail((1.0 - 0.631) / sigma) +
                oracles::gauss_tail((1.0 + 0.631) / sigma) + 2.0 * oracles::gauss_tail(1.0 / sigma));
    CHECK(ber_steady_state(p, Misalignment(0.5)) ==
          doctest::Approx(expected_half).epsilon(1e-12));
    CHECK(ber_steady_state(p, Misalignment(0.5)) ==
          doctest::Approx(0.03079316698126302).epsilon(1e-12));
    CHECK(ber_steady_state(ChannelParams(0.0, sigma), Misalignment(0.37)) ==
          doctest::Approx(q_function(1.0 / sigma)).epsilon(1e-13));
    CHECK_THROWS_AS(ber_steady_state(ChannelParams(0.631, 0.0), Misalignment(0.5)),
                    std::domain_error);
}

TEST_CASE("steady-state BER symmetry and monotonicity on [0, 0.5]") {
    const ChannelParams p(sir_db_to_h1(4.0), snr_db_to_sigma(10.0));
    double prev = 1.0;
    for (int i = 0; i <= 200; ++i) {
        const double d = i / 400.0;
        const double b = ber_steady_state(p, Misalignment(d));
        CHECK(b <= prev + 1e-15);
        prev = b;
        if (i > 0)
            CHECK(b == doctest::Approx(ber_steady_state(p, Misalignment(1.0 - d))).epsilon(1e-13));
    }
}

TEST_CASE("block BER") {
    const ChannelParams p(0.631, 0.3162);
    CHECK(ber_block(p, Misalignment(0.3), 1) == ber_first_symbol(p, Misalignment(0.3)));
    CHECK(std::abs(ber_block(p, Misalignment(0.2), 1000) -
                   ber_steady_state(p, Misalignment(0.2))) <= 1.0 / 1000.0);
    // N = 2 at delta = 0.5 combines the two per-symbol oracles equally
    const double first = ber_first_symbol(p, Misalignment(0.5));
    const double steady = ber_steady_state(p, Misalignment(0.5));
    CHECK(ber_block(p, Misalignment(0.5), 2) == doctest::Approx(0.5 * (first + steady)));
    CHECK(ber_block(p, Misalignment(0.5), 2) ==
          doctest::Approx(0.019201226856274664).epsilon(1e-12));
    CHECK_THROWS_AS(ber_block(p, Misalignment(0.5), 0), std::invalid_argument);
}

TEST_CASE("averaged eSINR closed form") {
    const ChannelParams p = example_params();
    CHECK(avg_esinr_closed(p) == doctest::Approx(2.8048684279412774).epsilon(1e-12));
    const double quad = integrate_unit_interval(
        [&](double d) {
            return 1.0 / (p.interference_power() * (2.0 * d * d - 2.0 * d + 1.0) +
                          p.noise_power());
        },
        1e-12);
    CHECK(std::abs(avg_esinr_closed(p) - quad) <= 1e-10);
    // h1 -> 0 limit is the interference-free SINR
    CHECK(avg_esinr_closed(ChannelParams(0.0, 0.5)) == doctest::Approx(4.0));
    CHECK(avg_esinr_closed(ChannelParams(1e-7, 0.5)) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK_THROWS_AS(avg_esinr_closed(ChannelParams(0.0, 0.0)), std::domain_error);

    Rng rng(RngSeed{17});
    for (int t = 0; t < 100; ++t) {
        const ChannelParams q(0.02 + 0.96 * rng.uniform01(), 0.05 + 1.2 * rng.uniform01());
        const double avg = avg_esinr_closed(q);
        CHECK(avg > esinr(q, Misalignment(0.0)));
        CHECK(avg < esinr(q, Misalignment(0.5)));
    }
}

TEST_CASE("averaged BER") {
    const double sigma = 0.3162;
    CHECK(avg_ber(ChannelParams(0.0, sigma)) ==
          doctest::Approx(q_function(1.0 / sigma)).epsilon(1e-12));
    const ChannelParams p(0.631, sigma);
    const double avg = avg_ber(p);
    CHECK(avg >= ber_steady_state(p, Misalignment(0.5)));
    CHECK(avg <= ber_steady_state(p, Misalignment(0.0)));
    // independent algebraic route through the integrated Gaussian tail
    CHECK(avg == doctest::Approx(oracles::avg_ber_algebraic(0.631, sigma)).epsilon(1e-11));
    CHECK(avg == doctest::Approx(0.037919949461014554).epsilon(1e-11));
    CHECK_THROWS_AS(avg_ber(ChannelParams(0.631, 0.0)), std::domain_error);
}

TEST_CASE("unit-interval quadrature") {
    CHECK(integrate_unit_interval([](double) { return 1.0; }, 1e-12) == 1.0);
    CHECK(integrate_unit_interval([](double d) { return 2.0 * d * d - 2.0 * d + 1.0; }, 1e-12) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK_THROWS_AS(integrate_unit_interval([](double) { return 1.0; }, 0.0),
                    std::invalid_argument);
    // a step keeps the Simpson mismatch proportional to the leaf width at
    // every depth, so exhaustion must be reported, never truncated
    CHECK_THROWS_AS(integrate_unit_interval(
                        [](double d) { return d < 1.0 / 3.0 ? 0.0 : 1.0; }, 1e-12),
                    std::runtime_error);
}

TEST_SUITE_END();
