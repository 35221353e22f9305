#include <doctest.h>

#include <cmath>
#include <limits>

#include "misim/core.hpp"

using namespace misim;

TEST_SUITE_BEGIN("core");

TEST_CASE("sir_db_to_h1 matches the high-precision logarithm oracle") {
    // 10^(-0.2) and 20*log10(2) evaluated with 40-digit arithmetic.
    CHECK(sir_db_to_h1(4.0) == doctest::Approx(0.6309573444801932).epsilon(1e-12));
    CHECK(sir_db_to_h1(20.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(sir_db_to_h1(6.0206) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(sir_db_to_h1(6.020599913279624) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sir_db_to_h1 rejects non-positive SIR") {
    CHECK_THROWS_AS(sir_db_to_h1(0.0), std::invalid_argument);
    CHECK_THROWS_AS(sir_db_to_h1(-3.0), std::invalid_argument);
    CHECK_THROWS_AS(sir_db_to_h1(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("snr_db_to_sigma") {
    CHECK(snr_db_to_sigma(10.0) == doctest::Approx(0.31622776601683794).epsilon(1e-12));
    CHECK(snr_db_to_sigma(0.0) == 1.0);
    CHECK(snr_db_to_sigma(20.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(snr_db_to_sigma(-6.020599913279624) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(snr_db_to_sigma(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("dB round trip over (0, 60]") {
    for (int i = 1; i <= 600; ++i) {
        const double x = i / 10.0;
        CHECK(h1_to_sir_db(sir_db_to_h1(x)) == doctest::Approx(x).epsilon(1e-12));
        CHECK(std::abs(h1_to_sir_db(sir_db_to_h1(x)) - x) <= 1e-10);
    }
    for (int i = 1; i <= 600; ++i) {
        const double x = i / 10.0;
        CHECK(sigma_to_snr_db(snr_db_to_sigma(x)) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("ChannelParams validation") {
    CHECK_NOTHROW(ChannelParams(0.0, 0.0));
    CHECK_NOTHROW(ChannelParams(0.999, 1.5));
    CHECK_THROWS_AS(ChannelParams(1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(1.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(-0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(0.5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(std::numeric_limits<double>::quiet_NaN(), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(0.5, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("Misalignment validation") {
    CHECK(Misalignment(0.0).value() == 0.0);
    CHECK(Misalignment(0.999999).value() == doctest::Approx(0.999999));
    CHECK_THROWS_AS(Misalignment(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Misalignment(-0.001), std::invalid_argument);
    CHECK_THROWS_AS(Misalignment(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("TimingScheme validation") {
    CHECK_NOTHROW(SchemeA(1, Misalignment(0.0)));
    CHECK_THROWS_AS(SchemeA(0, Misalignment(0.0)), std::invalid_argument);
    CHECK_NOTHROW(SchemeB(10, 4, 0, 4, Misalignment(0.25)));
    CHECK_THROWS_AS(SchemeB(0, 4, 0, 0, Misalignment(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(SchemeB(10, 4, 5, 0, Misalignment(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(SchemeB(10, 4, 0, -1, Misalignment(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(SchemeB(10, -1, 0, 0, Misalignment(0.0)), std::invalid_argument);
}

TEST_CASE("BerEstimate from counts") {
    const auto e = BerEstimate::from_counts(3, 10);
    CHECK(e.ber == doctest::Approx(0.3));
    CHECK(e.std_err == doctest::Approx(std::sqrt(0.3 * 0.7 / 10.0)));
    CHECK(BerEstimate::from_counts(0, 5).std_err == 0.0);
    CHECK_THROWS_AS(BerEstimate::from_counts(0, 0), std::invalid_argument);
}

TEST_SUITE_END();
