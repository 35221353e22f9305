// Domain types and dB/linear conversions shared by every other module.
//
// Conventions: the target symbol duration T is normalized to 1 everywhere,
// so offsets are fractional misalignments delta = tau/T and all durations
// are multiples of T. SIR_dB = 10*log10(1/h1^2), SNR_dB = 10*log10(1/sigma^2).

#ifndef MISIM_CORE_HPP
#define MISIM_CORE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace misim {

/// Target-normalized channel seen by receiver R1: interferer amplitude h1
/// (linear, 0 <= h1 < 1) and noise standard deviation sigma (>= 0).
/// Immutable after construction.
class ChannelParams {
  public:
    ChannelParams(double h1, double sigma) : h1_(h1), sigma_(sigma) {
        if (!(h1 >= 0.0 && h1 < 1.0))
            throw std::invalid_argument("ChannelParams: h1 must satisfy 0 <= h1 < 1, got " +
                                        std::to_string(h1));
        if (!(sigma >= 0.0))
            throw std::invalid_argument("ChannelParams: sigma must be >= 0, got " +
                                        std::to_string(sigma));
    }

    double h1() const { return h1_; }
    double sigma() const { return sigma_; }
    double interference_power() const { return h1_ * h1_; }
    double noise_power() const { return sigma_ * sigma_; }

  private:
    double h1_;
    double sigma_;
};

/// Fractional symbol offset delta = tau/T in [0, 1).
class Misalignment {
  public:
    explicit Misalignment(double delta) : delta_(delta) {
        if (!(delta >= 0.0 && delta < 1.0))
            throw std::invalid_argument("Misalignment: delta must lie in [0, 1), got " +
                                        std::to_string(delta));
    }

    double value() const { return delta_; }

  private:
    double delta_;
};

/// Transmitter timing descriptors. Conventional keeps a constant offset for
/// the whole packet; SchemeA drifts the interferer by T/N per symbol;
/// SchemeB extends both transmitters by randomly drawn multiples of T/N.
struct Conventional {
    Misalignment delta0;
};

struct SchemeA {
    std::size_t n;  // block length, >= 1
    Misalignment delta0;

    SchemeA(std::size_t n_, Misalignment d0) : n(n_), delta0(d0) {
        if (n == 0) throw std::invalid_argument("SchemeA: block length must be >= 1");
    }
};

struct SchemeB {
    std::size_t n;   // block length, >= 1
    int k_max;       // K, draws come from [0, K]
    int k1;          // realized draw of the target's transmitter
    int k2;          // realized draw of the interferer
    Misalignment delta0;

    SchemeB(std::size_t n_, int k_max_, int k1_, int k2_, Misalignment d0)
        : n(n_), k_max(k_max_), k1(k1_), k2(k2_), delta0(d0) {
        if (n == 0) throw std::invalid_argument("SchemeB: block length must be >= 1");
        if (k_max < 0) throw std::invalid_argument("SchemeB: K must be >= 0");
        if (k1 < 0 || k1 > k_max || k2 < 0 || k2 > k_max)
            throw std::invalid_argument("SchemeB: draws must lie in [0, K]");
    }
};

using TimingScheme = std::variant<Conventional, SchemeA, SchemeB>;

/// Monte Carlo bit-error estimate with its binomial standard error.
struct BerEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double ber = 0.0;
    double std_err = 0.0;

    static BerEstimate from_counts(std::uint64_t errors, std::uint64_t trials) {
        if (trials == 0) throw std::invalid_argument("BerEstimate: trials must be >= 1");
        BerEstimate e;
        e.errors = errors;
        e.trials = trials;
        e.ber = static_cast<double>(errors) / static_cast<double>(trials);
        e.std_err = std::sqrt(e.ber * (1.0 - e.ber) / static_cast<double>(trials));
        return e;
    }
};

// dB conversions. Amplitude forms use /20 so that SIR_dB = 10*log10(1/h1^2)
// round-trips through the amplitude h1.

/// h1 from SIR in dB. Requires sir_db > 0 so that h1 < 1.
inline double sir_db_to_h1(double sir_db) {
    if (!(sir_db > 0.0))
        throw std::invalid_argument("sir_db_to_h1: SIR must be > 0 dB (h1 < 1), got " +
                                    std::to_string(sir_db));
    return std::pow(10.0, -sir_db / 20.0);
}

/// SIR in dB from h1 in (0, 1).
inline double h1_to_sir_db(double h1) {
    if (!(h1 > 0.0 && h1 < 1.0))
        throw std::invalid_argument("h1_to_sir_db: h1 must lie in (0, 1), got " +
                                    std::to_string(h1));
    return -20.0 * std::log10(h1);
}

/// Noise standard deviation from SNR in dB (any finite value).
inline double snr_db_to_sigma(double snr_db) {
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("snr_db_to_sigma: SNR must be finite");
    return std::pow(10.0, -snr_db / 20.0);
}

/// SNR in dB from sigma > 0.
inline double sigma_to_snr_db(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sigma_to_snr_db: sigma must be > 0, got " +
                                    std::to_string(sigma));
    return -20.0 * std::log10(sigma);
}

}  // namespace misim

#endif  // MISIM_CORE_HPP
