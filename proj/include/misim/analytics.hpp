// Closed-form link analytics: Gaussian tail probability, effective
// interference power and eSINR under symbol misalignment, per-offset BER,
// and misalignment-averaged eSINR/BER.
//
// All functions are pure; any of them may be called concurrently.

#ifndef MISIM_ANALYTICS_HPP
#define MISIM_ANALYTICS_HPP

#include <array>
#include <functional>

#include "misim/core.hpp"

namespace misim {

/// Standard Gaussian tail Q(x) = P(Z >= x).
/// Relative accuracy <= 1e-12 for |x| <= 8; monotone non-increasing.
double q_function(double x);

/// Amplitude distribution of the interference sample seen by the matched
/// filter: {+h1, -h1, +h1(1-2d), -h1(1-2d)}, each with probability 1/4.
/// At delta = 0 the values coincide pairwise and the support degenerates
/// to {+h1, -h1} with probability 1/2 each.
struct InterferenceSupport {
    std::array<double, 4> points;
    std::array<double, 4> probabilities;

    static InterferenceSupport from(const ChannelParams& params, Misalignment delta);

    double second_moment() const;
};

/// Effective interference power h1^2 * (2d^2 - 2d + 1). Always <= h1^2,
/// minimized at delta = 0.5 where it equals h1^2 / 2.
double effective_interference_power(const ChannelParams& params, Misalignment delta);

/// Conventional SINR 1/(h1^2 + sigma^2), independent of misalignment.
double conventional_sinr(const ChannelParams& params);

/// Effective SINR 1/(h1^2 (2d^2 - 2d + 1) + sigma^2). Equals
/// conventional_sinr at delta = 0.
double esinr(const ChannelParams& params, Misalignment delta);

/// Error probability of the first symbol of a block (no preceding
/// interferer symbol): (1/2)[Q((1 - h1(1-d))/s) + Q((1 + h1(1-d))/s)].
/// Requires sigma > 0; the noiseless case is served by the simulation
/// module where it is well defined.
double ber_first_symbol(const ChannelParams& params, Misalignment delta);

/// Steady-state per-symbol error probability (symbol index >= 1):
/// (1/4)[Q((1-h1)/s) + Q((1+h1)/s) + Q((1-h1(1-2d))/s) + Q((1+h1(1-2d))/s)].
/// Symmetric about delta = 0.5 and minimized there. Requires sigma > 0.
double ber_steady_state(const ChannelParams& params, Misalignment delta);

/// Block-average BER: (1/N) first-symbol term + ((N-1)/N) steady-state term.
double ber_block(const ChannelParams& params, Misalignment delta, std::size_t n);

/// Packet-averaged eSINR over delta uniform on [0,1]:
/// sqrt(4/((h1^2 + 2s^2) h1^2)) * atan(sqrt(h1^2/(h1^2 + 2s^2))).
/// Falls back to 1/sigma^2 when h1 = 0.
double avg_esinr_closed(const ChannelParams& params);

/// Misalignment-averaged uncoded BER:
/// (1/4)Q((1-h1)/s) + (1/4)Q((1+h1)/s) + (1/2) * integral of
/// Q((1 - h1(1-2d))/s) over d in [0,1], evaluated by quadrature to 1e-12.
/// Requires sigma > 0.
double avg_ber(const ChannelParams& params);

/// Deterministic adaptive composite quadrature of f over [0, 1] with
/// estimated absolute error <= abs_tol. Throws std::runtime_error if the
/// refinement depth limit is reached before the tolerance is met.
double integrate_unit_interval(const std::function<double(double)>& f, double abs_tol);

}  // namespace misim

#endif  // MISIM_ANALYTICS_HPP
