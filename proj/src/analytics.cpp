#include "misim/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace misim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

// Interference-power polynomial of Eq-style form 2d^2 - 2d + 1, valid for
// any real d (quadrature evaluates it at d = 1 as well).
inline double misalignment_factor(double delta) {
    return 2.0 * delta * delta - 2.0 * delta + 1.0;
}

inline double esinr_at(const ChannelParams& p, double delta) {
    const double denom = p.interference_power() * misalignment_factor(delta) + p.noise_power();
    if (denom <= 0.0)
        throw std::domain_error("esinr: h1 and sigma are both zero");
    return 1.0 / denom;
}

inline void require_noise(const ChannelParams& p, const char* who) {
    if (!(p.sigma() > 0.0))
        throw std::domain_error(std::string(who) +
                                ": sigma must be > 0 (use the simulation module for the "
                                "noiseless case)");
}

// One adaptive-Simpson refinement step. `whole` is Simpson over [a, b];
// recursion keeps the classic |S_left + S_right - whole| / 15 error model
// with Richardson extrapolation of the accepted result.
double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw std::runtime_error("integrate_unit_interval: refinement depth exhausted "
                                 "before reaching the requested tolerance");
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double q_function(double x) {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

InterferenceSupport InterferenceSupport::from(const ChannelParams& params, Misalignment delta) {
    const double h1 = params.h1();
    const double tail = h1 * (1.0 - 2.0 * delta.value());
    return InterferenceSupport{{h1, -h1, tail, -tail}, {0.25, 0.25, 0.25, 0.25}};
}

double InterferenceSupport::second_moment() const {
    double m2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        m2 += probabilities[i] * points[i] * points[i];
    return m2;
}

double effective_interference_power(const ChannelParams& params, Misalignment delta) {
    return params.interference_power() * misalignment_factor(delta.value());
}

double conventional_sinr(const ChannelParams& params) {
    const double denom = params.interference_power() + params.noise_power();
    if (denom <= 0.0)
        throw std::domain_error("conventional_sinr: h1 and sigma are both zero");
    return 1.0 / denom;
}

double esinr(const ChannelParams& params, Misalignment delta) {
    return esinr_at(params, delta.value());
}

double ber_first_symbol(const ChannelParams& params, Misalignment delta) {
    require_noise(params, "ber_first_symbol");
    const double tap = params.h1() * (1.0 - delta.value());
    const double s = params.sigma();
    return 0.5 * (q_function((1.0 - tap) / s) + q_function((1.0 + tap) / s));
}

double ber_steady_state(const ChannelParams& params, Misalignment delta) {
    require_noise(params, "ber_steady_state");
    const double h1 = params.h1();
    const double tail = h1 * (1.0 - 2.0 * delta.value());
    const double s = params.sigma();
    return 0.25 * (q_function((1.0 - h1) / s) + q_function((1.0 + h1) / s) +
                   q_function((1.0 - tail) / s) + q_function((1.0 + tail) / s));
}

double ber_block(const ChannelParams& params, Misalignment delta, std::size_t n) {
    if (n == 0) throw std::invalid_argument("ber_block: block length must be >= 1");
    const double first = ber_first_symbol(params, delta);
    if (n == 1) return first;
    const double rest = ber_steady_state(params, delta);
    const double nn = static_cast<double>(n);
    return first / nn + (nn - 1.0) / nn * rest;
}

double avg_esinr_closed(const ChannelParams& params) {
    const double a = params.interference_power();
    const double s2 = params.noise_power();
    if (a <= 0.0) {
        if (s2 <= 0.0)
            throw std::domain_error("avg_esinr_closed: h1 and sigma are both zero");
        return 1.0 / s2;
    }
    const double c = a + 2.0 * s2;
    return std::sqrt(4.0 / (c * a)) * std::atan(std::sqrt(a / c));
}

double avg_ber(const ChannelParams& params) {
    require_noise(params, "avg_ber");
    const double h1 = params.h1();
    const double s = params.sigma();
    const double integral = integrate_unit_interval(
        [h1, s](double d) { return q_function((1.0 - h1 * (1.0 - 2.0 * d)) / s); }, 1e-12);
    return 0.25 * q_function((1.0 - h1) / s) + 0.25 * q_function((1.0 + h1) / s) +
           0.5 * integral;
}

double integrate_unit_interval(const std::function<double(double)>& f, double abs_tol) {
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("integrate_unit_interval: abs_tol must be > 0");
    constexpr int kMaxDepth = 48;
    const double fa = f(0.0);
    const double fb = f(1.0);
    const double fm = f(0.5);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw std::domain_error("integrate_unit_interval: integrand is not finite on [0, 1]");
    const double whole = (fa + 4.0 * fm + fb) / 6.0;
    return adaptive_simpson(f, 0.0, fa, 1.0, fb, 0.5, fm, whole, abs_tol, kMaxDepth);
}

}  // namespace misim
