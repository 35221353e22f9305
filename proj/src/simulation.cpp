#include "misim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace misim {

namespace {

// Overlap of the window [ws, we) with interferer symbol m on the exact
// two-grid geometry. Symbols outside [0, n) contribute nothing: the
// interferer is silent before its packet starts and after it ends.
double interferer_overlap_sum(std::span<const std::int8_t> interferer, double ws, double we,
                              double tau0, double sym_len) {
    const auto n = static_cast<long long>(interferer.size());
    auto m = static_cast<long long>(std::floor((ws - tau0) / sym_len)) - 1;
    double acc = 0.0;
    for (;; ++m) {
        const double sym_start = tau0 + static_cast<double>(m) * sym_len;
        if (sym_start >= we) break;
        if (m < 0 || m >= n) continue;
        const double lo = std::max(ws, sym_start);
        const double hi = std::min(we, sym_start + sym_len);
        if (hi > lo) acc += (hi - lo) * static_cast<double>(interferer[static_cast<std::size_t>(m)]);
    }
    return acc;
}

struct SchemeDraw {
    int ext1;
    int ext2;
    double delta0;
};

SchemeDraw draw_block_timing(const TimingScheme& scheme, Rng& rng) {
    if (const auto* conv = std::get_if<Conventional>(&scheme))
        return {0, 0, conv->delta0.value()};
    if (std::holds_alternative<SchemeA>(scheme))
        return {0, 1, rng.uniform01()};
    const auto& b = std::get<SchemeB>(scheme);
    const int k1 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(b.k_max)));
    const int k2 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(b.k_max)));
    return {k1, k2, rng.uniform01()};
}

void check_scheme_length(const TimingScheme& scheme, std::size_t n) {
    if (const auto* a = std::get_if<SchemeA>(&scheme); a && a->n != n)
        throw std::invalid_argument("scheme block length does not match n");
    if (const auto* b = std::get_if<SchemeB>(&scheme); b && b->n != n)
        throw std::invalid_argument("scheme block length does not match n");
}

// One block of the generate -> observe -> detect pipeline, counting bit
// errors without materializing the intermediate vectors.
std::uint64_t run_block(const ChannelParams& params, const TimingScheme& scheme, std::size_t n,
                        Rng& rng, std::vector<std::int8_t>& target,
                        std::vector<std::int8_t>& interferer) {
    const SchemeDraw d = draw_block_timing(scheme, rng);
    target.resize(n);
    interferer.resize(n);
    for (auto& s : target) s = rng.symbol();
    for (auto& s : interferer) s = rng.symbol();

    const double h1 = params.h1();
    const double sigma = params.sigma();
    std::uint64_t errors = 0;

    if (d.ext1 == 0 && d.ext2 == 0) {
        // constant misalignment: the two-tap form of the sampled model
        const double prev_w = h1 * d.delta0;
        const double cur_w = h1 * (1.0 - d.delta0);
        for (std::size_t i = 0; i < n; ++i) {
            double y = static_cast<double>(target[i]) + cur_w * static_cast<double>(interferer[i]);
            if (i > 0) y += prev_w * static_cast<double>(interferer[i - 1]);
            if (sigma > 0.0) y += sigma * rng.gaussian();
            const std::int8_t decided = y >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
            errors += decided != target[i];
        }
        return errors;
    }

    const double win_len = 1.0 + static_cast<double>(d.ext1) / static_cast<double>(n);
    const double sym_len = 1.0 + static_cast<double>(d.ext2) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ws = static_cast<double>(i) * win_len;
        const double we = static_cast<double>(i + 1) * win_len;
        const double acc = interferer_overlap_sum(interferer, ws, we, d.delta0, sym_len);
        double y = static_cast<double>(target[i]) + h1 * acc / win_len;
        if (sigma > 0.0) y += sigma * rng.gaussian();
        const std::int8_t decided = y >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
        errors += decided != target[i];
    }
    return errors;
}

}  // namespace

SymbolBlock::SymbolBlock(std::vector<std::int8_t> symbols) : symbols_(std::move(symbols)) {
    for (const auto s : symbols_)
        if (s != 1 && s != -1)
            throw std::invalid_argument("SymbolBlock: symbols must be exactly +1 or -1");
}

DeltaTrajectory::DeltaTrajectory(std::vector<double> deltas) : deltas_(std::move(deltas)) {
    for (const double d : deltas_)
        if (!(d >= 0.0 && d < 1.0))
            throw std::invalid_argument("DeltaTrajectory: every entry must lie in [0, 1)");
}

SymbolBlock generate_block(std::size_t n, RngSeed seed) {
    if (n == 0) throw std::invalid_argument("generate_block: n must be >= 1");
    Rng rng(seed);
    std::vector<std::int8_t> symbols(n);
    for (auto& s : symbols) s = rng.symbol();
    return SymbolBlock(std::move(symbols));
}

std::vector<double> sampled_observations(const SymbolBlock& target, const SymbolBlock& interferer,
                                         const ChannelParams& params, const DeltaTrajectory& traj,
                                         RngSeed seed) {
    const std::size_t n = target.size();
    if (interferer.size() != n || traj.size() != n)
        throw std::invalid_argument("sampled_observations: blocks and trajectory must share "
                                    "one length");
    Rng rng(seed);
    const double h1 = params.h1();
    const double sigma = params.sigma();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = traj[i];
        double v = static_cast<double>(target[i]) +
                   h1 * (1.0 - d) * static_cast<double>(interferer[i]);
        if (i > 0) v += h1 * d * static_cast<double>(interferer[i - 1]);
        if (sigma > 0.0) v += sigma * rng.gaussian();
        y[i] = v;
    }
    return y;
}

std::vector<double> sampled_observations(const SymbolBlock& target, const SymbolBlock& interferer,
                                         const ChannelParams& params, const BlockTiming& timing,
                                         RngSeed seed) {
    const std::size_t n = target.size();
    if (interferer.size() != n || timing.n != n)
        throw std::invalid_argument("sampled_observations: blocks and timing must share "
                                    "one length");
    if (!(timing.delta0 >= 0.0 && timing.delta0 < 1.0))
        throw std::invalid_argument("sampled_observations: delta0 must lie in [0, 1)");
    if (timing.ext1 < 0 || timing.ext2 < 0)
        throw std::invalid_argument("sampled_observations: extensions must be >= 0");
    Rng rng(seed);
    const double h1 = params.h1();
    const double sigma = params.sigma();
    const double win_len = timing.window_len();
    const double sym_len = timing.symbol_len();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ws = static_cast<double>(i) * win_len;
        const double we = static_cast<double>(i + 1) * win_len;
        const double acc =
            interferer_overlap_sum(interferer.symbols(), ws, we, timing.delta0, sym_len);
        double v = static_cast<double>(target[i]) + h1 * acc / win_len;
        if (sigma > 0.0) v += sigma * rng.gaussian();
        y[i] = v;
    }
    return y;
}

SymbolBlock detect(std::span<const double> observations) {
    std::vector<std::int8_t> decided(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i)
        decided[i] = observations[i] >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
    return SymbolBlock(std::move(decided));
}

DeltaTrajectory delta_trajectory(const TimingScheme& scheme, std::size_t n_symbols) {
    if (n_symbols == 0) throw std::invalid_argument("delta_trajectory: n_symbols must be >= 1");
    check_scheme_length(scheme, n_symbols);
    std::vector<double> deltas(n_symbols);
    if (const auto* conv = std::get_if<Conventional>(&scheme)) {
        std::fill(deltas.begin(), deltas.end(), conv->delta0.value());
        return DeltaTrajectory(std::move(deltas));
    }
    double delta0 = 0.0;
    double step = 0.0;
    if (const auto* a = std::get_if<SchemeA>(&scheme)) {
        delta0 = a->delta0.value();
        step = 1.0 / static_cast<double>(a->n);
    } else {
        const auto& b = std::get<SchemeB>(scheme);
        delta0 = b.delta0.value();
        step = static_cast<double>(std::abs(b.k1 - b.k2)) / static_cast<double>(b.n);
    }
    for (std::size_t i = 0; i < n_symbols; ++i) {
        double d = std::fmod(delta0 + static_cast<double>(i) * step, 1.0);
        if (d < 0.0) d = 0.0;
        deltas[i] = d;
    }
    return DeltaTrajectory(std::move(deltas));
}

std::pair<int, int> scheme_b_draw(int k_max, RngSeed seed) {
    if (k_max < 0) throw std::invalid_argument("scheme_b_draw: K must be >= 0");
    Rng rng(seed);
    const int k1 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k_max)));
    const int k2 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k_max)));
    return {k1, k2};
}

BerEstimate estimate_ber(const ChannelParams& params, const TimingScheme& scheme,
                         std::uint64_t blocks, std::size_t n, RngSeed seed, unsigned workers) {
    if (blocks == 0) throw std::invalid_argument("estimate_ber: blocks must be >= 1");
    if (n == 0) throw std::invalid_argument("estimate_ber: n must be >= 1");
    check_scheme_length(scheme, n);
    if (workers == 0) workers = 1;

    auto run_range = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<std::int8_t> target;
        std::vector<std::int8_t> interferer;
        std::uint64_t errors = 0;
        for (std::uint64_t b = first; b < last; ++b) {
            Rng rng(derive_seed(seed, b));
            errors += run_block(params, scheme, n, rng, target, interferer);
        }
        return errors;
    };

    std::uint64_t total_errors = 0;
    if (workers == 1 || blocks < 2 * workers) {
        total_errors = run_range(0, blocks);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = blocks / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = w * chunk;
            const std::uint64_t last = (w + 1 == workers) ? blocks : first + chunk;
            pool.emplace_back([&, w, first, last] { partial[w] = run_range(first, last); });
        }
        for (auto& t : pool) t.join();
        for (const auto e : partial) total_errors += e;
    }
    return BerEstimate::from_counts(total_errors, blocks * n);
}

}  // namespace misim
