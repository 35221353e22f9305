#include "misim/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace misim {

namespace {

constexpr char kMagic[8] = {'M', 'S', 'I', 'M', 'W', 'A', 'V', '1'};

std::int64_t total_ticks(const std::vector<int>& durations) {
    std::int64_t total = 0;
    for (const int d : durations) {
        if (d <= 0) throw std::invalid_argument("waveform: symbol durations must be > 0 ticks");
        total += d;
    }
    return total;
}

void add_symbols(std::vector<double>& wave, const SymbolBlock& block,
                 const std::vector<int>& durations, std::int64_t offset, double amplitude) {
    std::int64_t pos = offset;
    for (std::size_t m = 0; m < block.size(); ++m) {
        const double v = amplitude * static_cast<double>(block[m]);
        for (int t = 0; t < durations[m]; ++t) wave[static_cast<std::size_t>(pos + t)] += v;
        pos += durations[m];
    }
}

// Oversampling that is a multiple of n (so alpha = T/n sits on the grid)
// and at least 32 ticks per symbol period.
int grid_oversampling(std::size_t n) {
    const auto nn = static_cast<int>(n);
    const int mult = (32 + nn - 1) / nn;
    return nn * std::max(1, mult);
}

}  // namespace

std::vector<double> synthesize(const WaveformConfig& config, const SymbolBlock& block1,
                               const SymbolBlock& block2, const ChannelParams& params,
                               RngSeed seed) {
    if (config.oversampling < 16)
        throw std::invalid_argument("synthesize: oversampling must be >= 16");
    if (config.tau0_ticks < 0 || config.tau0_ticks >= config.oversampling)
        throw std::invalid_argument("synthesize: tau0 must lie on the grid within [0, T)");
    if (block1.size() != config.tx1_durations.size() ||
        block2.size() != config.tx2_durations.size())
        throw std::invalid_argument("synthesize: block lengths must match duration lists");

    const std::int64_t end1 = total_ticks(config.tx1_durations);
    const std::int64_t end2 = config.tau0_ticks + total_ticks(config.tx2_durations);
    const auto total = static_cast<std::size_t>(std::max(end1, end2));

    std::vector<double> wave(total, 0.0);
    add_symbols(wave, block1, config.tx1_durations, 0, 1.0);
    add_symbols(wave, block2, config.tx2_durations, config.tau0_ticks, params.h1());

    if (params.sigma() > 0.0) {
        Rng rng(seed);
        const double tick_sigma =
            params.sigma() * std::sqrt(static_cast<double>(config.oversampling));
        for (auto& v : wave) v += tick_sigma * rng.gaussian();
    }
    return wave;
}

std::vector<double> matched_filter(std::span<const double> waveform,
                                   std::span<const FilterWindow> windows) {
    std::vector<double> out;
    out.reserve(windows.size());
    for (const auto& w : windows) {
        if (w.length <= 0 || w.start < 0 ||
            w.start + w.length > static_cast<std::int64_t>(waveform.size()))
            throw std::invalid_argument("matched_filter: window outside the waveform");
        double sum = 0.0;
        for (std::int64_t t = w.start; t < w.start + w.length; ++t)
            sum += waveform[static_cast<std::size_t>(t)];
        out.push_back(sum / static_cast<double>(w.length));
    }
    return out;
}

std::vector<FilterWindow> symbol_windows(const std::vector<int>& durations,
                                         std::int64_t offset_ticks) {
    std::vector<FilterWindow> windows;
    windows.reserve(durations.size());
    std::int64_t pos = offset_ticks;
    for (const int d : durations) {
        windows.push_back(FilterWindow{pos, d});
        pos += d;
    }
    return windows;
}

double cross_validate(const ChannelParams& params, const TimingScheme& scheme, int trials,
                      RngSeed seed) {
    if (trials <= 0) throw std::invalid_argument("cross_validate: trials must be >= 1");
    const ChannelParams noiseless(params.h1(), 0.0);
    double max_dev = 0.0;

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));

        std::size_t n = 0;
        int ext1 = 0;
        int ext2 = 0;
        bool random_offset = true;
        double fixed_delta0 = 0.0;
        if (const auto* conv = std::get_if<Conventional>(&scheme)) {
            n = 8 + static_cast<std::size_t>(rng.uniform_int(40));
            random_offset = false;
            fixed_delta0 = conv->delta0.value();
        } else if (const auto* a = std::get_if<SchemeA>(&scheme)) {
            n = a->n;
            ext2 = 1;
        } else {
            const auto& b = std::get<SchemeB>(scheme);
            n = b.n;
            ext1 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(b.k_max)));
            ext2 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(b.k_max)));
        }

        const int os = grid_oversampling(n);
        const int alpha_ticks = os / static_cast<int>(n);
        const int tau0_ticks =
            random_offset
                ? static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(os - 1)))
                : std::min(os - 1, static_cast<int>(std::lround(fixed_delta0 * os)));
        const double delta0 = static_cast<double>(tau0_ticks) / static_cast<double>(os);

        std::vector<std::int8_t> t1(n);
        std::vector<std::int8_t> t2(n);
        for (auto& s : t1) s = rng.symbol();
        for (auto& s : t2) s = rng.symbol();
        const SymbolBlock target{std::move(t1)};
        const SymbolBlock interferer{std::move(t2)};

        WaveformConfig config;
        config.oversampling = os;
        config.tau0_ticks = tau0_ticks;
        config.tx1_durations.assign(n, os + ext1 * alpha_ticks);
        config.tx2_durations.assign(n, os + ext2 * alpha_ticks);

        const auto wave = synthesize(config, target, interferer, noiseless, RngSeed{0});
        const auto windows = symbol_windows(config.tx1_durations, 0);
        const auto oracle_out = matched_filter(wave, windows);

        const BlockTiming timing{n, ext1, ext2, delta0};
        const auto model_out =
            sampled_observations(target, interferer, noiseless, timing, RngSeed{0});

        for (std::size_t i = 0; i < n; ++i)
            max_dev = std::max(max_dev, std::abs(oracle_out[i] - model_out[i]));
    }
    return max_dev;
}

void write_waveform_file(const std::string& path, std::span<const double> waveform,
                         int oversampling) {
    if (oversampling <= 0)
        throw std::invalid_argument("write_waveform_file: oversampling must be > 0");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_waveform_file: cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    const auto os32 = static_cast<std::uint32_t>(oversampling);
    const auto count = static_cast<std::uint32_t>(waveform.size());
    out.write(reinterpret_cast<const char*>(&os32), sizeof(os32));
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    out.write(reinterpret_cast<const char*>(waveform.data()),
              static_cast<std::streamsize>(waveform.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_waveform_file: write failed for " + path);
}

WaveformFile read_waveform_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_waveform_file: cannot open " + path);
    char magic[8];
    std::uint32_t os32 = 0;
    std::uint32_t count = 0;
    in.read(magic, sizeof(magic));
    in.read(reinterpret_cast<char*>(&os32), sizeof(os32));
    in.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("read_waveform_file: bad header in " + path);
    WaveformFile file;
    file.oversampling = static_cast<int>(os32);
    file.ticks.resize(count);
    in.read(reinterpret_cast<char*>(file.ticks.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("read_waveform_file: truncated file " + path);
    return file;
}

}  // namespace misim
