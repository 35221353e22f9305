// Oversampled continuous-time reference: synthesizes the superposed
// baseband rectangle-pulse waveform with per-transmitter symbol durations
// and applies matched-filter integration over arbitrary sample-grid
// windows. Validates the symbol-level model of the simulation module.
//
// Normalization: T = 1, pulse amplitude 1, matched filter = time average
// over its window, so a lone unit-amplitude symbol filters to exactly its
// value. Per-tick noise has variance sigma^2 * oversampling, which makes
// the filtered noise variance sigma^2 over a duration-T window (and
// sigma^2 * T/L over a stretched window of duration L, an O(1/N) effect
// the discrete model's Eq-form reuse ignores).

#ifndef MISIM_WAVEFORM_HPP
#define MISIM_WAVEFORM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "misim/core.hpp"
#include "misim/rng.hpp"
#include "misim/simulation.hpp"

namespace misim {

/// Sample-grid description of one two-transmitter packet exchange. All
/// durations are per-symbol tick counts; tau0_ticks shifts transmitter 2.
struct WaveformConfig {
    int oversampling = 16;               // ticks per symbol period T, >= 16
    std::vector<int> tx1_durations;      // target transmitter, ticks per symbol
    std::vector<int> tx2_durations;      // interfering transmitter
    int tau0_ticks = 0;                  // initial offset of tx2, in [0, oversampling)
};

/// Matched-filter window on the sample grid.
struct FilterWindow {
    std::int64_t start = 0;   // tick index
    std::int64_t length = 0;  // ticks, > 0
};

/// Per-tick waveform of block1 + h1 * block2(shifted by tau0) + noise.
/// Tick noise is Gaussian with variance sigma^2 * oversampling.
std::vector<double> synthesize(const WaveformConfig& config, const SymbolBlock& block1,
                               const SymbolBlock& block2, const ChannelParams& params,
                               RngSeed seed);

/// Time-average of the waveform over each window. Windows must lie inside
/// the waveform.
std::vector<double> matched_filter(std::span<const double> waveform,
                                   std::span<const FilterWindow> windows);

/// Receiver windows matching a transmitter's symbol spans.
std::vector<FilterWindow> symbol_windows(const std::vector<int>& durations,
                                         std::int64_t offset_ticks);

/// Noiseless comparison of the waveform oracle against the symbol-level
/// sampled-observation model at receiver R1, over `trials` random blocks
/// and grid-aligned offsets (Scheme B redraws K1, K2 each trial). Returns
/// the maximum absolute deviation across all symbols of all trials.
double cross_validate(const ChannelParams& params, const TimingScheme& scheme, int trials,
                      RngSeed seed);

/// Binary waveform dump: 16-byte header (magic "MSIMWAV1", uint32 LE
/// oversampling, uint32 LE tick count) followed by float64 LE ticks.
void write_waveform_file(const std::string& path, std::span<const double> waveform,
                         int oversampling);

struct WaveformFile {
    int oversampling = 0;
    std::vector<double> ticks;
};

WaveformFile read_waveform_file(const std::string& path);

}  // namespace misim

#endif  // MISIM_WAVEFORM_HPP
