// Copyright 2026 The LOCC Estimation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCC_MONTECARLO_H
#define LOCC_MONTECARLO_H

#include <cstdint>
#include <functional>
#include <string>

#include "locc/bloch.h"
#include "locc/estimator.h"
#include "locc/rng.h"
#include "locc/strategy.h"

namespace locc {

inline constexpr std::uint64_t kDefaultMcSeed = 0x10cc5eedULL;
/// Per-sample trace output is refused above this many samples.
inline constexpr std::int64_t kMaxTraceSamples = 100000;

struct McConfig {
    std::int64_t samples = 1000000;
    std::uint64_t seed = kDefaultMcSeed;
    /// Samples per reduction batch. Also the unit of parallel work.
    std::int64_t batch_size = 10000;
    /// 0 = hardware concurrency. Results do not depend on this value.
    int threads = 0;

    /// Throws ValidationError unless samples >= 100 and batch_size >= 1.
    void validate() const;
};

struct McResult {
    double mean = 0;
    /// Sample standard deviation of the per-sample fidelity over sqrt(samples).
    double standard_error = 0;
    /// Spread of batch means; a cross-check on standard_error.
    double batch_standard_error = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

/// One simulated run, for trace output.
struct TraceRow {
    std::int64_t index = 0;
    Vec3 state;
    std::string outcomes;
    BlochVector guess;
    double fidelity = 0;
};
using TraceSink = std::function<void(const TraceRow &)>;

/// Uniform draw from the prior: cos(theta) and azimuth uniform (Full), or a
/// uniform angle on the equator (Planar).
BlochVector sample_state(Geometry geometry, Xoshiro256 &rng);

/// Draws n from the prior, walks the strategy drawing each outcome with
/// probability (1 + (-1)^i n . m) / 2, scores (1 + n . M(x)) / 2 and averages.
///
/// Sample i uses its own generator stream (seed, i), so results are
/// bit-identical for any thread count. With a trace sink the run is
/// sequential and limited to kMaxTraceSamples samples.
McResult simulate_fidelity(const StrategyTree &tree, const GuessRule &guess, const McConfig &cfg,
                           const TraceSink &trace = nullptr);
/// Fixed-axis strategy, measured in blocked axis order.
McResult simulate_fidelity(const FixedStrategy &fixed, const GuessRule &guess, const McConfig &cfg,
                           const TraceSink &trace = nullptr);
/// Two-stage strategy: the pilot uses the optimal guess, the final guess is
/// two_stage_guess.
McResult simulate_fidelity(const TwoStageStrategy &strategy, const McConfig &cfg, const TraceSink &trace = nullptr);

}  // namespace locc

#endif
