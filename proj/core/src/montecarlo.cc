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

#include "locc/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "locc/errors.h"

namespace locc {

void McConfig::validate() const {
    if (samples < 100) {
        throw ValidationError("Monte Carlo needs at least 100 samples");
    }
    if (batch_size < 1) {
        throw ValidationError("Monte Carlo batch size must be >= 1");
    }
}

BlochVector sample_state(Geometry geometry, Xoshiro256 &rng) {
    double phi = 2 * std::numbers::pi * rng.uniform();
    if (geometry == Geometry::Planar) {
        return BlochVector(std::cos(phi), std::sin(phi), 0.0);
    }
    double z = 2 * rng.uniform() - 1;
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    return BlochVector(r * std::cos(phi), r * std::sin(phi), z);
}

namespace {

struct BatchStats {
    std::int64_t count = 0;
    double mean = 0;
    double m2 = 0;
};

// One sample: fills `row` (state, outcomes, guess) and returns its fidelity.
using SampleFn = std::function<double(Xoshiro256 &, TraceRow *)>;

McResult run(const SampleFn &sample, const McConfig &cfg, const TraceSink &trace) {
    cfg.validate();
    if (trace && cfg.samples > kMaxTraceSamples) {
        throw ResourceError("trace output limited to small runs", static_cast<std::uint64_t>(cfg.samples),
                            kMaxTraceSamples);
    }
    const std::int64_t batches = (cfg.samples + cfg.batch_size - 1) / cfg.batch_size;
    std::vector<BatchStats> stats(batches);
    auto do_batch = [&](std::int64_t b, bool with_trace) {
        BatchStats s;
        const std::int64_t lo = b * cfg.batch_size;
        const std::int64_t hi = std::min(cfg.samples, lo + cfg.batch_size);
        for (std::int64_t i = lo; i < hi; ++i) {
            Xoshiro256 rng(cfg.seed, static_cast<std::uint64_t>(i));
            TraceRow row;
            double f = sample(rng, with_trace ? &row : nullptr);
            if (with_trace) {
                row.index = i;
                row.fidelity = f;
                trace(row);
            }
            ++s.count;
            double delta = f - s.mean;
            s.mean += delta / static_cast<double>(s.count);
            s.m2 += delta * (f - s.mean);
        }
        stats[b] = s;
    };

    int workers = cfg.threads > 0 ? cfg.threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::int64_t>(workers, batches));
    if (trace || workers <= 1) {
        for (std::int64_t b = 0; b < batches; ++b) {
            do_batch(b, static_cast<bool>(trace));
        }
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::int64_t b = next++; b < batches; b = next++) {
                    do_batch(b, false);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    // Chan et al. pairwise combination, in batch order.
    BatchStats total;
    for (const auto &s : stats) {
        if (s.count == 0) {
            continue;
        }
        const double n = static_cast<double>(total.count + s.count);
        const double delta = s.mean - total.mean;
        total.m2 += s.m2 + delta * delta * static_cast<double>(total.count) * static_cast<double>(s.count) / n;
        total.mean += delta * static_cast<double>(s.count) / n;
        total.count += s.count;
    }
    McResult r;
    r.mean = total.mean;
    r.samples = total.count;
    r.seed = cfg.seed;
    const double n = static_cast<double>(total.count);
    r.standard_error = std::sqrt(total.m2 / (n - 1)) / std::sqrt(n);
    if (batches > 1) {
        double acc = 0;
        for (const auto &s : stats) {
            acc += (s.mean - total.mean) * (s.mean - total.mean);
        }
        r.batch_standard_error = std::sqrt(acc / static_cast<double>(batches - 1)) /
                                 std::sqrt(static_cast<double>(batches));
    }
    return r;
}

int draw(const Vec3 &n, const Vec3 &m, Xoshiro256 &rng) {
    return rng.uniform() < (1 + dot(n, m)) / 2 ? 0 : 1;
}

}  // namespace

McResult simulate_fidelity(const StrategyTree &tree, const GuessRule &guess, const McConfig &cfg,
                           const TraceSink &trace) {
    std::vector<BlochVector> table;
    if (guess.kind() == GuessRule::Kind::OptimalGuess) {
        for (const auto &b : branch_vectors(tree, make_quadrature(tree.geometry(), tree.copies() + 1))) {
            table.push_back(optimal_guess(tree.geometry(), b.v));
        }
    } else if (guess.kind() == GuessRule::Kind::Fixed) {
        if (guess.table().size() != tree.branch_count()) {
            throw ValidationError("fixed guess table needs one entry per outcome branch");
        }
        table = guess.table();
    }
    const bool cl = guess.kind() == GuessRule::Kind::CentralLimit;
    SampleFn sample = [&](Xoshiro256 &rng, TraceRow *row) {
        const BlochVector n = sample_state(tree.geometry(), rng);
        OutcomeHistory x;
        for (int k = 0; k < tree.copies(); ++k) {
            x = x.extended(draw(n.vec(), tree.direction(x).vec(), rng));
        }
        BlochVector m = cl ? central_limit_guess(tree, x) : table[x.bits];
        if (row) {
            row->state = n.vec();
            row->outcomes = x.to_string();
            row->guess = m;
        }
        return (1 + dot(n.vec(), m.vec())) / 2;
    };
    return run(sample, cfg, trace);
}

McResult simulate_fidelity(const FixedStrategy &fixed, const GuessRule &guess, const McConfig &cfg,
                           const TraceSink &trace) {
    fixed.validate();
    if (guess.kind() == GuessRule::Kind::Fixed) {
        throw ValidationError("fixed strategies take a count-based guess rule (og or cl)");
    }
    // Guesses per count class, indexed in enumerate_count_classes order.
    FidelityReport report = fidelity_exact_aggregated(fixed, guess);
    std::vector<std::int64_t> stride(fixed.axes.size(), 1);
    for (std::size_t i = fixed.axes.size(); i-- > 1;) {
        stride[i - 1] = stride[i] * (fixed.axes[i].count + 1);
    }
    SampleFn sample = [&](Xoshiro256 &rng, TraceRow *row) {
        const BlochVector n = sample_state(fixed.geometry, rng);
        std::int64_t cls = 0;
        std::string outcomes;
        for (std::size_t i = 0; i < fixed.axes.size(); ++i) {
            int plus = 0;
            for (int k = 0; k < fixed.axes[i].count; ++k) {
                int o = draw(n.vec(), fixed.axes[i].axis.vec(), rng);
                plus += 1 - o;
                if (row) {
                    outcomes.insert(outcomes.begin(), o ? '1' : '0');
                }
            }
            cls += plus * stride[i];
        }
        const BlochVector &m = report.branches[static_cast<std::size_t>(cls)].guess;
        if (row) {
            row->state = n.vec();
            row->outcomes = std::move(outcomes);
            row->guess = m;
        }
        return (1 + dot(n.vec(), m.vec())) / 2;
    };
    return run(sample, cfg, trace);
}

McResult simulate_fidelity(const TwoStageStrategy &s, const McConfig &cfg, const TraceSink &trace) {
    const StrategyTree &pilot = s.pilot;
    std::vector<BlochVector> pilot_guess;
    std::vector<TransverseFrame> frames;
    for (const auto &b : branch_vectors(pilot, make_quadrature(pilot.geometry(), pilot.copies() + 1))) {
        pilot_guess.push_back(optimal_guess(s.geometry, b.v));
        frames.push_back(transverse_frame(s.geometry, pilot_guess.back()));
    }
    const int explore = s.exploration_copies();
    const bool planar = s.geometry == Geometry::Planar;
    SampleFn sample = [&](Xoshiro256 &rng, TraceRow *row) {
        const BlochVector n = sample_state(s.geometry, rng);
        OutcomeHistory x;
        for (int k = 0; k < pilot.copies(); ++k) {
            x = x.extended(draw(n.vec(), pilot.direction(x).vec(), rng));
        }
        const TransverseFrame &f = frames[x.bits];
        int plus_u = 0, plus_v = 0;
        std::string outcomes;
        for (int j = 0; j < explore; ++j) {
            const bool along_u = planar || j % 2 == 0;
            int o = draw(n.vec(), along_u ? f.u : f.v, rng);
            (along_u ? plus_u : plus_v) += 1 - o;
            if (row) {
                outcomes.insert(outcomes.begin(), o ? '1' : '0');
            }
        }
        BlochVector m = two_stage_guess(s, pilot_guess[x.bits], plus_u, plus_v);
        if (row) {
            row->state = n.vec();
            row->outcomes = outcomes + x.to_string();
            row->guess = m;
        }
        return (1 + dot(n.vec(), m.vec())) / 2;
    };
    return run(sample, cfg, trace);
}

}  // namespace locc
