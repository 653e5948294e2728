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

#ifndef LOCC_OPTIMIZER_H
#define LOCC_OPTIMIZER_H

#include <cstdint>
#include <functional>
#include <vector>

#include "locc/estimator.h"
#include "locc/strategy.h"

namespace locc {

/// Largest N accepted by the tree optimizers.
inline constexpr int kMaxOptimizedCopies = 8;
/// Largest N accepted by optimize_one_step_adaptive.
inline constexpr int kMaxGreedyCopies = 14;
/// Default N budget for optimal_fidelity_table.
inline constexpr int kDefaultTableBudget = 6;
inline constexpr std::uint64_t kDefaultOptimizerSeed = 20040611;

enum class Gauge {
    /// Root along z (e1 in Planar), 0-branch second direction at azimuth 0.
    FixRoot,
    Free,
};

struct OptimizationConfig {
    /// Maximum coordinate sweeps per restart.
    int max_iterations = 400;
    /// Stop a restart when a full sweep improves F by less than this.
    double f_tolerance = 1e-10;
    int restarts = 8;
    std::uint64_t seed = kDefaultOptimizerSeed;
    Gauge gauge = Gauge::FixRoot;
    /// Worker threads for independent restarts; 0 = hardware concurrency.
    /// Results do not depend on this value.
    int threads = 0;

    /// Throws ValidationError on non-positive tolerances or counts.
    void validate() const;
};

struct OptimizationResult {
    StrategyTree strategy;
    double fidelity = 0;
    int iterations = 0;
    int best_restart = 0;
    bool converged = false;
    /// Final F of every restart, by restart index.
    std::vector<double> restart_fidelities;
};

/// Maximizes the average fidelity over all direction trees with N copies.
///
/// Each restart starts from a random tree and sweeps over the nodes,
/// maximizing F over one node's direction at a time along two orthogonal
/// great circles. Moving a node only changes the branches below it, so each
/// line search re-evaluates just that subtree. The best restart wins; ties go
/// to the lowest index. Throws ResourceError for N > kMaxOptimizedCopies.
OptimizationResult optimize_tree(Geometry geometry, int copies, const GuessRule &guess,
                                 const OptimizationConfig &cfg);

/// Single local search from `initial` (cfg.restarts is ignored). The gauge
/// constraint, if any, is imposed on the initial tree first.
OptimizationResult optimize_tree_from(const StrategyTree &initial, const GuessRule &guess,
                                      const OptimizationConfig &cfg);

/// Greedy scheme: every node's direction maximizes the fidelity of stopping
/// right after that measurement with the optimal guess, with no lookahead.
/// Throws ResourceError for N > kMaxGreedyCopies.
OptimizationResult optimize_one_step_adaptive(Geometry geometry, int copies, const OptimizationConfig &cfg);

/// Exact F of the four-copy ansatz tree (see n4_ansatz_tree) with the optimal guess.
double n4_ansatz_fidelity(double alpha, double beta, double gamma, const QuadratureRule &rule);
double n4_ansatz_fidelity(double alpha, double beta, double gamma);

struct AnsatzOptimum {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double fidelity = 0;
};
/// Maximizes n4_ansatz_fidelity by a coarse grid followed by Nelder-Mead.
AnsatzOptimum optimize_n4_ansatz();

struct FidelityTableRow {
    int copies = 0;
    double fidelity = 0;
    bool converged = false;
};
/// optimize_tree for N = 1..max_copies. Throws ResourceError above `budget`.
std::vector<FidelityTableRow> optimal_fidelity_table(Geometry geometry, int max_copies, const OptimizationConfig &cfg,
                                                     int budget = kDefaultTableBudget);

/// Maximizes f on [lo, hi] by Brent's method. Returns the argmax; `best`
/// receives f there.
double brent_maximize(const std::function<double(double)> &f, double lo, double hi, double tol, double &best,
                      int max_evals = 100);

/// Nelder-Mead maximization from `start` with initial simplex steps `step`.
/// Returns the best point; `best` receives f there.
std::vector<double> nelder_mead_maximize(const std::function<double(const std::vector<double> &)> &f,
                                         std::vector<double> start, double step, double f_tol, int max_evals,
                                         double &best);

}  // namespace locc

#endif
