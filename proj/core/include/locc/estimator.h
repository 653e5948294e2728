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

#ifndef LOCC_ESTIMATOR_H
#define LOCC_ESTIMATOR_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locc/bloch.h"
#include "locc/quadrature.h"
#include "locc/strategy.h"

namespace locc {

/// Branch count above which exact tree evaluation refuses to run.
inline constexpr std::uint64_t kMaxTreeBranches = std::uint64_t{1} << 20;
/// Count-class limit for aggregated evaluation.
inline constexpr std::uint64_t kMaxCountClasses = std::uint64_t{1} << 22;
/// |V| below this is treated as zero and the guess falls back to e1.
inline constexpr double kDegenerateNorm = 1e-13;

/// Unnormalized posterior-mean Bloch vector of one outcome branch:
/// v = integral of n P_n(x) dn, mass = integral of P_n(x) dn.
struct BranchVector {
    OutcomeHistory history;
    Vec3 v;
    double norm = 0;
    double mass = 0;
};

/// How the final guess M(x) is formed from the outcomes.
class GuessRule {
   public:
    enum class Kind { OptimalGuess, CentralLimit, Fixed };

    static GuessRule optimal() {
        return GuessRule(Kind::OptimalGuess);
    }
    static GuessRule central_limit() {
        return GuessRule(Kind::CentralLimit);
    }
    /// `table[x]` is the guess for the full-length history with integer encoding x.
    static GuessRule fixed(std::vector<BlochVector> table);

    Kind kind() const {
        return kind_;
    }
    const std::vector<BlochVector> &table() const {
        return table_;
    }
    std::string_view name() const;
    /// Accepts "og"/"optimal" and "cl"/"central-limit".
    static GuessRule parse(std::string_view name);

   private:
    explicit GuessRule(Kind k) : kind_(k) {
    }
    Kind kind_;
    std::vector<BlochVector> table_;
};

enum class EvaluationMethod { ExactTree, ExactAggregated, ClosedFormN2 };
std::string_view method_name(EvaluationMethod m);

struct BranchReport {
    std::string id;
    double multiplicity = 1;
    double probability = 0;
    double v_norm = 0;
    BlochVector guess;
};

/// Average fidelity with per-branch diagnostics. For aggregated evaluation a
/// branch is a count class and its probability and |V| are class totals.
struct FidelityReport {
    double fidelity = 0;
    Geometry geometry = Geometry::Full;
    int copies = 0;
    EvaluationMethod method = EvaluationMethod::ExactTree;
    int quadrature_degree = 0;
    std::string guess;
    std::vector<BranchReport> branches;

    double total_probability() const;
    double total_v_norm() const;
};

/// P_n(x) = prod_k (1 + (-1)^{i_k} n . m(x_{k-1})) / 2. Requires |x| = N.
double branch_probability_density(const Vec3 &n, const StrategyTree &tree, const OutcomeHistory &x);

/// Probabilities of every continuation below node (depth, history_bits) for
/// the state n, conditioned on reaching that node. `out` has 2^(N - depth)
/// entries; entry c continues the history with bits c (next outcome = bit 0).
void subtree_probabilities(const StrategyTree &tree, int depth, std::uint64_t history_bits, const Vec3 &n,
                           std::span<double> out);

/// Exact V(x) for one full-length history. The rule must be exact to degree N+1.
BranchVector branch_vector(const StrategyTree &tree, const OutcomeHistory &x, const QuadratureRule &rule);
/// All 2^N branch vectors, in increasing history encoding.
std::vector<BranchVector> branch_vectors(const StrategyTree &tree, const QuadratureRule &rule);

/// V / |V|, or e1 when |V| < kDegenerateNorm. Planar results stay in-plane.
BlochVector optimal_guess(Geometry geometry, const Vec3 &v);

/// M_i proportional to 2 alpha_i - 1 with alpha_i = plus_i / count_i. Falls
/// back to e1 when every alpha_i is 1/2.
BlochVector central_limit_guess(const OutcomeCounts &counts, const FixedStrategy &fixed);
/// Tree form: directions along the path are grouped into axes (parallel up to
/// sign) and each axis contributes its mean signed outcome. Equals the
/// count-based form on trees built by tree_from_fixed.
BlochVector central_limit_guess(const StrategyTree &tree, const OutcomeHistory &x);

/// Guess the rule assigns to the branch x with branch vector v.
BlochVector apply_guess(const GuessRule &guess, const StrategyTree &tree, const OutcomeHistory &x, const Vec3 &v);

/// F = sum_x integral (1 + n . M(x)) / 2 P_n(x) dn, enumerating all 2^N
/// histories. Throws ResourceError above kMaxTreeBranches and
/// ValidationError if the rule is not exact to degree N+1.
FidelityReport fidelity_exact_tree(const StrategyTree &tree, const GuessRule &guess, const QuadratureRule &rule);
/// Same, with a quadrature rule of degree N+1.
FidelityReport fidelity_exact_tree(const StrategyTree &tree, const GuessRule &guess);

/// F over count classes weighted by multiplicity. Only count-based rules
/// (OptimalGuess, CentralLimit) are accepted.
FidelityReport fidelity_exact_aggregated(const FixedStrategy &fixed, const GuessRule &guess,
                                         const QuadratureRule &rule);
FidelityReport fidelity_exact_aggregated(const FixedStrategy &fixed, const GuessRule &guess);

/// A tree together with a per-branch guess table.
struct ExpandedStrategy {
    StrategyTree tree;
    GuessRule guess;
};
/// Two-stage strategy written out as a full tree: pilot nodes are copied and
/// each exploration node measures the u or v axis of its pilot branch. The
/// guess table holds two_stage_guess for every branch. Throws ResourceError
/// when N exceeds kMaxTreeCopies.
ExpandedStrategy expand_two_stage(const TwoStageStrategy &s);

/// Optimal N=2 fidelity with m(root) = z and second directions at polar
/// angles theta_00, theta_01:
///   F = (1 + (|sin(t0/2)| + |cos(t0/2)| + |sin(t1/2)| + |cos(t1/2)|) / 6) / 2.
double n2_closed_form(double theta_00, double theta_01);

}  // namespace locc

#endif
