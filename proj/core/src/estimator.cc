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

#include "locc/estimator.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "locc/errors.h"

namespace locc {

namespace {

// Neumaier summation; keeps long fixed-order reductions reproducible and tight.
struct CompensatedSum {
    double sum = 0;
    double c = 0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    double value() const {
        return sum + c;
    }
};

void require_rule(const QuadratureRule &rule, Geometry geometry, int copies) {
    if (rule.geometry() != geometry) {
        throw ValidationError("quadrature geometry does not match the strategy geometry");
    }
    if (rule.exact_degree() < copies + 1) {
        throw ValidationError("quadrature exact to degree " + std::to_string(rule.exact_degree()) +
                              " but the integrand has degree " + std::to_string(copies + 1));
    }
}

void require_branch_budget(int copies) {
    std::uint64_t branches = std::uint64_t{1} << std::min(copies, 63);
    if (copies > 63 || branches > kMaxTreeBranches) {
        throw ResourceError("too many outcome branches for exact tree evaluation", branches, kMaxTreeBranches);
    }
}

}  // namespace

GuessRule GuessRule::fixed(std::vector<BlochVector> table) {
    GuessRule g(Kind::Fixed);
    g.table_ = std::move(table);
    return g;
}

std::string_view GuessRule::name() const {
    switch (kind_) {
        case Kind::OptimalGuess:
            return "og";
        case Kind::CentralLimit:
            return "cl";
        case Kind::Fixed:
            return "fixed";
    }
    return "?";
}

GuessRule GuessRule::parse(std::string_view name) {
    if (name == "og" || name == "optimal") {
        return optimal();
    }
    if (name == "cl" || name == "central-limit") {
        return central_limit();
    }
    throw ValidationError("unknown guess rule '" + std::string(name) + "' (expected og or cl)");
}

std::string_view method_name(EvaluationMethod m) {
    switch (m) {
        case EvaluationMethod::ExactTree:
            return "exact-tree";
        case EvaluationMethod::ExactAggregated:
            return "exact-aggregated";
        case EvaluationMethod::ClosedFormN2:
            return "closed-form-n2";
    }
    return "?";
}

double FidelityReport::total_probability() const {
    CompensatedSum s;
    for (const auto &b : branches) {
        s.add(b.probability);
    }
    return s.value();
}

double FidelityReport::total_v_norm() const {
    CompensatedSum s;
    for (const auto &b : branches) {
        s.add(b.v_norm);
    }
    return s.value();
}

double branch_probability_density(const Vec3 &n, const StrategyTree &tree, const OutcomeHistory &x) {
    if (x.length != tree.copies()) {
        throw ValidationError("history has " + std::to_string(x.length) + " outcomes but the strategy has " +
                              std::to_string(tree.copies()) + " copies");
    }
    double p = 1;
    for (int k = 1; k <= x.length; ++k) {
        p *= (1 + dot(n, tree.signed_direction(x, k))) / 2;
    }
    return p;
}

void subtree_probabilities(const StrategyTree &tree, int depth, std::uint64_t history_bits, const Vec3 &n,
                           std::span<double> out) {
    const int levels = tree.copies() - depth;
    out[0] = 1;
    for (int level = 0; level < levels; ++level) {
        const std::uint64_t width = std::uint64_t{1} << level;
        const int d = depth + level;
        for (std::uint64_t c = 0; c < width; ++c) {
            double ct = dot(n, tree.direction(d, history_bits | (c << depth)).vec());
            double p = out[c];
            out[c] = p * (1 + ct) / 2;
            out[c | width] = p * (1 - ct) / 2;
        }
    }
}

BranchVector branch_vector(const StrategyTree &tree, const OutcomeHistory &x, const QuadratureRule &rule) {
    require_rule(rule, tree.geometry(), tree.copies());
    BranchVector b;
    b.history = x;
    auto nodes = rule.nodes();
    auto weights = rule.weights();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        double p = weights[j] * branch_probability_density(nodes[j].vec(), tree, x);
        b.v += p * nodes[j].vec();
        b.mass += p;
    }
    b.norm = norm(b.v);
    return b;
}

std::vector<BranchVector> branch_vectors(const StrategyTree &tree, const QuadratureRule &rule) {
    require_rule(rule, tree.geometry(), tree.copies());
    require_branch_budget(tree.copies());
    const std::uint64_t leaves = tree.branch_count();
    std::vector<BranchVector> out(leaves);
    std::vector<double> probs(leaves);
    auto nodes = rule.nodes();
    auto weights = rule.weights();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const Vec3 &n = nodes[j].vec();
        subtree_probabilities(tree, 0, 0, n, probs);
        const double w = weights[j];
        for (std::uint64_t x = 0; x < leaves; ++x) {
            double p = w * probs[x];
            out[x].v += p * n;
            out[x].mass += p;
        }
    }
    for (std::uint64_t x = 0; x < leaves; ++x) {
        out[x].history = {x, tree.copies()};
        out[x].norm = norm(out[x].v);
    }
    return out;
}

BlochVector optimal_guess(Geometry geometry, const Vec3 &v) {
    Vec3 w = v;
    if (geometry == Geometry::Planar) {
        w.z = 0;
    }
    if (norm(w) < kDegenerateNorm) {
        return axis(0);
    }
    return BlochVector(w);
}

BlochVector central_limit_guess(const OutcomeCounts &counts, const FixedStrategy &fixed) {
    if (counts.plus.size() != fixed.axes.size()) {
        throw ValidationError("count class does not match the fixed strategy's axes");
    }
    Vec3 m;
    bool any = false;
    for (std::size_t i = 0; i < counts.plus.size(); ++i) {
        const int n = fixed.axes[i].count;
        const int a = counts.plus[i];
        if (a < 0 || a > n) {
            throw ValidationError("count class entry out of range");
        }
        // 2 alpha - 1 = (2a - n) / n; exact zero test on the integer numerator.
        if (2 * a != n) {
            any = true;
            m += (static_cast<double>(2 * a - n) / n) * fixed.axes[i].axis.vec();
        }
    }
    if (!any || norm(m) < kDegenerateNorm) {
        return axis(0);
    }
    return BlochVector::in_geometry(fixed.geometry, m);
}

BlochVector central_limit_guess(const StrategyTree &tree, const OutcomeHistory &x) {
    struct Group {
        Vec3 axis;
        double signed_sum = 0;
        int count = 0;
    };
    std::vector<Group> groups;
    for (int k = 1; k <= x.length; ++k) {
        const Vec3 &d = tree.direction(x.prefix(k - 1)).vec();
        const double s = x.outcome(k) == 0 ? 1.0 : -1.0;
        bool placed = false;
        for (auto &g : groups) {
            double c = dot(g.axis, d);
            if (std::abs(c) > 1 - 1e-12) {
                g.signed_sum += c > 0 ? s : -s;
                ++g.count;
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({d, s, 1});
        }
    }
    Vec3 m;
    for (const auto &g : groups) {
        m += (g.signed_sum / g.count) * g.axis;
    }
    if (norm(m) < kDegenerateNorm) {
        return axis(0);
    }
    return BlochVector::in_geometry(tree.geometry(), m);
}

BlochVector apply_guess(const GuessRule &guess, const StrategyTree &tree, const OutcomeHistory &x, const Vec3 &v) {
    switch (guess.kind()) {
        case GuessRule::Kind::OptimalGuess:
            return optimal_guess(tree.geometry(), v);
        case GuessRule::Kind::CentralLimit:
            return central_limit_guess(tree, x);
        case GuessRule::Kind::Fixed:
            if (x.bits >= guess.table().size()) {
                throw ValidationError("fixed guess table has no entry for history " + x.to_string());
            }
            return guess.table()[x.bits];
    }
    return axis(0);
}

FidelityReport fidelity_exact_tree(const StrategyTree &tree, const GuessRule &guess, const QuadratureRule &rule) {
    require_branch_budget(tree.copies());
    if (guess.kind() == GuessRule::Kind::Fixed && guess.table().size() != tree.branch_count()) {
        throw ValidationError("fixed guess table needs one entry per outcome branch");
    }
    std::vector<BranchVector> bvs = branch_vectors(tree, rule);
    FidelityReport r;
    r.geometry = tree.geometry();
    r.copies = tree.copies();
    r.method = EvaluationMethod::ExactTree;
    r.quadrature_degree = rule.exact_degree();
    r.guess = std::string(guess.name());
    r.branches.reserve(bvs.size());
    CompensatedSum f;
    for (const auto &b : bvs) {
        BlochVector m = apply_guess(guess, tree, b.history, b.v);
        f.add((b.mass + dot(m.vec(), b.v)) / 2);
        r.branches.push_back({b.history.to_string(), 1.0, b.mass, b.norm, m});
    }
    r.fidelity = f.value();
    return r;
}

FidelityReport fidelity_exact_tree(const StrategyTree &tree, const GuessRule &guess) {
    return fidelity_exact_tree(tree, guess, make_quadrature(tree.geometry(), tree.copies() + 1));
}

FidelityReport fidelity_exact_aggregated(const FixedStrategy &fixed, const GuessRule &guess,
                                         const QuadratureRule &rule) {
    fixed.validate();
    if (guess.kind() == GuessRule::Kind::Fixed) {
        throw ValidationError("aggregated evaluation needs a count-based guess rule (og or cl)");
    }
    const int copies = fixed.copies();
    require_rule(rule, fixed.geometry, copies);
    std::uint64_t classes = 1;
    for (const auto &a : fixed.axes) {
        classes *= static_cast<std::uint64_t>(a.count) + 1;
        if (classes > kMaxCountClasses) {
            throw ResourceError("too many count classes for aggregated evaluation", classes, kMaxCountClasses);
        }
    }

    const std::size_t m = fixed.axes.size();
    auto nodes = rule.nodes();
    auto weights = rule.weights();
    const std::size_t nn = nodes.size();
    // table[i][a * nn + j] = C(c_i, a) q^a (1 - q)^(c_i - a), q = (1 + n_j . e_i) / 2
    std::vector<std::vector<double>> table(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int c = fixed.axes[i].count;
        std::vector<double> binom(c + 1, 1.0);
        for (int a = 1; a <= c; ++a) {
            binom[a] = binom[a - 1] * (c - a + 1) / a;
        }
        table[i].resize((c + 1) * nn);
        for (std::size_t j = 0; j < nn; ++j) {
            double q = (1 + dot(nodes[j].vec(), fixed.axes[i].axis.vec())) / 2;
            q = std::clamp(q, 0.0, 1.0);
            for (int a = 0; a <= c; ++a) {
                table[i][a * nn + j] = binom[a] * std::pow(q, a) * std::pow(1 - q, c - a);
            }
        }
    }

    std::vector<OutcomeCounts> cls = enumerate_count_classes(fixed);
    FidelityReport r;
    r.geometry = fixed.geometry;
    r.copies = copies;
    r.method = EvaluationMethod::ExactAggregated;
    r.quadrature_degree = rule.exact_degree();
    r.guess = std::string(guess.name());
    r.branches.reserve(cls.size());
    CompensatedSum f;
    std::vector<const double *> rows(m);
    for (const auto &oc : cls) {
        for (std::size_t i = 0; i < m; ++i) {
            rows[i] = table[i].data() + oc.plus[i] * nn;
        }
        Vec3 v;
        double mass = 0;
        for (std::size_t j = 0; j < nn; ++j) {
            double p = weights[j];
            for (std::size_t i = 0; i < m; ++i) {
                p *= rows[i][j];
            }
            v += p * nodes[j].vec();
            mass += p;
        }
        BlochVector g = guess.kind() == GuessRule::Kind::OptimalGuess ? optimal_guess(fixed.geometry, v)
                                                                      : central_limit_guess(oc, fixed);
        f.add((mass + dot(g.vec(), v)) / 2);
        r.branches.push_back({oc.to_string(), oc.multiplicity, mass, norm(v), g});
    }
    r.fidelity = f.value();
    return r;
}

FidelityReport fidelity_exact_aggregated(const FixedStrategy &fixed, const GuessRule &guess) {
    return fidelity_exact_aggregated(fixed, guess, make_quadrature(fixed.geometry, fixed.copies() + 1));
}

double n2_closed_form(double theta_00, double theta_01) {
    auto term = [](double t) { return std::abs(std::sin(t / 2)) + std::abs(std::cos(t / 2)); };
    return (1 + (term(theta_00) + term(theta_01)) / 6) / 2;
}

ExpandedStrategy expand_two_stage(const TwoStageStrategy &s) {
    if (s.copies > kMaxTreeCopies) {
        throw ResourceError("two-stage tree expansion", static_cast<std::uint64_t>(s.copies), kMaxTreeCopies);
    }
    const StrategyTree &pilot = s.pilot;
    const int n0 = pilot.copies();
    const QuadratureRule rule = make_quadrature(pilot.geometry(), n0 + 1);
    std::vector<BlochVector> m0;
    std::vector<TransverseFrame> frames;
    for (const auto &b : branch_vectors(pilot, rule)) {
        m0.push_back(optimal_guess(s.geometry, b.v));
        frames.push_back(transverse_frame(s.geometry, m0.back()));
    }
    const bool planar = s.geometry == Geometry::Planar;
    auto along_u = [&](int j) { return planar || j % 2 == 0; };

    std::vector<BlochVector> directions((std::size_t{1} << s.copies) - 1);
    for (int depth = 0; depth < s.copies; ++depth) {
        for (std::uint64_t h = 0; h < (std::uint64_t{1} << depth); ++h) {
            BlochVector d;
            if (depth < n0) {
                d = pilot.direction(depth, h);
            } else {
                const TransverseFrame &f = frames[h & ((std::uint64_t{1} << n0) - 1)];
                d = BlochVector::in_geometry(s.geometry, along_u(depth - n0) ? f.u : f.v);
            }
            directions[StrategyTree::index(depth, h)] = d;
        }
    }
    std::vector<BlochVector> table(std::size_t{1} << s.copies);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        const std::uint64_t p = x & ((std::uint64_t{1} << n0) - 1);
        int plus_u = 0, plus_v = 0;
        for (int j = 0; j < s.copies - n0; ++j) {
            const int plus = static_cast<int>(1 - ((x >> (n0 + j)) & 1U));
            (along_u(j) ? plus_u : plus_v) += plus;
        }
        table[x] = two_stage_guess(s, m0[p], plus_u, plus_v);
    }
    return {StrategyTree(s.geometry, s.copies, std::move(directions)), GuessRule::fixed(std::move(table))};
}

}  // namespace locc
