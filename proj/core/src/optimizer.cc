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

#include "locc/optimizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>
#include <utility>

#include "locc/builtin.h"
#include "locc/errors.h"
#include "locc/rng.h"

namespace locc {

void OptimizationConfig::validate() const {
    if (!(f_tolerance > 0)) {
        throw ValidationError("optimizer f_tolerance must be > 0");
    }
    if (restarts < 1) {
        throw ValidationError("optimizer restarts must be >= 1");
    }
    if (max_iterations < 1) {
        throw ValidationError("optimizer max_iterations must be >= 1");
    }
}

double brent_maximize(const std::function<double(double)> &f, double lo, double hi, double tol, double &best,
                      int max_evals) {
    // Brent's fminbound on -f.
    constexpr double kGold = 0.3819660112501051;
    double a = lo, b = hi;
    double x = a + kGold * (b - a), w = x, v = x;
    double fx = -f(x), fw = fx, fv = fx;
    double d = 0, e = 0;
    for (int it = 1; it < max_evals; ++it) {
        double m = 0.5 * (a + b);
        double tol1 = tol + 1.5e-8 * std::abs(x);
        double tol2 = 2 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
            break;
        }
        bool golden = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2 * (q - r);
            if (q > 0) {
                p = -p;
            }
            q = std::abs(q);
            double etemp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = x < m ? tol1 : -tol1;
                }
                golden = false;
            }
        }
        if (golden) {
            e = (x >= m ? a : b) - x;
            d = kGold * e;
        }
        double u = std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
        double fu = -f(u);
        if (fu <= fx) {
            if (u >= x) {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    best = -fx;
    return x;
}

std::vector<double> nelder_mead_maximize(const std::function<double(const std::vector<double> &)> &f,
                                         std::vector<double> start, double step, double f_tol, int max_evals,
                                         double &best) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += step;
    }
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = f(simplex[i]);
        ++evals;
    }
    std::vector<std::size_t> idx(n + 1);
    while (evals < max_evals) {
        for (std::size_t i = 0; i <= n; ++i) {
            idx[i] = i;
        }
        // Descending: idx[0] best, idx[n] worst.
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
        if (values[idx[0]] - values[idx[n]] < f_tol) {
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += simplex[idx[i]][k] / static_cast<double>(n);
            }
        }
        auto along = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) {
                p[k] = centroid[k] + t * (simplex[idx[n]][k] - centroid[k]);
            }
            return p;
        };
        std::vector<double> xr = along(-1);
        double fr = f(xr);
        ++evals;
        if (fr > values[idx[0]]) {
            std::vector<double> xe = along(-2);
            double fe = f(xe);
            ++evals;
            if (fe > fr) {
                simplex[idx[n]] = xe;
                values[idx[n]] = fe;
            } else {
                simplex[idx[n]] = xr;
                values[idx[n]] = fr;
            }
        } else if (fr > values[idx[n - 1]]) {
            simplex[idx[n]] = xr;
            values[idx[n]] = fr;
        } else {
            bool outside = fr > values[idx[n]];
            std::vector<double> xc = along(outside ? -0.5 : 0.5);
            double fc = f(xc);
            ++evals;
            if (fc > std::max(fr, values[idx[n]])) {
                simplex[idx[n]] = xc;
                values[idx[n]] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 1; i <= n; ++i) {
                    auto &p = simplex[idx[i]];
                    for (std::size_t k = 0; k < n; ++k) {
                        p[k] = simplex[idx[0]][k] + 0.5 * (p[k] - simplex[idx[0]][k]);
                    }
                    values[idx[i]] = f(p);
                    ++evals;
                }
            }
        }
    }
    std::size_t arg = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (values[i] > values[arg]) {
            arg = i;
        }
    }
    best = values[arg];
    return simplex[arg];
}

namespace {

// Fidelity contribution of the branches below one node, as a function of
// that node's direction. Everything above the node is folded into
// per-quadrature-node prefix weights.
class SubtreeObjective {
   public:
    SubtreeObjective(StrategyTree &tree, const QuadratureRule &rule, const GuessRule &guess)
        : tree_(tree), rule_(rule), guess_(guess), prefix_(rule.size()) {
        probs_.resize(tree.branch_count());
        v_.resize(tree.branch_count());
        mass_.resize(tree.branch_count());
    }

    void focus(int depth, std::uint64_t history_bits) {
        depth_ = depth;
        bits_ = history_bits;
        auto nodes = rule_.nodes();
        auto weights = rule_.weights();
        OutcomeHistory h{history_bits, depth};
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            double p = weights[j];
            for (int k = 1; k <= depth; ++k) {
                p *= (1 + dot(nodes[j].vec(), tree_.signed_direction(h, k))) / 2;
            }
            prefix_[j] = p;
        }
    }

    const BlochVector &current() const {
        return tree_.direction(depth_, bits_);
    }

    double eval(const BlochVector &d) {
        tree_.set_direction(depth_, bits_, d);
        const std::size_t width = std::size_t{1} << (tree_.copies() - depth_);
        std::span<double> probs(probs_.data(), width);
        std::fill(v_.begin(), v_.begin() + width, Vec3{});
        std::fill(mass_.begin(), mass_.begin() + width, 0.0);
        auto nodes = rule_.nodes();
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (prefix_[j] == 0) {
                continue;
            }
            const Vec3 &n = nodes[j].vec();
            subtree_probabilities(tree_, depth_, bits_, n, probs);
            for (std::size_t c = 0; c < width; ++c) {
                double p = prefix_[j] * probs[c];
                v_[c] += p * n;
                mass_[c] += p;
            }
        }
        double total = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (guess_.kind() == GuessRule::Kind::OptimalGuess) {
                total += (mass_[c] + norm(v_[c])) / 2;
            } else {
                OutcomeHistory x{bits_ | (static_cast<std::uint64_t>(c) << depth_), tree_.copies()};
                BlochVector m = apply_guess(guess_, tree_, x, v_[c]);
                total += (mass_[c] + dot(m.vec(), v_[c])) / 2;
            }
        }
        return total;
    }

   private:
    StrategyTree &tree_;
    const QuadratureRule &rule_;
    const GuessRule &guess_;
    int depth_ = 0;
    std::uint64_t bits_ = 0;
    std::vector<double> prefix_;
    std::vector<double> probs_;
    std::vector<Vec3> v_;
    std::vector<double> mass_;
};

BlochVector on_circle(const Vec3 &d, const Vec3 &t, double s) {
    return BlochVector(std::cos(s) * d + std::sin(s) * t);
}

// Line search along the great circle through the focused node's direction
// with tangent t. Returns the new contribution; never accepts a worse point.
double line_search(SubtreeObjective &obj, const Vec3 &t, bool scan, double current) {
    const BlochVector start = obj.current();
    const Vec3 d = start.vec();
    auto g = [&](double s) { return obj.eval(on_circle(d, t, s)); };
    double lo = -0.25, hi = 0.25;
    double best_s = 0, best_f = current;
    if (scan) {
        constexpr int kScan = 12;
        const double step = 2 * std::numbers::pi / kScan;
        for (int k = 1; k < kScan; ++k) {
            double s = -std::numbers::pi + step * k;
            if (k == kScan / 2) {
                continue;  // s = 0, already known
            }
            double f = g(s);
            if (f > best_f) {
                best_f = f;
                best_s = s;
            }
        }
        lo = best_s - step;
        hi = best_s + step;
    }
    double f_brent = 0;
    double s_brent = brent_maximize(g, lo, hi, 1e-10, f_brent);
    if (f_brent > best_f) {
        best_f = f_brent;
        best_s = s_brent;
    }
    obj.eval(best_s == 0 ? start : on_circle(d, t, best_s));
    return best_f;
}

BlochVector random_direction(Geometry g, Xoshiro256 &rng) {
    double phi = 2 * std::numbers::pi * rng.uniform();
    if (g == Geometry::Planar) {
        return BlochVector(std::cos(phi), std::sin(phi), 0.0);
    }
    double z = 2 * rng.uniform() - 1;
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    return BlochVector(r * std::cos(phi), r * std::sin(phi), z);
}

BlochVector gauge_root(Geometry g) {
    return g == Geometry::Planar ? axis(0) : axis(2);
}

// Root along z and the 0-branch second direction in the xz-plane.
void impose_gauge(StrategyTree &tree) {
    if (tree.geometry() == Geometry::Planar) {
        // Rotate about z so the root lands on e1.
        const Vec3 &r = tree.direction(0, 0).vec();
        double angle = -std::atan2(r.y, r.x);
        tree = tree.rotated(Rotation::about({0, 0, 1}, angle));
        tree.set_direction(0, 0, axis(0));
        return;
    }
    const Vec3 r = tree.direction(0, 0).vec();
    Vec3 ax = cross(r, Vec3{0, 0, 1});
    double s = norm(ax);
    if (s > 1e-15) {
        tree = tree.rotated(Rotation::about(ax, std::atan2(s, r.z)));
    } else if (r.z < 0) {
        tree = tree.rotated(Rotation::about({1, 0, 0}, std::numbers::pi));
    }
    tree.set_direction(0, 0, axis(2));
    if (tree.copies() >= 2) {
        const Vec3 &c = tree.direction(1, 0).vec();
        if (std::hypot(c.x, c.y) > 1e-15) {
            tree = tree.rotated(Rotation::about({0, 0, 1}, -std::atan2(c.y, c.x)));
        }
        Vec3 c2 = tree.direction(1, 0).vec();
        c2.y = 0;
        if (norm(c2) > 0) {
            tree.set_direction(1, 0, BlochVector(c2));
        }
    }
}

struct SearchOutcome {
    StrategyTree tree;
    double fidelity;
    int sweeps;
    bool converged;
};

SearchOutcome local_search(StrategyTree tree, const GuessRule &guess, const QuadratureRule &rule,
                           const OptimizationConfig &cfg) {
    const Geometry g = tree.geometry();
    const bool fixed = cfg.gauge == Gauge::FixRoot;
    if (fixed) {
        impose_gauge(tree);
    }
    SubtreeObjective obj(tree, rule, guess);
    auto total = [&] {
        obj.focus(0, 0);
        return obj.eval(tree.direction(0, 0));
    };
    auto sweep_once = [&](bool scan) {
        for (int depth = 0; depth < tree.copies(); ++depth) {
            for (std::uint64_t h = 0; h < (std::uint64_t{1} << depth); ++h) {
                if (fixed && depth == 0) {
                    continue;
                }
                obj.focus(depth, h);
                double cur = obj.eval(obj.current());
                const Vec3 d = obj.current().vec();
                if (g == Geometry::Planar) {
                    line_search(obj, Vec3{-d.y, d.x, 0}, scan, cur);
                } else if (fixed && depth == 1 && h == 0) {
                    // Gauge: stay in the xz-plane.
                    line_search(obj, cross(Vec3{0, 1, 0}, d), scan, cur);
                } else {
                    Vec3 t1 = any_orthogonal(d);
                    cur = line_search(obj, t1, scan, cur);
                    line_search(obj, cross(d, t1), scan, cur);
                }
            }
        }
    };

    // The first sweeps scan each great circle globally; later sweeps refine
    // locally. A stall is only accepted after a confirming scan sweep.
    constexpr int kScanSweeps = 2;
    double f = total();
    int sweeps = 0;
    bool converged = false;
    bool confirm = false;
    while (sweeps < cfg.max_iterations) {
        const bool scan = sweeps < kScanSweeps || confirm;
        sweep_once(scan);
        ++sweeps;
        double next = total();
        double gain = next - f;
        f = std::max(f, next);
        if (gain < cfg.f_tolerance) {
            if (scan) {
                converged = true;
                break;
            }
            confirm = true;
        } else {
            confirm = false;
        }
    }
    if (fixed) {
        impose_gauge(tree);
    }
    double exact = fidelity_exact_tree(tree, guess, rule).fidelity;
    return {std::move(tree), exact, sweeps, converged};
}

StrategyTree random_tree(Geometry g, int copies, Xoshiro256 &rng) {
    std::vector<BlochVector> dirs;
    dirs.reserve((std::size_t{1} << copies) - 1);
    for (std::size_t i = 0; i < (std::size_t{1} << copies) - 1; ++i) {
        dirs.push_back(random_direction(g, rng));
    }
    return StrategyTree(g, copies, std::move(dirs));
}

void require_budget(int copies, int limit) {
    if (copies < 1) {
        throw ValidationError("number of copies must be >= 1");
    }
    if (copies > limit) {
        throw ResourceError("tree optimization beyond the copy budget", static_cast<std::uint64_t>(copies),
                            static_cast<std::uint64_t>(limit));
    }
}

int worker_count(int requested, int jobs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    int n = requested > 0 ? requested : std::max(hw, 1);
    return std::clamp(n, 1, jobs);
}

}  // namespace

OptimizationResult optimize_tree_from(const StrategyTree &initial, const GuessRule &guess,
                                      const OptimizationConfig &cfg) {
    cfg.validate();
    require_budget(initial.copies(), kMaxOptimizedCopies);
    QuadratureRule rule = make_quadrature(initial.geometry(), initial.copies() + 1);
    SearchOutcome s = local_search(initial, guess, rule, cfg);
    return {std::move(s.tree), s.fidelity, s.sweeps, 0, s.converged, {s.fidelity}};
}

OptimizationResult optimize_tree(Geometry geometry, int copies, const GuessRule &guess,
                                 const OptimizationConfig &cfg) {
    cfg.validate();
    require_budget(copies, kMaxOptimizedCopies);
    QuadratureRule rule = make_quadrature(geometry, copies + 1);
    std::vector<std::optional<SearchOutcome>> outcomes(cfg.restarts);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int r = next++; r < cfg.restarts; r = next++) {
            Xoshiro256 rng(cfg.seed, static_cast<std::uint64_t>(r));
            outcomes[r] = local_search(random_tree(geometry, copies, rng), guess, rule, cfg);
        }
    };
    const int workers = worker_count(cfg.threads, cfg.restarts);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    int best = 0;
    std::vector<double> fs;
    for (int r = 0; r < cfg.restarts; ++r) {
        fs.push_back(outcomes[r]->fidelity);
        if (outcomes[r]->fidelity > outcomes[best]->fidelity) {
            best = r;
        }
    }
    SearchOutcome &b = *outcomes[best];
    return {std::move(b.tree), b.fidelity, b.sweeps, best, b.converged, std::move(fs)};
}

OptimizationResult optimize_one_step_adaptive(Geometry geometry, int copies, const OptimizationConfig &cfg) {
    cfg.validate();
    require_budget(copies, kMaxGreedyCopies);
    const GuessRule og = GuessRule::optimal();
    StrategyTree tree = StrategyTree::uniform(geometry, copies, gauge_root(geometry));

    // Deterministic candidate set for the per-node global search.
    std::vector<BlochVector> candidates;
    if (geometry == Geometry::Planar) {
        for (int k = 0; k < 72; ++k) {
            double phi = 2 * std::numbers::pi * k / 72;
            candidates.emplace_back(std::cos(phi), std::sin(phi), 0.0);
        }
    } else {
        constexpr int kFib = 400;
        const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
        for (int k = 0; k < kFib; ++k) {
            double z = 1 - (2 * k + 1.0) / kFib;
            double r = std::sqrt(1 - z * z);
            candidates.emplace_back(r * std::cos(golden * k), r * std::sin(golden * k), z);
        }
    }

    bool converged = true;
    int iterations = 0;
    for (int depth = 1; depth < copies; ++depth) {
        // Stop-after-(depth+1) fidelity only involves the first depth+1 levels.
        std::vector<BlochVector> prefix(tree.directions().begin(),
                                        tree.directions().begin() + ((std::size_t{1} << (depth + 1)) - 1));
        StrategyTree partial(geometry, depth + 1, std::move(prefix));
        QuadratureRule rule = make_quadrature(geometry, depth + 2);
        SubtreeObjective obj(partial, rule, og);
        for (std::uint64_t h = 0; h < (std::uint64_t{1} << depth); ++h) {
            obj.focus(depth, h);
            std::vector<std::pair<double, std::size_t>> scored;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                scored.emplace_back(obj.eval(candidates[i]), i);
            }
            std::stable_sort(scored.begin(), scored.end(),
                             [](const auto &a, const auto &b) { return a.first > b.first; });
            double best_f = -1;
            BlochVector best_d;
            for (std::size_t top = 0; top < std::min<std::size_t>(4, scored.size()); ++top) {
                obj.eval(candidates[scored[top].second]);
                double f = scored[top].first;
                bool settled = false;
                for (int round = 0; round < cfg.max_iterations; ++round) {
                    ++iterations;
                    const Vec3 d = obj.current().vec();
                    double before = f;
                    if (geometry == Geometry::Planar) {
                        f = line_search(obj, Vec3{-d.y, d.x, 0}, false, f);
                    } else {
                        Vec3 t1 = any_orthogonal(d);
                        f = line_search(obj, t1, false, f);
                        f = line_search(obj, cross(d, t1), false, f);
                    }
                    if (f - before < cfg.f_tolerance) {
                        settled = true;
                        break;
                    }
                }
                converged = converged && settled;
                if (f > best_f + 1e-13) {
                    best_f = f;
                    best_d = obj.current();
                }
            }
            obj.eval(best_d);
            tree.set_direction(depth, h, best_d);
        }
    }
    QuadratureRule rule = make_quadrature(geometry, copies + 1);
    double f = fidelity_exact_tree(tree, og, rule).fidelity;
    return {std::move(tree), f, iterations, 0, converged, {f}};
}

double n4_ansatz_fidelity(double alpha, double beta, double gamma, const QuadratureRule &rule) {
    return fidelity_exact_tree(n4_ansatz_tree(alpha, beta, gamma), GuessRule::optimal(), rule).fidelity;
}

double n4_ansatz_fidelity(double alpha, double beta, double gamma) {
    return n4_ansatz_fidelity(alpha, beta, gamma, make_quadrature(Geometry::Full, 5));
}

AnsatzOptimum optimize_n4_ansatz() {
    const QuadratureRule rule = make_quadrature(Geometry::Full, 5);
    auto f = [&](const std::vector<double> &p) { return n4_ansatz_fidelity(p[0], p[1], p[2], rule); };
    constexpr int kGrid = 12;
    std::vector<double> best_p{0, 0, 0};
    double best = -1;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            for (int k = 0; k < kGrid; ++k) {
                std::vector<double> p{std::numbers::pi * i / kGrid, 2 * std::numbers::pi * j / kGrid,
                                      2 * std::numbers::pi * k / kGrid};
                double v = f(p);
                if (v > best) {
                    best = v;
                    best_p = p;
                }
            }
        }
    }
    double value = 0;
    std::vector<double> p = nelder_mead_maximize(f, best_p, 0.1, 1e-15, 4000, value);
    return {p[0], p[1], p[2], value};
}

std::vector<FidelityTableRow> optimal_fidelity_table(Geometry geometry, int max_copies, const OptimizationConfig &cfg,
                                                     int budget) {
    require_budget(max_copies, std::min(budget, kMaxOptimizedCopies));
    std::vector<FidelityTableRow> rows;
    for (int n = 1; n <= max_copies; ++n) {
        OptimizationResult r = optimize_tree(geometry, n, GuessRule::optimal(), cfg);
        rows.push_back({n, r.fidelity, r.converged});
    }
    return rows;
}

}  // namespace locc
