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

#include "locc/asymptotics.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <thread>

#include "locc/builtin.h"
#include "locc/errors.h"

namespace locc {

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::PlanarCL:
            return "2d-cl";
        case Scheme::PlanarOG:
            return "2d-og";
        case Scheme::FullCL:
            return "3d-cl";
        case Scheme::FullOG:
            return "3d-og";
        case Scheme::TwoStage:
            return "two-stage";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Scheme s : {Scheme::PlanarCL, Scheme::PlanarOG, Scheme::FullCL, Scheme::FullOG, Scheme::TwoStage}) {
        if (lower == scheme_name(s)) {
            return s;
        }
    }
    throw ValidationError("unknown scheme '" + std::string(name) +
                          "' (expected 2d-cl, 2d-og, 3d-cl, 3d-og or two-stage)");
}

Geometry scheme_geometry(Scheme s) {
    return s == Scheme::PlanarCL || s == Scheme::PlanarOG ? Geometry::Planar : Geometry::Full;
}

std::vector<int> default_grid(Scheme s) {
    switch (s) {
        case Scheme::PlanarCL:
        case Scheme::PlanarOG:
            return {8, 16, 32, 64, 128, 196};
        case Scheme::FullCL:
        case Scheme::FullOG:
            return {6, 12, 24, 48, 60};
        case Scheme::TwoStage:
            return {36, 64, 100, 144};
    }
    return {};
}

namespace {

void normalize_grid(std::vector<int> &grid) {
    if (grid.empty()) {
        throw ValidationError("N grid is empty");
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
}

SeriesEntry make_entry(int n, double f) {
    return {n, f, n * (1 - f), 0};
}

}  // namespace

CoefficientSeries build_series(Scheme scheme, std::vector<int> grid, int threads, int max_copies) {
    if (scheme == Scheme::TwoStage) {
        throw ValidationError("the two-stage series is built by Monte Carlo (build_two_stage_series)");
    }
    normalize_grid(grid);
    const Geometry g = scheme_geometry(scheme);
    const int axes = g == Geometry::Planar ? 2 : 3;
    const int limit =
        max_copies > 0 ? max_copies : (g == Geometry::Planar ? kMaxPlanarSeriesCopies : kMaxFullSeriesCopies);
    for (int n : grid) {
        if (n < axes || n % axes != 0) {
            throw ValidationError("N = " + std::to_string(n) + " does not split evenly over " +
                                  std::to_string(axes) + " axes");
        }
        if (n > limit) {
            throw ResourceError("series point beyond the aggregated-evaluation budget", static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(limit));
        }
    }
    const GuessRule guess =
        scheme == Scheme::PlanarOG || scheme == Scheme::FullOG ? GuessRule::optimal() : GuessRule::central_limit();

    CoefficientSeries series{scheme, std::vector<SeriesEntry>(grid.size())};
    auto point = [&](std::size_t i) {
        const int n = grid[i];
        series.entries[i] = make_entry(n, fidelity_exact_aggregated(make_fixed_axes(g, n / axes), guess).fidelity);
    };
    int workers = threads > 0 ? threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(grid.size()));
    // Largest points first so the slowest job starts immediately.
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < grid.size(); k = next++) {
            point(grid.size() - 1 - k);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    return series;
}

int two_stage_pilot_size(int copies) {
    int n0 = static_cast<int>(std::lround(std::sqrt(static_cast<double>(copies))));
    if ((copies - n0) % 2 != 0) {
        --n0;
    }
    return std::max(n0, 1);
}

CoefficientSeries build_two_stage_series(std::vector<int> grid, const McConfig &mc, double lambda) {
    normalize_grid(grid);
    CoefficientSeries series{Scheme::TwoStage, {}};
    for (int n : grid) {
        const int n0 = two_stage_pilot_size(n);
        if (n0 >= n || (n - n0) % 2 != 0) {
            throw ValidationError("N = " + std::to_string(n) + " admits no two-stage split");
        }
        McResult r = simulate_fidelity(default_two_stage(Geometry::Full, n, n0, lambda), mc);
        SeriesEntry e = make_entry(n, r.mean);
        e.standard_error = n * r.standard_error;
        series.entries.push_back(e);
    }
    return series;
}

Extrapolation richardson_extrapolate(const CoefficientSeries &series, int order, double exponent) {
    if (order < 0) {
        throw ValidationError("extrapolation order must be >= 0");
    }
    if (!(exponent > 0)) {
        throw ValidationError("extrapolation exponent must be positive");
    }
    const auto &all = series.entries;
    const std::size_t terms = static_cast<std::size_t>(order) + 1;
    if (all.size() < terms) {
        throw ValidationError("extrapolation of order " + std::to_string(order) + " needs " + std::to_string(terms) +
                              " entries, got " + std::to_string(all.size()));
    }
    const bool weighted = std::any_of(all.begin(), all.end(), [](const auto &e) { return e.standard_error > 0; });
    std::vector<SeriesEntry> pts(weighted ? all.begin() : all.end() - static_cast<std::ptrdiff_t>(terms), all.end());
    for (const auto &e : pts) {
        if (e.copies <= 0) {
            throw ValidationError("series entries need N >= 1");
        }
        if (weighted && !(e.standard_error > 0)) {
            throw ValidationError("mixed exact and stochastic entries in one series");
        }
    }

    // value = sum_i w_i c_i with w = e0^T (A^T S A)^{-1} A^T S, S = diag(1/sigma^2)
    // (S = I for exact series, where A is square).
    const std::size_t m = pts.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(terms));
    std::vector<double> s(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double h = std::pow(static_cast<double>(pts[i].copies), -exponent);
        double p = 1;
        for (std::size_t j = 0; j < terms; ++j) {
            a[i][j] = p;
            p *= h;
        }
        if (weighted) {
            s[i] = 1 / (pts[i].standard_error * pts[i].standard_error);
        }
    }
    // Solve (A^T S A) z = e0; then w_i = s_i (A z)_i.
    std::vector<std::vector<double>> nm(terms, std::vector<double>(terms + 1, 0.0));
    for (std::size_t r = 0; r < terms; ++r) {
        for (std::size_t c = 0; c < terms; ++c) {
            for (std::size_t i = 0; i < m; ++i) {
                nm[r][c] += a[i][r] * s[i] * a[i][c];
            }
        }
        nm[r][terms] = r == 0 ? 1 : 0;
    }
    for (std::size_t col = 0; col < terms; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < terms; ++r) {
            if (std::abs(nm[r][col]) > std::abs(nm[piv][col])) {
                piv = r;
            }
        }
        if (nm[piv][col] == 0) {
            throw ConditioningError("extrapolation table is singular (repeated N?)",
                                    std::numeric_limits<double>::infinity());
        }
        std::swap(nm[col], nm[piv]);
        for (std::size_t r = 0; r < terms; ++r) {
            if (r == col) {
                continue;
            }
            const double f = nm[r][col] / nm[col][col];
            for (std::size_t c = col; c <= terms; ++c) {
                nm[r][c] -= f * nm[col][c];
            }
        }
    }
    std::vector<double> z(terms);
    for (std::size_t r = 0; r < terms; ++r) {
        z[r] = nm[r][terms] / nm[r][r];
    }
    Extrapolation out;
    out.points_used = static_cast<int>(m);
    double var = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double az = 0;
        for (std::size_t j = 0; j < terms; ++j) {
            az += a[i][j] * z[j];
        }
        const double w = s[i] * az;
        out.value += w * pts[i].coefficient;
        out.condition += std::abs(w);
        var += w * w * pts[i].standard_error * pts[i].standard_error;
    }
    out.standard_error = std::sqrt(var);
    if (!std::isfinite(out.condition) || out.condition > kMaxExtrapolationCondition) {
        throw ConditioningError("extrapolation is ill-conditioned", out.condition);
    }
    return out;
}

double analytic_coefficient(Scheme s) {
    switch (s) {
        case Scheme::PlanarCL:
            return 3.0 / 8;
        case Scheme::PlanarOG:
            return 1.0 / 4;
        case Scheme::FullCL:
            return 6.0 / 5;
        case Scheme::FullOG:
            return 13.0 / 12;
        case Scheme::TwoStage:
            return 1.0;
    }
    return 0;
}

double cm_coefficient(Scheme s) {
    return scheme_geometry(s) == Geometry::Planar ? 0.25 : 1.0;
}

double coefficient_tolerance(Scheme s) {
    if (s == Scheme::TwoStage) {
        return 0.10;
    }
    return scheme_geometry(s) == Geometry::Planar ? 0.02 : 0.05;
}

CmComparison compare_cm_bound(const CoefficientSeries &series, int order, double exponent) {
    CmComparison r;
    r.scheme = series.scheme;
    const Extrapolation ex = richardson_extrapolate(series, order, exponent);
    r.c_extrapolated = ex.value;
    r.condition = ex.condition;
    r.standard_error = ex.standard_error;
    r.cm_coefficient = cm_coefficient(series.scheme);
    r.ratio = ex.value / r.cm_coefficient;
    r.analytic = analytic_coefficient(series.scheme);
    r.tolerance = coefficient_tolerance(series.scheme);
    r.saturates = std::abs(r.ratio - 1) <= r.tolerance;
    r.pass = std::abs(ex.value / r.analytic - 1) <= r.tolerance;

    r.c_without_last = std::numeric_limits<double>::quiet_NaN();
    if (series.entries.size() > static_cast<std::size_t>(order) + 1) {
        CoefficientSeries shorter = series;
        shorter.entries.pop_back();
        try {
            r.c_without_last = richardson_extrapolate(shorter, order, exponent).value;
            r.stable = std::abs(r.c_without_last - ex.value) <= r.tolerance * r.analytic;
        } catch (const ConditioningError &) {
            r.stable = false;
        }
    }

    bool up = true, down = true;
    for (std::size_t i = 1; i < series.entries.size(); ++i) {
        const double d = series.entries[i].coefficient - series.entries[i - 1].coefficient;
        up = up && d > 0;
        down = down && d < 0;
    }
    r.trend = up ? "increasing" : down ? "decreasing" : "mixed";
    return r;
}

}  // namespace locc
