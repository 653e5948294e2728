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

#ifndef LOCC_ASYMPTOTICS_H
#define LOCC_ASYMPTOTICS_H

#include <string>
#include <string_view>
#include <vector>

#include "locc/bloch.h"
#include "locc/estimator.h"
#include "locc/montecarlo.h"

namespace locc {

/// Largest N for exact series, per geometry.
inline constexpr int kMaxPlanarSeriesCopies = 200;
inline constexpr int kMaxFullSeriesCopies = 60;
/// Extrapolations whose weights sum (in absolute value) above this are refused.
inline constexpr double kMaxExtrapolationCondition = 1e6;

enum class Scheme { PlanarCL, PlanarOG, FullCL, FullOG, TwoStage };

/// "2d-cl", "2d-og", "3d-cl", "3d-og", "two-stage".
std::string_view scheme_name(Scheme s);
/// Inverse of scheme_name; case-insensitive. Throws ValidationError.
Scheme parse_scheme(std::string_view name);
Geometry scheme_geometry(Scheme s);

struct SeriesEntry {
    int copies = 0;
    double fidelity = 0;
    /// c_N = N (1 - F).
    double coefficient = 0;
    /// Of the coefficient; zero for exact entries.
    double standard_error = 0;
};

struct CoefficientSeries {
    Scheme scheme = Scheme::PlanarOG;
    /// Sorted by N.
    std::vector<SeriesEntry> entries;
};

/// Default N grids: {8, 16, 32, 64, 128, 196} in 2D, {6, 12, 24, 48, 60} in
/// 3D, {36, 64, 100, 144} for the two-stage scheme.
std::vector<int> default_grid(Scheme s);

/// Exact fidelities of the fixed canonical-axes scheme with the scheme's
/// guess rule, by aggregated evaluation. Every N must be even (2D) or a
/// multiple of 3 (3D). Points are evaluated on up to `threads` workers
/// (0 = hardware concurrency). Throws ResourceError when an N exceeds
/// `max_copies` (0 = the per-geometry default).
CoefficientSeries build_series(Scheme scheme, std::vector<int> grid, int threads = 0, int max_copies = 0);

/// Pilot size used for two-stage series points: round(sqrt(N)), lowered by
/// one if needed so that N - N0 is even.
int two_stage_pilot_size(int copies);

/// Monte Carlo series for the full-geometry two-stage scheme (default pilot,
/// given lambda). Entries carry standard errors.
CoefficientSeries build_two_stage_series(std::vector<int> grid, const McConfig &mc, double lambda = 1.0);

struct Extrapolation {
    double value = 0;
    /// Sum of |w_i| where value = sum_i w_i c_i.
    double condition = 0;
    /// Propagated from entry standard errors; zero for exact series.
    double standard_error = 0;
    int points_used = 0;
};

/// Estimates lim c_N assuming c_N = c + sum_{j=1..order} a_j h^j with
/// h = N^(-exponent).
///
/// Exact series use the last order+1 entries (polynomial extrapolation to
/// h = 0). Series with standard errors are fitted by weighted least squares
/// over all entries. Throws ValidationError with fewer than order+1 entries
/// and ConditioningError when the condition exceeds kMaxExtrapolationCondition.
Extrapolation richardson_extrapolate(const CoefficientSeries &series, int order, double exponent = 0.5);

/// Known 1/N coefficients: 3/8, 1/4, 6/5, 13/12 and 1 (two-stage).
double analytic_coefficient(Scheme s);
/// Collective-measurement coefficient: 1/4 in 2D, 1 in 3D.
double cm_coefficient(Scheme s);
/// Relative acceptance tolerance: 2% in 2D, 5% in 3D, 10% for two-stage.
double coefficient_tolerance(Scheme s);

struct CmComparison {
    Scheme scheme = Scheme::PlanarOG;
    double c_extrapolated = 0;
    double condition = 0;
    double standard_error = 0;
    double cm_coefficient = 0;
    /// c_extrapolated / cm_coefficient.
    double ratio = 0;
    double analytic = 0;
    double tolerance = 0;
    /// |ratio - 1| <= tolerance.
    bool saturates = false;
    /// c_extrapolated within tolerance of the analytic coefficient.
    bool pass = false;
    /// Extrapolation with the largest-N entry removed, and whether it stays
    /// within tolerance of c_extrapolated. NaN / false with too few entries.
    double c_without_last = 0;
    bool stable = false;
    /// "increasing", "decreasing" or "mixed" for the sequence of c_N.
    std::string trend;
};

CmComparison compare_cm_bound(const CoefficientSeries &series, int order = 2, double exponent = 0.5);

}  // namespace locc

#endif
