/*
 * Copyright 2026 The matrix-permanent Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "permanent/algorithms.hpp"
#include "permanent/dispatch.hpp"

namespace permanent::tuner {

inline constexpr double infeasible = std::numeric_limits<double>::infinity();

/// Columns beyond which the combinatoric algorithm is never timed.
inline constexpr std::size_t combinatoric_max_cols = 14;

struct TimingOptions {
    std::size_t trials = 5;
    /// Each trial repeats the call until it spans at least this long.
    double min_trial_seconds = 2e-3;
    /// Combinatoric cells with more m-permutations than this are skipped.
    double combinatoric_budget = 2e7;
    std::uint64_t seed = 20260101;
};

struct BenchmarkSample {
    std::size_t m = 0;
    std::size_t n = 0;
    double ratio = 0;
    AlgorithmId algorithm = AlgorithmId::Glynn;
    double median_seconds = infeasible;
    std::size_t trials = 0;
    ElementKind kind = ElementKind::Float64;

    bool feasible() const noexcept { return median_seconds != infeasible; }
};

/// Whether `alg` may be timed on an m x n matrix at all.
bool is_feasible(AlgorithmId alg, std::size_t m, std::size_t n, const TimingOptions &options);

/**
 * @brief Median per-call wall time of `alg` on random m x n matrices in [-1, 1].
 *
 * Repetitions are grown until one batch lasts min_trial_seconds, then
 * options.trials trials run, each on a fresh matrix drawn from `rng`. Infeasible cells come back with
 * median_seconds = infeasible and trials = 0.
 */
BenchmarkSample time_algorithm(AlgorithmId alg, std::size_t m, std::size_t n,
                               const TimingOptions &options, std::mt19937_64 &rng);

/**
 * @brief Times every feasible algorithm at one cell with interleaved trials.
 *
 * Each trial draws one matrix and times all algorithms on it back to back.
 * Indexed by AlgorithmId; infeasible entries are left untimed.
 */
std::array<BenchmarkSample, 3> time_cell(std::size_t m, std::size_t n, const TimingOptions &options,
                                         std::mt19937_64 &rng);

struct GridSpec {
    std::size_t n_min = 2;
    std::size_t n_max = 24;
    std::vector<double> ratios = {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0};
};

/// Distinct (m, n) cells with m = round(r n) clamped to [1, n], ordered by (n, m).
std::vector<std::pair<std::size_t, std::size_t>> grid_cells(const GridSpec &grid);

/// Times every feasible algorithm at every cell, sequentially.
std::vector<BenchmarkSample> run_benchmarks(const GridSpec &grid, const TimingOptions &options);

struct LabeledPoint {
    double r = 0;
    double n = 0;
    std::size_t m = 0;
    AlgorithmId label = AlgorithmId::Glynn;
    /// Second-best over best median time; +inf when only one algorithm ran.
    double margin_ratio = infeasible;
    /// Median seconds per algorithm (indexed by AlgorithmId), infeasible if not timed.
    std::array<double, 3> seconds = {infeasible, infeasible, infeasible};

    double time_of(AlgorithmId alg) const { return seconds[static_cast<std::size_t>(alg)]; }
};

/// Groups samples by cell; cells where nothing was feasible are dropped.
std::vector<LabeledPoint> label_samples(std::span<const BenchmarkSample> samples);

std::vector<LabeledPoint> build_label_grid(const GridSpec &grid, const TimingOptions &options);

/// Largest n such that combinatoric wins every square cell up to n; 1 if it wins none.
std::size_t detect_small_square_cutoff(std::span<const LabeledPoint> grid);

/// w_r r + w_n n + b = 0, positive side for the first class of the fit.
struct SeparatingPlane {
    double weight_r = 0;
    double weight_n = 0;
    double bias = 0;
    /// Width of the empty slab between the classes (2 / |w| for the canonical plane).
    double margin = 0;
    bool separable = true;
    std::size_t support_points = 0;

    double eval(double r, double n) const noexcept { return weight_r * r + weight_n * n + bias; }
};

struct TrainingPoint {
    double r = 0;
    double n = 0;
    bool positive = false;
};

/**
 * @brief Exact maximum-margin line between two labelled point sets in the plane.
 *
 * The optimal normal is parallel to the closest pair between the classes'
 * convex hulls, so it is one of: the difference of two opposite-class
 * points, or the perpendicular of two same-class points. Every such
 * direction is scored and the widest slab kept. If no direction separates
 * the classes, the line with the fewest misclassified points is returned
 * with separable = false. Throws UsageError unless both classes are present.
 */
SeparatingPlane fit_max_margin(std::span<const TrainingPoint> points);

/// Minimum ratio between two algorithms' times for a point to constrain a fit.
inline constexpr double near_boundary_ratio = 1.05;

/**
 * Binary training set for `positive` vs `negative`. A point whose times for
 * both algorithms are known is labelled by the faster of the two; otherwise
 * its overall label is used if it is one of the pair. Points whose two-way
 * time ratio is below `min_ratio` are dropped.
 */
std::vector<TrainingPoint> binary_training_set(std::span<const LabeledPoint> points,
                                               AlgorithmId positive, AlgorithmId negative,
                                               double min_ratio = near_boundary_ratio);

/// Hard-margin fit of `positive` against `negative` on the binary training set.
SeparatingPlane fit_hard_margin_svm(std::span<const LabeledPoint> points, AlgorithmId positive,
                                    AlgorithmId negative, double min_ratio = near_boundary_ratio);

struct Intersection {
    double r;
    double n;
};

std::optional<Intersection> intersect(const SeparatingPlane &a, const SeparatingPlane &b);

/**
 * @brief Packs the two planes and thresholds into dispatch parameters.
 *
 * plane1 (combinatoric positive) fills p1..p3, plane2 (glynn positive) fills
 * p5..p7. Throws UsageError when a plane has no training point strictly on
 * either side, i.e. its orientation cannot be confirmed from `grid`.
 */
TuningParams assemble_params(std::span<const LabeledPoint> grid, const SeparatingPlane &plane1,
                             const SeparatingPlane &plane2, std::size_t p4, std::size_t p8);

struct TuneOptions {
    GridSpec grid;
    TimingOptions timing;
    std::string host;
    /// Initial small/large regime split; refined from the planes' intersection.
    std::size_t initial_regime_boundary = 13;
    /// When set, the regime split is pinned here instead of refined.
    std::optional<std::size_t> fixed_regime_boundary;
};

struct TuneReport {
    TuningParams params;
    std::vector<LabeledPoint> points;
    SeparatingPlane plane1;
    SeparatingPlane plane2;
    std::optional<Intersection> intersection;
    std::vector<std::string> warnings;
};

/// Fits and assembles parameters from an already labelled grid.
TuneReport tune_from_points(std::vector<LabeledPoint> points, const TuneOptions &options);

/// Full pipeline: benchmark, label, fit, assemble.
TuneReport run_tuning(const TuneOptions &options);

struct ProbeOutcome {
    std::size_t m = 0;
    std::size_t n = 0;
    AlgorithmId chosen = AlgorithmId::Glynn;
    AlgorithmId fastest = AlgorithmId::Glynn;
    double chosen_seconds = infeasible;
    double fastest_seconds = infeasible;

    double slowdown() const noexcept { return chosen_seconds / fastest_seconds; }
};

/// Times every feasible algorithm at each probe shape and records opt's choice.
std::vector<ProbeOutcome> probe_dispatch(const TuningParams &params,
                                         std::span<const std::pair<std::size_t, std::size_t>> shapes,
                                         const TimingOptions &options);

/// `count` random (m, n) shapes with n in [n_min, n_max] and 1 <= m <= n.
std::vector<std::pair<std::size_t, std::size_t>> random_probe_shapes(std::size_t count,
                                                                     const GridSpec &grid,
                                                                     std::uint64_t seed);

std::string current_host();
std::string utc_timestamp();

}  // namespace permanent::tuner
