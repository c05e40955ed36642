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

#include "permanent/tuner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <set>

#include <sys/utsname.h>
#include <unistd.h>

#include "permanent/combinatorics.hpp"

namespace permanent::tuner {

bool is_feasible(AlgorithmId alg, std::size_t m, std::size_t n, const TimingOptions &options) {
    if (m == 0 || n == 0 || m > n) {
        return false;
    }
    if (alg == AlgorithmId::Combinatoric) {
        return n <= combinatoric_max_cols &&
               falling_factorial_f64(n, m) <= options.combinatoric_budget;
    }
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

Matrix<double> random_matrix(std::size_t m, std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> data(m * n);
    for (double &x : data) {
        x = dist(rng);
    }
    return Matrix<double>(m, n, std::move(data));
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double per_call_seconds(AlgorithmId alg, const Matrix<double> &a, std::size_t reps) {
    volatile double sink = 0;
    const auto start = Clock::now();
    for (std::size_t k = 0; k < reps; ++k) {
        sink = compute<double>(a, alg).value;
    }
    (void)sink;
    return std::max(seconds_since(start), 1e-12) / static_cast<double>(reps);
}

// Repetitions per trial so one trial spans at least min_trial_seconds.
std::size_t calibrate(AlgorithmId alg, const Matrix<double> &warm, const TimingOptions &options) {
    std::size_t reps = 1;
    for (;;) {
        const double seconds = per_call_seconds(alg, warm, reps) * static_cast<double>(reps);
        if (seconds >= options.min_trial_seconds || reps >= 10000000) {
            return reps;
        }
        const double grow = seconds > 0 ? 1.4 * options.min_trial_seconds / seconds : 10.0;
        reps = static_cast<std::size_t>(
            std::clamp(std::ceil(static_cast<double>(reps) * std::min(grow, 10.0)),
                       static_cast<double>(reps + 1), 1e7));
    }
}

BenchmarkSample blank_sample(AlgorithmId alg, std::size_t m, std::size_t n) {
    BenchmarkSample sample;
    sample.m = m;
    sample.n = n;
    sample.ratio = static_cast<double>(m) / static_cast<double>(n);
    sample.algorithm = alg;
    return sample;
}

}  // namespace

BenchmarkSample time_algorithm(AlgorithmId alg, std::size_t m, std::size_t n,
                               const TimingOptions &options, std::mt19937_64 &rng) {
    BenchmarkSample sample = blank_sample(alg, m, n);
    if (!is_feasible(alg, m, n, options)) {
        return sample;
    }
    if (options.trials == 0) {
        throw UsageError("time_algorithm needs at least one trial");
    }
    const std::size_t reps = calibrate(alg, random_matrix(m, n, rng), options);
    std::vector<double> per_call;
    for (std::size_t t = 0; t < options.trials; ++t) {
        per_call.push_back(per_call_seconds(alg, random_matrix(m, n, rng), reps));
    }
    sample.median_seconds = median(per_call);
    sample.trials = options.trials;
    return sample;
}

std::array<BenchmarkSample, 3> time_cell(std::size_t m, std::size_t n, const TimingOptions &options,
                                         std::mt19937_64 &rng) {
    if (options.trials == 0) {
        throw UsageError("time_cell needs at least one trial");
    }
    std::array<BenchmarkSample, 3> samples;
    std::array<std::size_t, 3> reps{};
    std::array<std::vector<double>, 3> per_call;
    const Matrix<double> warm = random_matrix(m, n, rng);
    for (AlgorithmId alg : all_algorithms) {
        const auto k = static_cast<std::size_t>(alg);
        samples[k] = blank_sample(alg, m, n);
        if (is_feasible(alg, m, n, options)) {
            reps[k] = calibrate(alg, warm, options);
        }
    }
    for (std::size_t t = 0; t < options.trials; ++t) {
        const Matrix<double> a = random_matrix(m, n, rng);
        for (AlgorithmId alg : all_algorithms) {
            const auto k = static_cast<std::size_t>(alg);
            if (reps[k] != 0) {
                per_call[k].push_back(per_call_seconds(alg, a, reps[k]));
            }
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        if (!per_call[k].empty()) {
            samples[k].median_seconds = median(per_call[k]);
            samples[k].trials = options.trials;
        }
    }
    return samples;
}

std::vector<std::pair<std::size_t, std::size_t>> grid_cells(const GridSpec &grid) {
    std::set<std::pair<std::size_t, std::size_t>> cells;  // (n, m)
    for (std::size_t n = std::max<std::size_t>(grid.n_min, 1); n <= grid.n_max; ++n) {
        for (double r : grid.ratios) {
            if (!(r > 0 && r <= 1)) {
                throw UsageError("grid ratios must lie in (0, 1]");
            }
            const auto m = static_cast<std::size_t>(
                std::clamp<long>(std::lround(r * static_cast<double>(n)), 1, static_cast<long>(n)));
            cells.emplace(n, m);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto &[n, m] : cells) {
        out.emplace_back(m, n);
    }
    return out;
}

std::vector<BenchmarkSample> run_benchmarks(const GridSpec &grid, const TimingOptions &options) {
    std::mt19937_64 rng(options.seed);
    std::vector<BenchmarkSample> samples;
    for (const auto &[m, n] : grid_cells(grid)) {
        for (const BenchmarkSample &s : time_cell(m, n, options, rng)) {
            samples.push_back(s);
        }
    }
    return samples;
}

std::vector<LabeledPoint> label_samples(std::span<const BenchmarkSample> samples) {
    std::map<std::pair<std::size_t, std::size_t>, LabeledPoint> cells;  // keyed by (n, m)
    for (const BenchmarkSample &s : samples) {
        LabeledPoint &p = cells[{s.n, s.m}];
        p.m = s.m;
        p.n = static_cast<double>(s.n);
        p.r = static_cast<double>(s.m) / static_cast<double>(s.n);
        p.seconds[static_cast<std::size_t>(s.algorithm)] = s.median_seconds;
    }
    std::vector<LabeledPoint> out;
    for (auto &[key, p] : cells) {
        std::array<std::size_t, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return p.seconds[a] < p.seconds[b]; });
        if (p.seconds[order[0]] == infeasible) {
            continue;
        }
        p.label = static_cast<AlgorithmId>(order[0]);
        p.margin_ratio = p.seconds[order[1]] / p.seconds[order[0]];
        out.push_back(p);
    }
    return out;
}

std::vector<LabeledPoint> build_label_grid(const GridSpec &grid, const TimingOptions &options) {
    const auto samples = run_benchmarks(grid, options);
    return label_samples(samples);
}

std::size_t detect_small_square_cutoff(std::span<const LabeledPoint> grid) {
    std::map<std::size_t, AlgorithmId> squares;
    for (const LabeledPoint &p : grid) {
        if (p.m == static_cast<std::size_t>(p.n)) {
            squares[p.m] = p.label;
        }
    }
    std::size_t cutoff = 1;
    for (const auto &[n, label] : squares) {
        if (n == 1) {
            continue;
        }
        if (label != AlgorithmId::Combinatoric || n != cutoff + 1) {
            break;
        }
        cutoff = n;
    }
    return cutoff;
}

// Max-margin fit ---------------------------------------------------------------

namespace {

struct Direction {
    double x;
    double y;
};

std::vector<Direction> candidate_directions(std::span<const TrainingPoint> pos,
                                            std::span<const TrainingPoint> neg) {
    std::vector<Direction> dirs;
    dirs.reserve(pos.size() * neg.size() + pos.size() * pos.size() + neg.size() * neg.size());
    for (const TrainingPoint &p : pos) {
        for (const TrainingPoint &q : neg) {
            if (p.r != q.r || p.n != q.n) {
                dirs.push_back({p.r - q.r, p.n - q.n});
            }
        }
    }
    for (const auto side : {pos, neg}) {
        for (std::size_t i = 0; i < side.size(); ++i) {
            for (std::size_t j = i + 1; j < side.size(); ++j) {
                const double dx = side[j].r - side[i].r;
                const double dy = side[j].n - side[i].n;
                dirs.push_back({-dy, dx});
                dirs.push_back({dy, -dx});
            }
        }
    }
    for (Direction &d : dirs) {
        const double len = std::hypot(d.x, d.y);
        d.x /= len;
        d.y /= len;
    }
    return dirs;
}

double project(const Direction &u, const TrainingPoint &p) { return u.x * p.r + u.y * p.n; }

SeparatingPlane plane_from(const Direction &u, double threshold, double width) {
    // Canonical scaling: support points sit at w.x + b = +-1.
    const double scale = 2.0 / width;
    SeparatingPlane plane;
    plane.weight_r = u.x * scale;
    plane.weight_n = u.y * scale;
    plane.bias = -threshold * scale;
    plane.margin = width;
    return plane;
}

SeparatingPlane fewest_errors(std::span<const TrainingPoint> points,
                              std::vector<Direction> dirs) {
    dirs.push_back({1, 0});
    dirs.push_back({-1, 0});
    dirs.push_back({0, 1});
    dirs.push_back({0, -1});
    std::size_t best_errors = points.size() + 1;
    double best_gap = -1;
    Direction best_dir{0, 1};
    double best_threshold = 0;
    std::vector<std::pair<double, bool>> proj(points.size());
    for (const Direction &u : dirs) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            proj[i] = {project(u, points[i]), points[i].positive};
        }
        std::sort(proj.begin(), proj.end());
        std::size_t pos_total = 0;
        for (const auto &pr : proj) {
            pos_total += pr.second;
        }
        // Threshold below element k: positives below it and negatives above it are errors.
        std::size_t pos_below = 0;
        std::size_t neg_below = 0;
        for (std::size_t k = 0; k <= proj.size(); ++k) {
            const bool boundary = k == 0 || k == proj.size() || proj[k].first > proj[k - 1].first;
            if (boundary) {
                const std::size_t neg_above = (proj.size() - pos_total) - neg_below;
                const std::size_t errors = pos_below + neg_above;
                const double lo = k == 0 ? proj.front().first - 1 : proj[k - 1].first;
                const double hi = k == proj.size() ? proj.back().first + 1 : proj[k].first;
                const double gap = hi - lo;
                if (errors < best_errors || (errors == best_errors && gap > best_gap)) {
                    best_errors = errors;
                    best_gap = gap;
                    best_dir = u;
                    best_threshold = 0.5 * (lo + hi);
                }
            }
            if (k < proj.size()) {
                (proj[k].second ? pos_below : neg_below) += 1;
            }
        }
    }
    SeparatingPlane plane = plane_from(best_dir, best_threshold, best_gap);
    plane.margin = 0;
    plane.separable = false;
    return plane;
}

}  // namespace

SeparatingPlane fit_max_margin(std::span<const TrainingPoint> points) {
    std::vector<TrainingPoint> pos;
    std::vector<TrainingPoint> neg;
    std::set<std::tuple<double, double, bool>> seen;
    for (const TrainingPoint &p : points) {
        if (seen.emplace(p.r, p.n, p.positive).second) {
            (p.positive ? pos : neg).push_back(p);
        }
    }
    if (pos.empty() || neg.empty()) {
        throw UsageError("hard-margin fit needs at least one point of each class");
    }
    const std::vector<Direction> dirs = candidate_directions(pos, neg);

    double best_width = 0;
    Direction best_dir{0, 0};
    double best_threshold = 0;
    for (const Direction &u : dirs) {
        double lowest_pos = std::numeric_limits<double>::infinity();
        for (const TrainingPoint &p : pos) {
            lowest_pos = std::min(lowest_pos, project(u, p));
        }
        double highest_neg = -std::numeric_limits<double>::infinity();
        for (const TrainingPoint &q : neg) {
            highest_neg = std::max(highest_neg, project(u, q));
        }
        const double width = lowest_pos - highest_neg;
        if (width > best_width) {
            best_width = width;
            best_dir = u;
            best_threshold = 0.5 * (lowest_pos + highest_neg);
        }
    }
    if (!(best_width > 1e-12)) {
        std::vector<TrainingPoint> unique(pos);
        unique.insert(unique.end(), neg.begin(), neg.end());
        return fewest_errors(unique, dirs);
    }
    SeparatingPlane plane = plane_from(best_dir, best_threshold, best_width);
    for (const auto *side : {&pos, &neg}) {
        for (const TrainingPoint &p : *side) {
            if (std::abs(std::abs(project(best_dir, p) - best_threshold) - 0.5 * best_width) <
                1e-9 * (1 + best_width)) {
                ++plane.support_points;
            }
        }
    }
    return plane;
}

std::vector<TrainingPoint> binary_training_set(std::span<const LabeledPoint> points,
                                               AlgorithmId positive, AlgorithmId negative,
                                               double min_ratio) {
    std::vector<TrainingPoint> out;
    for (const LabeledPoint &p : points) {
        const double tp = p.time_of(positive);
        const double tn = p.time_of(negative);
        if (tp != infeasible && tn != infeasible) {
            const double ratio = std::max(tp, tn) / std::min(tp, tn);
            if (ratio >= min_ratio) {
                out.push_back({p.r, p.n, tp < tn});
            }
        } else if ((p.label == positive || p.label == negative) && p.margin_ratio >= min_ratio &&
                   tp == infeasible && tn == infeasible) {
            out.push_back({p.r, p.n, p.label == positive});
        } else if (tp != infeasible && tn == infeasible) {
            // Only the positive algorithm could run here; it wins by default.
            out.push_back({p.r, p.n, true});
        } else if (tn != infeasible && tp == infeasible) {
            out.push_back({p.r, p.n, false});
        }
    }
    return out;
}

SeparatingPlane fit_hard_margin_svm(std::span<const LabeledPoint> points, AlgorithmId positive,
                                    AlgorithmId negative, double min_ratio) {
    const auto training = binary_training_set(points, positive, negative, min_ratio);
    return fit_max_margin(training);
}

std::optional<Intersection> intersect(const SeparatingPlane &a, const SeparatingPlane &b) {
    const double det = a.weight_r * b.weight_n - b.weight_r * a.weight_n;
    const double scale = std::hypot(a.weight_r, a.weight_n) * std::hypot(b.weight_r, b.weight_n);
    if (scale == 0 || std::abs(det) <= 1e-12 * scale) {
        return std::nullopt;
    }
    const double r = (-a.bias * b.weight_n + b.bias * a.weight_n) / det;
    const double n = (-a.weight_r * b.bias + b.weight_r * a.bias) / det;
    return Intersection{r, n};
}

namespace {

// Orientation check of a plane against its regime's training points: more
// points on their own side than on the wrong one, and at least one off the plane.
void check_orientation(const SeparatingPlane &plane, std::span<const TrainingPoint> training,
                       const char *name) {
    std::size_t agree = 0;
    std::size_t disagree = 0;
    for (const TrainingPoint &p : training) {
        const double h = plane.eval(p.r, p.n);
        if (h == 0) {
            continue;
        }
        ((h > 0) == p.positive ? agree : disagree) += 1;
    }
    if (agree == 0 && disagree == 0) {
        throw UsageError(std::string(name) + ": no training point lies strictly on either side");
    }
    if (disagree > agree) {
        throw UsageError(std::string(name) + ": plane orientation is reversed");
    }
}

SeparatingPlane constant_plane(bool positive) {
    SeparatingPlane plane;
    plane.weight_n = positive ? 1.0 : -1.0;
    plane.bias = positive ? 1.0 : -1.0;
    return plane;
}

bool is_constant(const SeparatingPlane &plane) {
    return plane.weight_r == 0 && plane.support_points == 0 && plane.margin == 0 &&
           plane.separable;
}

std::vector<LabeledPoint> regime(std::span<const LabeledPoint> points, std::size_t boundary,
                                 bool small) {
    std::vector<LabeledPoint> out;
    for (const LabeledPoint &p : points) {
        if ((p.n <= static_cast<double>(boundary)) == small) {
            out.push_back(p);
        }
    }
    return out;
}

// Hard-margin fit, or a constant decision when one class is absent.
SeparatingPlane fit_regime(std::span<const LabeledPoint> points, AlgorithmId positive,
                           AlgorithmId negative, std::vector<std::string> &warnings) {
    const auto training = binary_training_set(points, positive, negative);
    const bool any_pos = std::any_of(training.begin(), training.end(),
                                     [](const TrainingPoint &p) { return p.positive; });
    const bool any_neg = std::any_of(training.begin(), training.end(),
                                     [](const TrainingPoint &p) { return !p.positive; });
    if (!any_pos || !any_neg) {
        warnings.push_back(std::string("no ") + to_string(any_pos ? negative : positive) +
                           " points against " + to_string(any_pos ? positive : negative) +
                           "; using a constant decision");
        return constant_plane(any_pos);
    }
    SeparatingPlane plane = fit_max_margin(training);
    if (!plane.separable) {
        warnings.push_back(std::string(to_string(positive)) + " vs " + to_string(negative) +
                           " is not linearly separable; using the fewest-errors line");
    }
    return plane;
}

}  // namespace

TuningParams assemble_params(std::span<const LabeledPoint> grid, const SeparatingPlane &plane1,
                             const SeparatingPlane &plane2, std::size_t p4, std::size_t p8) {
    if (p8 < 2) {
        throw UsageError("regime boundary p8 must be at least 2");
    }
    if (!is_constant(plane1)) {
        check_orientation(plane1,
                          binary_training_set(regime(grid, p8, true), AlgorithmId::Combinatoric,
                                              AlgorithmId::Glynn),
                          "first plane");
    }
    if (!is_constant(plane2)) {
        check_orientation(plane2,
                          binary_training_set(regime(grid, p8, false), AlgorithmId::Glynn,
                                              AlgorithmId::Ryser),
                          "second plane");
    }
    TuningParams params;
    params.p1 = plane1.weight_r;
    params.p2 = plane1.weight_n;
    params.p3 = plane1.bias;
    params.p4 = static_cast<double>(std::min(p4, p8));
    params.p5 = plane2.weight_r;
    params.p6 = plane2.weight_n;
    params.p7 = plane2.bias;
    params.p8 = static_cast<double>(p8);
    params.source = ParamSource::MachineTuned;
    validate(params);
    return params;
}

TuneReport tune_from_points(std::vector<LabeledPoint> points, const TuneOptions &options) {
    TuneReport report;
    report.points = std::move(points);
    const std::size_t n_hi = std::max<std::size_t>(options.grid.n_max, 2);
    std::size_t boundary = std::clamp<std::size_t>(
        options.fixed_regime_boundary.value_or(options.initial_regime_boundary), 2, n_hi);

    // The planes are fitted per regime and the regime split follows their
    // intersection, so iterate to a fixed point.
    std::set<std::size_t> tried;
    for (int iteration = 0; iteration < 16; ++iteration) {
        tried.insert(boundary);
        std::vector<std::string> warnings;
        report.plane1 = fit_regime(regime(report.points, boundary, true), AlgorithmId::Combinatoric,
                                   AlgorithmId::Glynn, warnings);
        report.plane2 = fit_regime(regime(report.points, boundary, false), AlgorithmId::Glynn,
                                   AlgorithmId::Ryser, warnings);
        report.warnings = warnings;
        report.intersection = intersect(report.plane1, report.plane2);
        if (options.fixed_regime_boundary) {
            break;
        }
        if (!report.intersection || !std::isfinite(report.intersection->n)) {
            report.warnings.push_back("planes do not intersect; keeping regime boundary " +
                                      std::to_string(boundary));
            break;
        }
        const auto next = static_cast<std::size_t>(std::clamp<double>(
            std::round(report.intersection->n), 2.0, static_cast<double>(n_hi)));
        if (next == boundary) {
            break;
        }
        if (tried.count(next)) {
            report.warnings.push_back("regime boundary oscillates; keeping " +
                                      std::to_string(boundary));
            break;
        }
        boundary = next;
    }

    const std::size_t p4 = detect_small_square_cutoff(report.points);
    report.params = assemble_params(report.points, report.plane1, report.plane2, p4, boundary);
    report.params.host = options.host.empty() ? current_host() : options.host;
    report.params.created_at = utc_timestamp();
    return report;
}

TuneReport run_tuning(const TuneOptions &options) {
    return tune_from_points(build_label_grid(options.grid, options.timing), options);
}

std::vector<ProbeOutcome> probe_dispatch(
    const TuningParams &params, std::span<const std::pair<std::size_t, std::size_t>> shapes,
    const TimingOptions &options) {
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<ProbeOutcome> out;
    for (const auto &[rows, cols] : shapes) {
        const std::size_t m = std::min(rows, cols);
        const std::size_t n = std::max(rows, cols);
        ProbeOutcome probe;
        probe.m = m;
        probe.n = n;
        probe.chosen = select_algorithm(m, n, params);
        std::array<double, 3> seconds{};
        const auto samples = time_cell(m, n, options, rng);
        for (std::size_t k = 0; k < 3; ++k) {
            seconds[k] = samples[k].median_seconds;
        }
        const auto best = std::min_element(seconds.begin(), seconds.end());
        probe.fastest = static_cast<AlgorithmId>(best - seconds.begin());
        probe.fastest_seconds = *best;
        probe.chosen_seconds = seconds[static_cast<std::size_t>(probe.chosen)];
        out.push_back(probe);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> random_probe_shapes(std::size_t count,
                                                                     const GridSpec &grid,
                                                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> order(std::max<std::size_t>(grid.n_min, 1),
                                                     grid.n_max);
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = order(rng);
        std::uniform_int_distribution<std::size_t> rows(1, n);
        shapes.emplace_back(rows(rng), n);
    }
    return shapes;
}

std::string current_host() {
    char name[256] = {};
    std::string host = gethostname(name, sizeof name - 1) == 0 ? name : "unknown";
    struct utsname info {};
    if (uname(&info) == 0) {
        host += std::string(" ") + info.sysname + "-" + info.machine;
    }
    return host;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

}  // namespace permanent::tuner
