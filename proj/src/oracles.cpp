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

#include "permanent/oracles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "permanent/combinatorics.hpp"

namespace permanent::oracles {

std::variant<std::int64_t, double> ones_permanent(std::size_t m, std::size_t n) {
    if (m > n) {
        std::swap(m, n);
    }
    unsigned __int128 value = 1;
    for (std::size_t k = n - m + 1; k <= n; ++k) {
        value *= k;
        if (value > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
            return falling_factorial_f64(n, m);
        }
    }
    return static_cast<std::int64_t>(value);
}

Matrix<double> cauchy_matrix(const CauchySpec &spec) {
    const std::size_t n = spec.order();
    Matrix<double> c(n, spec.y.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < spec.y.size(); ++j) {
            c(i, j) = 1.0 / (spec.x[i] + spec.y[j]);
        }
    }
    return c;
}

namespace {

struct LuFactor {
    std::vector<double> lu;  // row-major, unit lower triangle implied
    std::vector<std::size_t> pivot;
    std::size_t n = 0;
    int sign = 1;
    double smallest_pivot = std::numeric_limits<double>::infinity();
};

LuFactor lu_factor(const Matrix<double> &a) {
    if (!a.is_square()) {
        throw ShapeError("LU factorisation needs a square matrix");
    }
    LuFactor f;
    f.n = a.rows();
    f.lu.assign(a.data().begin(), a.data().end());
    f.pivot.resize(f.n);
    std::iota(f.pivot.begin(), f.pivot.end(), std::size_t{0});
    const std::size_t n = f.n;
    auto at = [&](std::size_t i, std::size_t j) -> double & { return f.lu[i * n + j]; };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(at(i, k)) > std::abs(at(p, k))) {
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(at(k, j), at(p, j));
            }
            std::swap(f.pivot[k], f.pivot[p]);
            f.sign = -f.sign;
        }
        const double pivot = at(k, k);
        f.smallest_pivot = std::min(f.smallest_pivot, std::abs(pivot));
        if (pivot == 0) {
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = at(i, k) / pivot;
            at(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) -= factor * at(k, j);
            }
        }
    }
    return f;
}

double max_abs(const Matrix<double> &a) {
    double out = 0;
    for (double x : a.data()) {
        out = std::max(out, std::abs(x));
    }
    return out;
}

}  // namespace

double determinant(const Matrix<double> &a) {
    const LuFactor f = lu_factor(a);
    double det = f.sign;
    for (std::size_t i = 0; i < f.n; ++i) {
        det *= f.lu[i * f.n + i];
    }
    return det;
}

double condition_number(const Matrix<double> &a) {
    const LuFactor f = lu_factor(a);
    const std::size_t n = f.n;
    if (f.smallest_pivot == 0) {
        return std::numeric_limits<double>::infinity();
    }
    double norm_a = 0;
    double norm_inv = 0;
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += std::abs(a(i, j));
        }
        norm_a = std::max(norm_a, sum);

        // Solve A x = e_j with P A = L U.
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = f.pivot[i] == j ? 1.0 : 0.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                col[i] -= f.lu[i * n + k] * col[k];
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k) {
                col[i] -= f.lu[i * n + k] * col[k];
            }
            col[i] /= f.lu[i * n + i];
        }
        double inv_sum = 0;
        for (double v : col) {
            inv_sum += std::abs(v);
        }
        norm_inv = std::max(norm_inv, inv_sum);
    }
    const double cond = norm_a * norm_inv;
    return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

CauchySpec sample_cauchy(std::size_t n, std::size_t attempts, std::uint64_t seed) {
    if (n == 0 || attempts == 0) {
        throw UsageError("sample_cauchy needs n >= 1 and attempts >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xdist(0.25, 0.75);
    std::uniform_real_distribution<double> ydist(-0.75, -0.25);
    CauchySpec best;
    CauchySpec draw;
    draw.x.resize(n);
    draw.y.resize(n);
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        for (double &v : draw.x) {
            v = xdist(rng);
        }
        for (double &v : draw.y) {
            v = ydist(rng);
        }
        bool pole = false;
        for (double xi : draw.x) {
            for (double yj : draw.y) {
                pole |= xi + yj == 0;
            }
        }
        draw.condition = pole ? std::numeric_limits<double>::infinity()
                              : condition_number(cauchy_matrix(draw));
        if (best.x.empty() || draw.condition < best.condition) {
            best = draw;
        }
    }
    return best;
}

double borchardt_permanent(const CauchySpec &spec) {
    const Matrix<double> c = cauchy_matrix(spec);
    const LuFactor f = lu_factor(c);
    if (f.smallest_pivot < 1e3 * macheps * max_abs(c)) {
        throw NumericError("Cauchy matrix is numerically singular");
    }
    std::vector<double> squared;
    squared.reserve(c.data().size());
    for (double v : c.data()) {
        squared.push_back(v * v);
    }
    const Matrix<double> hadamard(c.rows(), c.cols(), std::move(squared));
    double det_c = f.sign;
    for (std::size_t i = 0; i < f.n; ++i) {
        det_c *= f.lu[i * f.n + i];
    }
    return determinant(hadamard) / det_c;
}

double digits_lost(long double evaluated, long double truth) {
    if (truth == 0) {
        throw NumericError("digits_lost is undefined for a zero reference value");
    }
    if (evaluated == truth) {
        return digits_floor;
    }
    const long double rel = std::fabs(evaluated - truth) / std::fabs(truth);
    const double d = static_cast<double>(std::log10(rel) - std::log10(static_cast<long double>(macheps)));
    return std::max(d, digits_floor);
}

double digits_lost(const Complex &evaluated, const Complex &truth) {
    if (truth == Complex(0)) {
        throw NumericError("digits_lost is undefined for a zero reference value");
    }
    if (evaluated == truth) {
        return digits_floor;
    }
    const double rel = std::abs(evaluated - truth) / std::abs(truth);
    return std::max(std::log10(rel) - std::log10(macheps), digits_floor);
}

const char *to_string(Family family) {
    switch (family) {
    case Family::Ones:
        return "ones";
    case Family::Identity:
        return "identity";
    case Family::Cauchy:
        return "cauchy";
    }
    return "?";
}

namespace {

long double ones_truth(std::size_t m, std::size_t n) {
    long double value = 1;
    for (std::size_t k = n - m + 1; k <= n; ++k) {
        value *= static_cast<long double>(k);
    }
    return value;
}

std::optional<double> score(const Matrix<std::int64_t> &a, AlgorithmId alg, ElementKind kind,
                            long double truth) {
    if (kind == ElementKind::Int64) {
        const auto r = compute<std::int64_t, std::int64_t>(a, alg);
        if (r.overflowed) {
            return std::nullopt;
        }
        return digits_lost(static_cast<long double>(r.value), truth);
    }
    const auto r = compute<double>(convert<double>(a), alg);
    if (!std::isfinite(r.value)) {
        return std::nullopt;
    }
    return digits_lost(static_cast<long double>(r.value), truth);
}

}  // namespace

std::vector<PrecisionRecord> run_precision_suite(const PrecisionOptions &options) {
    std::vector<PrecisionRecord> records;
    const std::size_t n_min = std::max<std::size_t>(options.n_min, 1);
    auto allowed = [&](AlgorithmId alg, std::size_t m, std::size_t n) {
        return alg != AlgorithmId::Combinatoric ||
               (n <= options.combinatoric_max_cols &&
                falling_factorial_f64(n, m) <= options.combinatoric_budget);
    };
    for (Family family : options.families) {
        std::vector<CauchySpec> specs;
        if (family == Family::Cauchy) {
            for (std::size_t n = n_min; n <= options.n_max; ++n) {
                specs.push_back(sample_cauchy(n, options.cauchy_attempts, options.seed + n));
            }
        }
        for (AlgorithmId alg : options.algorithms) {
            for (std::size_t n = n_min; n <= options.n_max; ++n) {
                if (family == Family::Cauchy) {
                    if (!allowed(alg, n, n)) {
                        continue;
                    }
                    const CauchySpec &spec = specs[n - n_min];
                    PrecisionRecord rec{family, alg, n, n, ElementKind::Float64, std::nullopt};
                    const double truth = borchardt_permanent(spec);
                    const auto r = compute<double>(cauchy_matrix(spec), alg);
                    if (std::isfinite(r.value) && std::isfinite(truth)) {
                        rec.digits = digits_lost(static_cast<long double>(r.value),
                                                 static_cast<long double>(truth));
                    }
                    records.push_back(rec);
                    continue;
                }
                for (std::size_t m = 1; m <= n; ++m) {
                    if (!allowed(alg, m, n)) {
                        continue;
                    }
                    const Matrix<std::int64_t> a = family == Family::Ones
                                                       ? ones_matrix<std::int64_t>(m, n)
                                                       : identity_matrix<std::int64_t>(m, n);
                    const long double truth = family == Family::Ones ? ones_truth(m, n) : 1.0L;
                    for (ElementKind kind : options.kinds) {
                        if (kind == ElementKind::ComplexFloat64) {
                            continue;
                        }
                        records.push_back({family, alg, m, n, kind, score(a, alg, kind, truth)});
                    }
                }
            }
        }
    }
    return records;
}

void write_precision_csv(std::ostream &out, const std::vector<PrecisionRecord> &records) {
    out << "family,algorithm,m,n,kind,digits_lost,overflow\n";
    for (const PrecisionRecord &r : records) {
        out << to_string(r.family) << ',' << to_string(r.algorithm) << ',' << r.m << ',' << r.n
            << ',' << to_string(r.kind) << ',';
        if (r.digits) {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, *r.digits);
            out.write(buf, res.ptr - buf);
        }
        out << ',' << (r.overflow() ? 1 : 0) << '\n';
    }
}

}  // namespace permanent::oracles
