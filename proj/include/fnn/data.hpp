#pragma once

// Functional-data ingestion: grid-sampled functions are mapped to Schauder
// coefficients by trapezoid quadrature against an orthonormal Fourier basis
// on [0,1], and back. CSV persistence for datasets and training metrics.
//
// All text is UTF-8 with LF line endings and '.' decimal point; reals are
// written with 17 significant digits, which round-trips doubles exactly.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fnn/space.hpp"
#include "fnn/training.hpp"

namespace fnn {

struct Grid {
    std::vector<double> points;  // strictly increasing, within [0,1]
};

inline Grid make_grid(std::vector<double> points) {
    if (points.size() < 2) throw ValidationError("Grid: needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] >= 0.0 && points[i] <= 1.0))
            throw ValidationError("Grid: points must lie in [0,1]");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw ValidationError("Grid: points must be strictly increasing");
    }
    return Grid{std::move(points)};
}

inline Grid uniform_grid(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return make_grid(std::move(t));
}

/// Orthonormal Fourier basis on [0,1]:
/// e_1 = 1, e_2m = sqrt(2) cos(2 pi m t), e_2m+1 = sqrt(2) sin(2 pi m t).
struct BasisSpec {
    enum class Kind { Fourier } kind = Kind::Fourier;
    std::size_t dim = 0;
};

inline BasisSpec fourier_basis(std::size_t dim) {
    if (dim < 1) throw ValidationError("BasisSpec: dim must be >= 1");
    return BasisSpec{BasisSpec::Kind::Fourier, dim};
}

inline double basis_value(const BasisSpec& spec, std::size_t k, double t) {
    if (k >= spec.dim) throw ValidationError("basis_value: index out of range");
    if (k == 0) return 1.0;
    const double twopi = 2.0 * 3.14159265358979323846;
    const double m = static_cast<double>((k + 1) / 2);
    return k % 2 == 1 ? std::sqrt(2.0) * std::cos(twopi * m * t)
                      : std::sqrt(2.0) * std::sin(twopi * m * t);
}

struct BasisMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;  // row-major, a[i*cols + k] = e_k(t_i)

    double operator()(std::size_t i, std::size_t k) const { return a[i * cols + k]; }
};

inline BasisMatrix eval_basis(const BasisSpec& spec, const Grid& grid) {
    BasisMatrix m{grid.points.size(), spec.dim, {}};
    m.a.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = 0; k < m.cols; ++k)
            m.a[i * m.cols + k] = basis_value(spec, k, grid.points[i]);
    return m;
}

inline std::vector<double> trapezoid_weights(const Grid& grid) {
    const std::size_t n = grid.points.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = 0.5 * (grid.points[i + 1] - grid.points[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

/// x_k = trapezoid inner product of the sampled function with e_k.
inline Vec function_to_coeffs(const std::vector<double>& values, const BasisSpec& spec,
                              const Grid& grid) {
    if (values.size() != grid.points.size())
        throw ValidationError("function_to_coeffs: values/grid length mismatch");
    const std::vector<double> w = trapezoid_weights(grid);
    Vec x(spec.dim, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double wf = w[i] * values[i];
        if (wf == 0.0) continue;
        for (std::size_t k = 0; k < spec.dim; ++k)
            x[k] += wf * basis_value(spec, k, grid.points[i]);
    }
    return x;
}

/// Pointwise sum_k x_k e_k(t_i).
inline std::vector<double> coeffs_to_function(const Vec& x, const BasisSpec& spec,
                                              const Grid& grid) {
    if (x.size() != spec.dim) throw DimensionError("coeffs_to_function: dimension mismatch");
    std::vector<double> values(grid.points.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t k = 0; k < spec.dim; ++k)
            values[i] += x[k] * basis_value(spec, k, grid.points[i]);
    return values;
}

/// Max deviation of the discrete Gram matrix from identity: a bound on the
/// per-coefficient error of the reconstruct-then-project round trip,
/// |coeffs(reconstruct(x)) - x| <= dim * gram_deviation * max|x_k|.
inline double gram_deviation(const BasisSpec& spec, const Grid& grid) {
    const BasisMatrix e = eval_basis(spec, grid);
    const std::vector<double> w = trapezoid_weights(grid);
    double dev = 0.0;
    for (std::size_t k = 0; k < spec.dim; ++k)
        for (std::size_t l = 0; l < spec.dim; ++l) {
            double g = 0.0;
            for (std::size_t i = 0; i < e.rows; ++i) g += w[i] * e(i, k) * e(i, l);
            dev = std::max(dev, std::abs(g - (k == l ? 1.0 : 0.0)));
        }
    return dev;
}

// ---------------------------------------------------------------------------
// Text formatting.

inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline double parse_number(const std::string& tok, std::size_t row, const char* what) {
    const char* s = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw ValidationError(std::string(what) + ": row " + std::to_string(row) +
                              ": not a number: '" + tok + "'");
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + ": row " + std::to_string(row) +
                              ": non-finite value rejected");
    return v;
}

inline std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dataset CSV.
//
// Two row layouts, told apart by the mandatory header:
//   v0,...,v{G-1},target   -- functional observations on a grid of G points,
//                             converted to coefficients by quadrature;
//   c0,...,c{D-1},target   -- coefficients as stored, round-tripping exactly.
// save_dataset_csv always writes the coefficient layout.

inline Dataset load_dataset_csv(const std::string& path, const BasisSpec& spec,
                                const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw IoError("load_dataset_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("load_dataset_csv: missing header row in '" + path + "'");
    const auto header = detail::split_csv_line(line);
    if (header.size() < 2 || header.back() != "target")
        throw ValidationError("load_dataset_csv: header must name value columns and 'target'");
    const bool coeff_form = header.front().rfind('c', 0) == 0;
    const std::size_t ncols = header.size();
    if (coeff_form && ncols - 1 != spec.dim)
        throw ValidationError("load_dataset_csv: coefficient column count " +
                              std::to_string(ncols - 1) + " does not match ambient dim " +
                              std::to_string(spec.dim));
    if (!coeff_form && ncols - 1 != grid.points.size())
        throw ValidationError("load_dataset_csv: value column count " +
                              std::to_string(ncols - 1) + " does not match grid size " +
                              std::to_string(grid.points.size()));
    Dataset data;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto toks = detail::split_csv_line(line);
        if (toks.size() != ncols)
            throw ValidationError("load_dataset_csv: row " + std::to_string(row) + " has " +
                                  std::to_string(toks.size()) + " columns, expected " +
                                  std::to_string(ncols));
        std::vector<double> nums(toks.size());
        for (std::size_t i = 0; i < toks.size(); ++i)
            nums[i] = detail::parse_number(toks[i], row, "load_dataset_csv");
        data.targets.push_back(nums.back());
        nums.pop_back();
        data.inputs.push_back(coeff_form ? Vec(std::move(nums))
                                         : function_to_coeffs(nums, spec, grid));
    }
    check_dataset(data, "load_dataset_csv");
    return data;
}

inline void save_dataset_csv(const std::string& path, const Dataset& data) {
    check_dataset(data, "save_dataset_csv");
    std::ofstream out(path);
    if (!out) throw IoError("save_dataset_csv: cannot open '" + path + "'");
    const std::size_t d = data.inputs.front().size();
    for (std::size_t k = 0; k < d; ++k) out << 'c' << k << ',';
    out << "target\n";
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        for (double v : data.inputs[i]) out << fmt_full(v) << ',';
        out << fmt_full(data.targets[i]) << '\n';
    }
    if (!out) throw IoError("save_dataset_csv: write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Metrics CSV: epoch, loss, optional sup_error column, optional wall_ms.
// Wall times are nondeterministic, so deterministic artifacts omit them.

inline void save_metrics_csv(const std::string& path, const std::vector<EpochStats>& history,
                             const std::vector<double>* sup_errors = nullptr,
                             bool include_wall = false) {
    if (sup_errors && sup_errors->size() != history.size())
        throw ValidationError("save_metrics_csv: sup_errors length mismatch");
    std::ofstream out(path);
    if (!out) throw IoError("save_metrics_csv: cannot open '" + path + "'");
    out << "epoch,loss";
    if (sup_errors) out << ",sup_error";
    if (include_wall) out << ",wall_ms";
    out << '\n';
    for (std::size_t i = 0; i < history.size(); ++i) {
        out << history[i].epoch << ',' << fmt_full(history[i].loss);
        if (sup_errors) out << ',' << fmt_full((*sup_errors)[i]);
        if (include_wall) out << ',' << fmt_full(history[i].wall_ms);
        out << '\n';
    }
    if (!out) throw IoError("save_metrics_csv: write failed for '" + path + "'");
}

}  // namespace fnn
