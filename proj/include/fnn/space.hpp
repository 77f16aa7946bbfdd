#pragma once

// Coefficient-vector model of a separable Frechet/Hilbert space.
//
// Elements live at a fixed ambient truncation dim D: a vector of Schauder
// coefficients (x_1, ..., x_D). Functionals pair by coefficient dot product,
// operators act as dense D x D matrices, and the basis projections Pi_n
// truncate coefficients beyond n. The topology is generated by one of two
// seminorm families: the Hilbert norm (constant in k) or the graded
// weighted-sup family p_k(x) = max_n n^k |x_n|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnn {

using Vec = std::vector<double>;

/// Invalid inputs, broken invariants, malformed documents. CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible ambient dimensions.
class DimensionError : public ValidationError {
public:
    explicit DimensionError(const std::string& msg) : ValidationError(msg) {}
};

/// Numerical failure (divergence, failed checks). CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem / stream failure. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_finite(const Vec& x, const char* what) {
    for (double v : x)
        if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite entry");
}

inline void check_nonempty(const Vec& x, const char* what) {
    if (x.empty()) throw ValidationError(std::string(what) + ": dim must be >= 1");
}

inline void check_same_dim(const Vec& a, const Vec& b, const char* what) {
    if (a.size() != b.size())
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double nrm2(const Vec& x) { return std::sqrt(dot(x, x)); }

inline void axpy(double a, const Vec& x, Vec& y) {
    check_same_dim(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline Vec scaled(const Vec& x, double a) {
    Vec r(x);
    for (double& v : r) v *= a;
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "sub");
    Vec r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "add");
    Vec r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

/// k-th basis vector e_k (0-based index) at the given ambient dim.
inline Vec basis_vector(std::size_t dim, std::size_t k) {
    if (k >= dim) throw ValidationError("basis_vector: index out of range");
    Vec e(dim, 0.0);
    e[k] = 1.0;
    return e;
}

/// Dense square operator on coefficients, row-major storage.
struct Mat {
    std::size_t n = 0;
    std::vector<double> a;  // n*n entries, a[i*n + j]

    Mat() = default;
    explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {
        if (dim == 0) throw ValidationError("Mat: dim must be >= 1");
    }

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static Mat identity(std::size_t dim) {
        Mat m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline void check_finite(const Mat& m, const char* what) {
    for (double v : m.a)
        if (!std::isfinite(v)) throw ValidationError(std::string(what) + ": non-finite entry");
}

inline Vec apply_operator(const Mat& A, const Vec& x) {
    if (A.n != x.size()) throw DimensionError("apply_operator: dimension mismatch");
    Vec y(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i) {
        double s = 0.0;
        const double* row = &A.a[i * A.n];
        for (std::size_t j = 0; j < A.n; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline Vec apply_transpose(const Mat& A, const Vec& x) {
    if (A.n != x.size()) throw DimensionError("apply_transpose: dimension mismatch");
    Vec y(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i) {
        const double v = x[i];
        if (v == 0.0) continue;
        const double* row = &A.a[i * A.n];
        for (std::size_t j = 0; j < A.n; ++j) y[j] += row[j] * v;
    }
    return y;
}

// Seminorm families generating the topology.
enum class SeminormFamily { HilbertNorm, GradedSup };

/// p_k(x). HilbertNorm is constant in k; GradedSup is max_n n^k |x_n|
/// (n 1-based), an increasing family since n^k <= n^(k+1).
inline double seminorm(SeminormFamily fam, unsigned k, const Vec& x) {
    if (k < 1) throw ValidationError("seminorm: k must be >= 1");
    if (fam == SeminormFamily::HilbertNorm) return nrm2(x);
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double w = std::pow(static_cast<double>(i + 1), static_cast<double>(k));
        m = std::max(m, w * std::abs(x[i]));
    }
    return m;
}

/// Canonical metric d(x,y) = sum_k 2^-k p_k(x-y)/(1+p_k(x-y)), truncated at
/// `terms`. Truncation error is at most 2^-terms independently of x and y.
inline double metric(SeminormFamily fam, const Vec& x, const Vec& y, unsigned terms = 64) {
    check_same_dim(x, y, "metric");
    if (terms < 1) throw ValidationError("metric: terms must be >= 1");
    Vec diff = sub(x, y);
    double d = 0.0;
    double pow2 = 1.0;
    for (unsigned k = 1; k <= terms; ++k) {
        pow2 *= 0.5;
        double p = seminorm(fam, k, diff);
        double ratio = std::isinf(p) ? 1.0 : p / (1.0 + p);
        d += pow2 * ratio;
    }
    return d;
}

/// Canonical pairing <ell, x> between the dual and the space.
inline double pairing(const Vec& ell, const Vec& x) {
    if (ell.size() != x.size()) throw DimensionError("pairing: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < ell.size(); ++i) s += ell[i] * x[i];
    return s;
}

/// Pi_n: keep coefficients 1..n, zero the rest. Idempotent; Pi_dim = id.
inline Vec project(const Vec& x, std::size_t n) {
    if (n < 1 || n > x.size()) throw ValidationError("project: level out of range");
    Vec r(x);
    std::fill(r.begin() + static_cast<std::ptrdiff_t>(n), r.end(), 0.0);
    return r;
}

/// Pi_n A Pi_n: rows and columns beyond n zeroed.
inline Mat project_operator(const Mat& A, std::size_t n) {
    if (n < 1 || n > A.n) throw ValidationError("project_operator: level out of range");
    Mat r(A.n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = A(i, j);
    return r;
}

enum class HalfSpaceLabel { Plus, Minus, Zero };

/// Side of the shifted hyperplane {<psi,x> = t}, with a dead zone of width
/// tol around it.
inline HalfSpaceLabel half_space_classify(const Vec& psi, const Vec& x, double t,
                                          double tol = 1e-12) {
    if (tol < 0) throw ValidationError("half_space_classify: tol must be >= 0");
    if (nrm2(psi) == 0.0) throw ValidationError("half_space_classify: zero functional");
    double s = pairing(psi, x) - t;
    if (s > tol) return HalfSpaceLabel::Plus;
    if (s < -tol) return HalfSpaceLabel::Minus;
    return HalfSpaceLabel::Zero;
}

enum class HalfSpaceSide { GE, LE, EQ };

/// Hilbert distance from x to {<psi,y> >= c} / {<= c} / {= c} for unit psi.
inline double distance_to_halfspace(const Vec& psi, double c, HalfSpaceSide side, const Vec& x) {
    double norm = nrm2(psi);
    if (std::abs(norm - 1.0) > 1e-9)
        throw ValidationError("distance_to_halfspace: psi must have unit norm");
    double s = pairing(psi, x);
    switch (side) {
        case HalfSpaceSide::GE: return std::max(c - s, 0.0);
        case HalfSpaceSide::LE: return std::max(s - c, 0.0);
        case HalfSpaceSide::EQ: return std::abs(s - c);
    }
    return 0.0;  // unreachable
}

}  // namespace fnn
