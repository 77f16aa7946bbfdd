#pragma once

// Catalog of activation functions sigma: X -> X on the coefficient model,
// their Jacobians, and empirical checkers for the separating property,
// Lipschitz constants and von Neumann boundedness.
//
// All variants are built from piecewise-linear scalar sigmoids, so the
// separating limits are reached exactly at finite lambda and the Jacobians
// are explicit. Kink derivatives use the one-sided derivative from the right.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fnn/space.hpp"

namespace fnn {

// ---------------------------------------------------------------------------
// Scalar sigmoids: beta(0) = 0, beta(+inf) = 1, beta(-inf) = 0, Lip <= 1.

enum class ScalarSigmoid { Ramp, SmoothRamp };

inline double ramp01(double t) { return std::clamp(t, 0.0, 1.0); }
inline double ramp01_slope(double t) { return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0; }

inline double sigmoid_value(ScalarSigmoid s, double t) {
    if (s == ScalarSigmoid::Ramp) return ramp01(t);
    return t > 0.0 ? t / (1.0 + t) : 0.0;
}

inline double sigmoid_slope(ScalarSigmoid s, double t) {
    if (s == ScalarSigmoid::Ramp) return ramp01_slope(t);
    if (t > 0.0) return 1.0 / ((1.0 + t) * (1.0 + t));
    return t == 0.0 ? 1.0 : 0.0;
}

inline std::vector<double> sigmoid_kinks(ScalarSigmoid s) {
    if (s == ScalarSigmoid::Ramp) return {0.0, 1.0};
    return {0.0};
}

// ---------------------------------------------------------------------------
// Variant parameter blocks.

/// sigma(x) = F_eps,1(x) u_+ + F_eps,-1(x) u_- + F_eps,0(x) u_0 with
/// F_eps(x) = max(1 - d(x,Y)/eps, 0) for Y in {psi>=1}, {psi<=-1}, {psi=0}.
/// psi unit norm; eps < 1/4 keeps the three supports disjoint.
struct SeparatingBump {
    Vec psi;
    double eps = 0.2;
    Vec u_plus, u_minus, u_zero;
    bool operator==(const SeparatingBump&) const = default;
};

/// sigma(x) = U(x) x + I_ge(x) u_geq + I_le(x) u_leq, with U the radial ramp
/// clamp(R+1-|x|, 0, 1) and I_ge/I_le the Lipschitz indicator approximations
/// of {psi >= R+2} and {psi <= -R-2}. Acts as the identity on |x| <= R.
struct ReluLike {
    Vec psi;
    double radius = 1.0;
    double eps = 0.5;
    Vec u_geq, u_leq;
    bool operator==(const ReluLike&) const = default;
};

/// sigma(x) = beta(<psi,x>) z.
struct RankOne {
    ScalarSigmoid beta = ScalarSigmoid::Ramp;
    Vec psi;
    Vec z;
    bool operator==(const RankOne&) const = default;
};

/// sigma(x) = b1(x_1) e_1 + b2(x_2) e_2 + b3(x_1) e_3 with the fixed triple
/// b1 = clamp(t,-1,1), b2 = 1, b3 = -clamp(t,0,1) - 2 clamp(t,-1,0).
/// Limits (e1+e2-e3, -e1+e2+2e3, e2) are linearly independent.
struct ThreeCoord {
    bool operator==(const ThreeCoord&) const = default;
};

/// sigma(x) = sum_{j=1..J} beta_j(<psi,x>) z_j.
struct TruncatedSum {
    std::vector<ScalarSigmoid> betas;
    Vec psi;
    std::vector<Vec> zs;
    bool operator==(const TruncatedSum&) const = default;
};

/// sigma(x)_k = sigma_hat(x_k); sigma_hat(0) = 0 keeps sigma(0) in the space.
struct CoordinateWise {
    ScalarSigmoid sigma_hat = ScalarSigmoid::Ramp;
    bool operator==(const CoordinateWise&) const = default;
};

namespace detail {

/// Is v in the span of the given vectors, up to a relative tolerance?
/// Modified Gram-Schmidt; vectors below tolerance are dropped.
inline bool in_span(const Vec& v, const std::vector<const Vec*>& basis, double rtol = 1e-9) {
    std::vector<Vec> ortho;
    for (const Vec* b : basis) {
        Vec r = *b;
        for (const Vec& q : ortho) axpy(-dot(q, r), q, r);
        double n = nrm2(r);
        if (n > rtol * (nrm2(*b) + 1.0)) {
            for (double& e : r) e /= n;
            ortho.push_back(std::move(r));
        }
    }
    Vec r = v;
    for (const Vec& q : ortho) axpy(-dot(q, r), q, r);
    return nrm2(r) <= rtol * (nrm2(v) + 1.0);
}

inline void require_unit(const Vec& psi, const char* what) {
    if (std::abs(nrm2(psi) - 1.0) > 1e-9)
        throw ValidationError(std::string(what) + ": psi must have unit norm");
}

inline void require_nonzero(const Vec& v, const char* what) {
    if (nrm2(v) == 0.0) throw ValidationError(std::string(what) + ": vector must be nonzero");
}

}  // namespace detail

// ---------------------------------------------------------------------------

class Activation {
public:
    using Variant =
        std::variant<SeparatingBump, ReluLike, RankOne, ThreeCoord, TruncatedSum, CoordinateWise>;

    /// Validating constructor: checks dimensions and the per-variant
    /// invariants (unit psi, eps ranges, span/independence conditions,
    /// sigma_hat(0) = 0). Throws ValidationError on violation.
    Activation(std::size_t dim, Variant v) : dim_(dim), v_(std::move(v)) { validate(); }

    const Variant& variant() const { return v_; }
    bool operator==(const Activation&) const = default;
    std::size_t dim() const { return dim_; }

    /// Output truncation level of a projected activation (0 = none).
    std::size_t proj_level() const { return proj_; }

    /// Restriction Pi_n o sigma to Span{e_1..e_n}: every vector parameter is
    /// projected and the output is truncated at n. Validity is inherited
    /// from the parent, not re-checked (projected psi need not be unit).
    Activation projected(std::size_t n) const {
        if (n < 1 || n > dim_) throw ValidationError("Activation::projected: level out of range");
        Activation a(*this);
        a.proj_ = n;
        std::visit(
            [n](auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, SeparatingBump>) {
                    p.psi = project(p.psi, n);
                    p.u_plus = project(p.u_plus, n);
                    p.u_minus = project(p.u_minus, n);
                    p.u_zero = project(p.u_zero, n);
                } else if constexpr (std::is_same_v<T, ReluLike>) {
                    p.psi = project(p.psi, n);
                    p.u_geq = project(p.u_geq, n);
                    p.u_leq = project(p.u_leq, n);
                } else if constexpr (std::is_same_v<T, RankOne>) {
                    p.psi = project(p.psi, n);
                    p.z = project(p.z, n);
                } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                    p.psi = project(p.psi, n);
                    for (Vec& z : p.zs) z = project(z, n);
                }
                // ThreeCoord and CoordinateWise carry no vector parameters;
                // the output truncation below realizes their restriction.
            },
            a.v_);
        return a;
    }

    /// Rebuild a projected activation from stored parameters. Skips the
    /// construction invariants (a projected psi need not be unit) but still
    /// checks dimensions, finiteness and the truncation level.
    static Activation restore_projected(std::size_t dim, Variant v, std::size_t proj) {
        if (proj < 1 || proj > dim)
            throw ValidationError("Activation: proj_level out of range");
        Activation a(NoValidate{}, dim, std::move(v));
        a.proj_ = proj;
        std::visit([&a](const auto& p) { a.check_dims_only(p); }, a.v_);
        return a;
    }

private:
    struct NoValidate {};
    Activation(NoValidate, std::size_t dim, Variant v) : dim_(dim), v_(std::move(v)) {}

    template <class P>
    void check_dims_only(const P& p) const {
        if constexpr (std::is_same_v<P, SeparatingBump>) {
            check_dim(p.psi, "SeparatingBump.psi");
            check_dim(p.u_plus, "SeparatingBump.u_plus");
            check_dim(p.u_minus, "SeparatingBump.u_minus");
            check_dim(p.u_zero, "SeparatingBump.u_zero");
        } else if constexpr (std::is_same_v<P, ReluLike>) {
            check_dim(p.psi, "ReluLike.psi");
            check_dim(p.u_geq, "ReluLike.u_geq");
            check_dim(p.u_leq, "ReluLike.u_leq");
        } else if constexpr (std::is_same_v<P, RankOne>) {
            check_dim(p.psi, "RankOne.psi");
            check_dim(p.z, "RankOne.z");
        } else if constexpr (std::is_same_v<P, TruncatedSum>) {
            check_dim(p.psi, "TruncatedSum.psi");
            for (const Vec& z : p.zs) check_dim(z, "TruncatedSum.zs");
        } else if constexpr (std::is_same_v<P, ThreeCoord>) {
            if (dim_ < 3) throw ValidationError("ThreeCoord: requires dim >= 3");
        }
    }

    void validate() const {
        if (dim_ < 1) throw ValidationError("Activation: dim must be >= 1");
        std::visit([this](const auto& p) { validate_variant(p); }, v_);
    }

    void check_dim(const Vec& v, const char* what) const {
        if (v.size() != dim_) throw DimensionError(std::string(what) + ": dimension mismatch");
        check_finite(v, what);
    }

    void validate_variant(const SeparatingBump& p) const {
        check_dim(p.psi, "SeparatingBump.psi");
        check_dim(p.u_plus, "SeparatingBump.u_plus");
        check_dim(p.u_minus, "SeparatingBump.u_minus");
        check_dim(p.u_zero, "SeparatingBump.u_zero");
        detail::require_unit(p.psi, "SeparatingBump");
        if (!(p.eps > 0.0 && p.eps < 0.25))
            throw ValidationError("SeparatingBump: eps must lie in (0, 0.25)");
        bool plus_out = !detail::in_span(p.u_plus, {&p.u_zero, &p.u_minus});
        bool minus_out = !detail::in_span(p.u_minus, {&p.u_zero, &p.u_plus});
        if (!plus_out && !minus_out)
            throw ValidationError("SeparatingBump: span condition failed "
                                  "(u_+ in Span{u_0,u_-} and u_- in Span{u_0,u_+})");
    }

    void validate_variant(const ReluLike& p) const {
        check_dim(p.psi, "ReluLike.psi");
        check_dim(p.u_geq, "ReluLike.u_geq");
        check_dim(p.u_leq, "ReluLike.u_leq");
        detail::require_unit(p.psi, "ReluLike");
        if (!(p.radius > 0.0)) throw ValidationError("ReluLike: radius must be positive");
        if (!(p.eps > 0.0 && p.eps < 1.0))
            throw ValidationError("ReluLike: eps must lie in (0, 1)");
        if (detail::in_span(p.u_geq, {&p.u_leq}) || detail::in_span(p.u_leq, {&p.u_geq}))
            throw ValidationError("ReluLike: u_geq and u_leq must be linearly independent");
    }

    void validate_variant(const RankOne& p) const {
        check_dim(p.psi, "RankOne.psi");
        check_dim(p.z, "RankOne.z");
        detail::require_nonzero(p.psi, "RankOne.psi");
        detail::require_nonzero(p.z, "RankOne.z");
    }

    void validate_variant(const ThreeCoord&) const {
        if (dim_ < 3) throw ValidationError("ThreeCoord: requires dim >= 3");
    }

    void validate_variant(const TruncatedSum& p) const {
        if (p.betas.empty() || p.betas.size() != p.zs.size())
            throw ValidationError("TruncatedSum: betas and zs must be nonempty, same length");
        check_dim(p.psi, "TruncatedSum.psi");
        detail::require_nonzero(p.psi, "TruncatedSum.psi");
        Vec z(dim_, 0.0);
        for (const Vec& zj : p.zs) {
            check_dim(zj, "TruncatedSum.zs");
            axpy(1.0, zj, z);
        }
        detail::require_nonzero(z, "TruncatedSum: sum of zs");
    }

    void validate_variant(const CoordinateWise& p) const {
        if (sigmoid_value(p.sigma_hat, 0.0) != 0.0)
            throw ValidationError("CoordinateWise: sigma_hat(0) must be 0");
    }

    std::size_t dim_;
    std::size_t proj_ = 0;
    Variant v_;
};

// ---------------------------------------------------------------------------
// Evaluation.

namespace detail {

// F_eps for Y = {psi >= c} / {psi <= c} / {psi = c}, as a function of the
// pairing value s. Piecewise linear with slope 1/eps near the set boundary.
inline double bump_ge(double s, double c, double eps) {
    return std::max(1.0 - std::max(c - s, 0.0) / eps, 0.0);
}
inline double bump_le(double s, double c, double eps) {
    return std::max(1.0 - std::max(s - c, 0.0) / eps, 0.0);
}
inline double bump_eq(double s, double c, double eps) {
    return std::max(1.0 - std::abs(s - c) / eps, 0.0);
}

// Right-hand derivatives in s.
inline double bump_ge_slope(double s, double c, double eps) {
    return (s >= c - eps && s < c) ? 1.0 / eps : 0.0;
}
inline double bump_le_slope(double s, double c, double eps) {
    return (s >= c && s < c + eps) ? -1.0 / eps : 0.0;
}
inline double bump_eq_slope(double s, double c, double eps) {
    if (s >= c && s < c + eps) return -1.0 / eps;
    if (s >= c - eps && s < c) return 1.0 / eps;
    return 0.0;
}

// ThreeCoord scalar triple.
inline double tc_b1(double t) { return std::clamp(t, -1.0, 1.0); }
inline double tc_b1_slope(double t) { return (t >= -1.0 && t < 1.0) ? 1.0 : 0.0; }
inline double tc_b3(double t) { return -ramp01(t) - 2.0 * std::clamp(t, -1.0, 0.0); }
inline double tc_b3_slope(double t) {
    return -ramp01_slope(t) - ((t >= -1.0 && t < 0.0) ? 2.0 : 0.0);
}

}  // namespace detail

inline Vec eval_activation(const Activation& act, const Vec& x) {
    if (x.size() != act.dim()) throw DimensionError("eval_activation: dimension mismatch");
    Vec out(act.dim(), 0.0);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                double s = pairing(p.psi, x);
                axpy(detail::bump_ge(s, 1.0, p.eps), p.u_plus, out);
                axpy(detail::bump_le(s, -1.0, p.eps), p.u_minus, out);
                axpy(detail::bump_eq(s, 0.0, p.eps), p.u_zero, out);
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                double s = pairing(p.psi, x);
                double urysohn = ramp01(p.radius + 1.0 - nrm2(x));
                axpy(urysohn, x, out);
                axpy(detail::bump_ge(s, p.radius + 2.0, p.eps), p.u_geq, out);
                axpy(detail::bump_le(s, -p.radius - 2.0, p.eps), p.u_leq, out);
            } else if constexpr (std::is_same_v<T, RankOne>) {
                axpy(sigmoid_value(p.beta, pairing(p.psi, x)), p.z, out);
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                out[0] = detail::tc_b1(x[0]);
                out[1] = 1.0;
                out[2] = detail::tc_b3(x[0]);
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                double s = pairing(p.psi, x);
                for (std::size_t j = 0; j < p.zs.size(); ++j)
                    axpy(sigmoid_value(p.betas[j], s), p.zs[j], out);
            } else if constexpr (std::is_same_v<T, CoordinateWise>) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    out[i] = sigmoid_value(p.sigma_hat, x[i]);
            }
        },
        act.variant());
    if (act.proj_level() > 0)
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(act.proj_level()), out.end(), 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Jacobians. J(x)^T w is provided separately so that backpropagation never
// materializes the dim x dim matrix.

inline Vec jacobian_vjp(const Activation& act, const Vec& x, const Vec& w_in) {
    if (x.size() != act.dim() || w_in.size() != act.dim())
        throw DimensionError("jacobian_vjp: dimension mismatch");
    Vec w = act.proj_level() > 0 ? project(w_in, act.proj_level()) : w_in;
    Vec g(act.dim(), 0.0);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                double s = pairing(p.psi, x);
                double c = detail::bump_ge_slope(s, 1.0, p.eps) * dot(p.u_plus, w) +
                           detail::bump_le_slope(s, -1.0, p.eps) * dot(p.u_minus, w) +
                           detail::bump_eq_slope(s, 0.0, p.eps) * dot(p.u_zero, w);
                axpy(c, p.psi, g);
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                double s = pairing(p.psi, x);
                double r = nrm2(x);
                double urysohn = ramp01(p.radius + 1.0 - r);
                axpy(urysohn, w, g);
                // gradient of U(x) = ramp01(R+1-|x|) is -ramp01' * x/|x|
                double du = ramp01_slope(p.radius + 1.0 - r);
                if (du != 0.0 && r > 0.0) axpy(-du / r * dot(x, w), x, g);
                double c = detail::bump_ge_slope(s, p.radius + 2.0, p.eps) * dot(p.u_geq, w) +
                           detail::bump_le_slope(s, -p.radius - 2.0, p.eps) * dot(p.u_leq, w);
                axpy(c, p.psi, g);
            } else if constexpr (std::is_same_v<T, RankOne>) {
                double s = pairing(p.psi, x);
                axpy(sigmoid_slope(p.beta, s) * dot(p.z, w), p.psi, g);
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                g[0] = detail::tc_b1_slope(x[0]) * w[0] + detail::tc_b3_slope(x[0]) * w[2];
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                double s = pairing(p.psi, x);
                double c = 0.0;
                for (std::size_t j = 0; j < p.zs.size(); ++j)
                    c += sigmoid_slope(p.betas[j], s) * dot(p.zs[j], w);
                axpy(c, p.psi, g);
            } else if constexpr (std::is_same_v<T, CoordinateWise>) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    g[i] = sigmoid_slope(p.sigma_hat, x[i]) * w[i];
            }
        },
        act.variant());
    return g;
}

/// Full Jacobian of sigma at x (rows = output coords). Kinks take the
/// right one-sided derivative.
inline Mat jacobian_activation(const Activation& act, const Vec& x) {
    if (x.size() != act.dim()) throw DimensionError("jacobian_activation: dimension mismatch");
    const std::size_t d = act.dim();
    Mat J(d);
    // Row i of J is J^T e_i read back as a column of J^T; assembling via the
    // vjp keeps the two code paths consistent by construction.
    for (std::size_t i = 0; i < d; ++i) {
        Vec row = jacobian_vjp(act, x, basis_vector(d, i));
        for (std::size_t j = 0; j < d; ++j) J(i, j) = row[j];
    }
    return J;
}

// ---------------------------------------------------------------------------
// Separating-property machinery.

/// The hyperplane functional the variant separates along, if it claims the
/// separating property. CoordinateWise does not claim it.
inline std::optional<Vec> separating_functional(const Activation& act) {
    return std::visit(
        [&](const auto& p) -> std::optional<Vec> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ThreeCoord>) {
                return basis_vector(act.dim(), 0);
            } else if constexpr (std::is_same_v<T, CoordinateWise>) {
                return std::nullopt;
            } else {
                return p.psi;
            }
        },
        act.variant());
}

/// Declared limit vectors (u_+, u_-, u_0) of sigma(lambda x) per region,
/// when the variant claims the separating property.
inline std::optional<std::array<Vec, 3>> declared_limits(const Activation& act) {
    const std::size_t d = act.dim();
    auto lims = std::visit(
        [&](const auto& p) -> std::optional<std::array<Vec, 3>> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                return std::array<Vec, 3>{p.u_plus, p.u_minus, p.u_zero};
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                return std::array<Vec, 3>{p.u_geq, p.u_leq, Vec(d, 0.0)};
            } else if constexpr (std::is_same_v<T, RankOne>) {
                return std::array<Vec, 3>{p.z, Vec(d, 0.0), Vec(d, 0.0)};
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                Vec up(d, 0.0), um(d, 0.0), u0(d, 0.0);
                up[0] = 1.0; up[1] = 1.0; up[2] = -1.0;
                um[0] = -1.0; um[1] = 1.0; um[2] = 2.0;
                u0[1] = 1.0;
                return std::array<Vec, 3>{up, um, u0};
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                Vec z(d, 0.0);
                for (const Vec& zj : p.zs) axpy(1.0, zj, z);
                return std::array<Vec, 3>{z, Vec(d, 0.0), Vec(d, 0.0)};
            } else {
                return std::nullopt;
            }
        },
        act.variant());
    if (lims && act.proj_level() > 0)
        for (Vec& u : *lims) u = project(u, act.proj_level());
    return lims;
}

struct LimitReport {
    HalfSpaceLabel label = HalfSpaceLabel::Zero;
    Vec empirical_limit;
    bool converged = false;
};

/// Evaluate sigma(lambda x) along an increasing lambda ladder and compare the
/// final value against the declared limit for x's region. Non-convergence is
/// reported, not thrown.
inline LimitReport check_separating_limits(const Activation& act, const Vec& psi, const Vec& x,
                                           const std::vector<double>& lambdas, double tol) {
    if (lambdas.empty()) throw ValidationError("check_separating_limits: lambdas empty");
    if (lambdas.back() < 1e4)
        throw ValidationError("check_separating_limits: largest lambda must be >= 1e4");
    LimitReport rep;
    rep.label = half_space_classify(psi, x, 0.0);
    Vec prev, last;
    for (double lam : lambdas) {
        prev = std::move(last);
        last = eval_activation(act, scaled(x, lam));
    }
    rep.converged = lambdas.size() < 2 || nrm2(sub(last, prev)) < tol;
    if (auto lims = declared_limits(act)) {
        const Vec& u = (*lims)[static_cast<std::size_t>(rep.label)];
        rep.converged = rep.converged && nrm2(sub(last, u)) < tol;
    }
    rep.empirical_limit = std::move(last);
    return rep;
}

// ---------------------------------------------------------------------------
// Sampled certificates.

/// Lower bound on the p_k-Lipschitz constant: max ratio over sample pairs.
inline double estimate_lipschitz(const Activation& act, SeminormFamily fam, unsigned k,
                                 const std::vector<std::pair<Vec, Vec>>& samples) {
    if (samples.empty()) throw ValidationError("estimate_lipschitz: empty samples");
    double best = 0.0;
    for (const auto& [x, y] : samples) {
        double den = seminorm(fam, k, sub(x, y));
        if (den <= 0.0) continue;
        double num = seminorm(fam, k, sub(eval_activation(act, x), eval_activation(act, y)));
        best = std::max(best, num / den);
    }
    return best;
}

/// max over samples of p_k(sigma(x)).
inline double von_neumann_bound(const Activation& act, SeminormFamily fam, unsigned k,
                                const std::vector<Vec>& samples) {
    if (samples.empty()) throw ValidationError("von_neumann_bound: empty samples");
    double best = 0.0;
    for (const Vec& x : samples) best = std::max(best, seminorm(fam, k, eval_activation(act, x)));
    return best;
}

namespace detail {

inline double sum_psi_weights(const Vec& psi, SeminormFamily fam, unsigned k) {
    // |<psi,x>| <= (sum_n |psi_n| n^-k) p_k(x) for GradedSup, |psi| |x| for Hilbert.
    if (fam == SeminormFamily::HilbertNorm) return nrm2(psi);
    double s = 0.0;
    for (std::size_t n = 0; n < psi.size(); ++n)
        s += std::abs(psi[n]) * std::pow(static_cast<double>(n + 1), -static_cast<double>(k));
    return s;
}

}  // namespace detail

/// Analytic p_k-Lipschitz upper bound where one is available for the variant.
inline std::optional<double> analytic_lipschitz_bound(const Activation& act, SeminormFamily fam,
                                                      unsigned k) {
    return std::visit(
        [&](const auto& p) -> std::optional<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                double u = seminorm(fam, k, p.u_plus) + seminorm(fam, k, p.u_minus) +
                           seminorm(fam, k, p.u_zero);
                return u / p.eps * detail::sum_psi_weights(p.psi, fam, k);
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                if (fam != SeminormFamily::HilbertNorm) return std::nullopt;
                return p.radius + 2.0 +
                       (nrm2(p.u_geq) + nrm2(p.u_leq)) / p.eps * nrm2(p.psi);
            } else if constexpr (std::is_same_v<T, RankOne>) {
                return seminorm(fam, k, p.z) * detail::sum_psi_weights(p.psi, fam, k);
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                if (fam == SeminormFamily::HilbertNorm) return std::sqrt(5.0);
                return 2.0 * std::pow(3.0, static_cast<double>(k));
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                double z = 0.0;
                for (const Vec& zj : p.zs) z += seminorm(fam, k, zj);
                return z * detail::sum_psi_weights(p.psi, fam, k);
            } else {
                return 1.0;  // 1-Lipschitz sigmoid applied coordinate-wise
            }
        },
        act.variant());
}

/// Analytic von Neumann bound sup_x p_k(sigma(x)) where available.
/// CoordinateWise has none: boundedness fails on unbounded sets, and is
/// certified on sampled compacts only.
inline std::optional<double> analytic_boundedness_bound(const Activation& act, SeminormFamily fam,
                                                        unsigned k) {
    return std::visit(
        [&](const auto& p) -> std::optional<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                return seminorm(fam, k, p.u_plus) + seminorm(fam, k, p.u_minus) +
                       seminorm(fam, k, p.u_zero);
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                if (fam != SeminormFamily::HilbertNorm) return std::nullopt;
                return p.radius + 1.0 + nrm2(p.u_geq) + nrm2(p.u_leq);
            } else if constexpr (std::is_same_v<T, RankOne>) {
                return seminorm(fam, k, p.z);
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                if (fam == SeminormFamily::HilbertNorm) return std::sqrt(6.0);
                return 2.0 * std::pow(3.0, static_cast<double>(k));
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                double z = 0.0;
                for (const Vec& zj : p.zs) z += seminorm(fam, k, zj);
                return z;
            } else {
                return std::nullopt;
            }
        },
        act.variant());
}

// ---------------------------------------------------------------------------

/// Distance of x to the kink set of sigma (where one-sided derivatives
/// disagree). Finite-difference checks sample only generic points, i.e.
/// points with kink distance above the differencing step.
inline double kink_distance(const Activation& act, const Vec& x) {
    auto dist_to = [](double t, const std::vector<double>& ks) {
        double d = std::numeric_limits<double>::infinity();
        for (double k : ks) d = std::min(d, std::abs(t - k));
        return d;
    };
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                double s = pairing(p.psi, x);
                return dist_to(s, {1.0 - p.eps, 1.0, -1.0, -1.0 + p.eps, -p.eps, 0.0, p.eps});
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                double s = pairing(p.psi, x);
                double r = nrm2(x);
                double c = p.radius + 2.0;
                double ds = dist_to(s, {c, c - p.eps, -c, -c + p.eps});
                double dr = dist_to(r, {p.radius, p.radius + 1.0});
                return std::min(ds, dr);
            } else if constexpr (std::is_same_v<T, RankOne>) {
                return dist_to(pairing(p.psi, x), sigmoid_kinks(p.beta));
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                return dist_to(x[0], {-1.0, 0.0, 1.0});
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                double s = pairing(p.psi, x);
                double d = std::numeric_limits<double>::infinity();
                for (ScalarSigmoid b : p.betas) d = std::min(d, dist_to(s, sigmoid_kinks(b)));
                return d;
            } else {
                double d = std::numeric_limits<double>::infinity();
                auto ks = sigmoid_kinks(p.sigma_hat);
                for (double xi : x) d = std::min(d, dist_to(xi, ks));
                return d;
            }
        },
        act.variant());
}

}  // namespace fnn
