#pragma once

// Network architectures over the coefficient model: the shallow span of
// neurons <ell, sigma(Ax+b)>, deep compositions, vector-valued output in a
// fixed frame, the residual (Euler-step) form, basis projection of whole
// networks, and seeded parameter initialization.

#include <cstdint>
#include <optional>
#include <vector>

#include "fnn/activation.hpp"
#include "fnn/rng.hpp"
#include "fnn/space.hpp"

namespace fnn {

struct Neuron {
    Vec ell;
    Mat A;
    Vec b;
};

/// sum_j alpha_j <ell_j, sigma(A_j x + b_j)>. The outer weights alpha stay
/// explicit rather than being absorbed into ell, which gives a cheap
/// final-layer-only training mode.
struct ShallowNet {
    Activation act;
    std::vector<Neuron> neurons;
    std::vector<double> alphas;

    std::size_t dim() const { return act.dim(); }
};

struct AffineMap {
    Mat A;
    Vec b;
};

/// <ell, (sigma o T_1 o ... o sigma o T_n)(x)>; T_n is applied first.
/// With residual_step h, each layer instead performs the Euler update
/// y <- y + h (sigma(T_k y) - y); h = 1 reproduces the plain composition.
struct DeepNet {
    Activation act;
    std::vector<AffineMap> layers;  // layers[0] = T_1 (outermost)
    Vec ell;
    std::optional<double> residual_step;

    std::size_t dim() const { return act.dim(); }
};

/// N(x) = sum_i N_i(x) v_i with unit, linearly independent frame vectors.
struct VectorNet {
    std::vector<ShallowNet> scalar_nets;
    std::vector<Vec> vs;

    std::size_t dim() const { return scalar_nets.front().dim(); }
};

// ---------------------------------------------------------------------------
// Validating builders.

inline ShallowNet make_shallow(Activation act, std::vector<Neuron> neurons,
                               std::vector<double> alphas) {
    if (neurons.empty()) throw ValidationError("ShallowNet: needs at least one neuron");
    if (neurons.size() != alphas.size())
        throw ValidationError("ShallowNet: alphas and neurons must have equal length");
    const std::size_t d = act.dim();
    for (const Neuron& nr : neurons) {
        if (nr.ell.size() != d || nr.A.n != d || nr.b.size() != d)
            throw DimensionError("ShallowNet: neuron dimension mismatch");
        check_finite(nr.ell, "ShallowNet.ell");
        check_finite(nr.A, "ShallowNet.A");
        check_finite(nr.b, "ShallowNet.b");
    }
    for (double a : alphas)
        if (!std::isfinite(a)) throw ValidationError("ShallowNet: non-finite alpha");
    return ShallowNet{std::move(act), std::move(neurons), std::move(alphas)};
}

inline DeepNet make_deep(Activation act, std::vector<AffineMap> layers, Vec ell,
                         std::optional<double> residual_step = std::nullopt) {
    if (layers.empty()) throw ValidationError("DeepNet: needs at least one layer");
    const std::size_t d = act.dim();
    for (const AffineMap& t : layers) {
        if (t.A.n != d || t.b.size() != d)
            throw DimensionError("DeepNet: layer dimension mismatch");
        check_finite(t.A, "DeepNet.A");
        check_finite(t.b, "DeepNet.b");
    }
    if (ell.size() != d) throw DimensionError("DeepNet: ell dimension mismatch");
    check_finite(ell, "DeepNet.ell");
    if (residual_step && !(*residual_step > 0.0 && *residual_step <= 1.0))
        throw ValidationError("DeepNet: residual step must lie in (0, 1]");
    return DeepNet{std::move(act), std::move(layers), std::move(ell), residual_step};
}

inline VectorNet make_vector(std::vector<ShallowNet> scalar_nets, std::vector<Vec> vs) {
    if (scalar_nets.empty() || scalar_nets.size() != vs.size())
        throw ValidationError("VectorNet: scalar_nets and vs must be nonempty, same length");
    const std::size_t d = scalar_nets.front().dim();
    for (const ShallowNet& n : scalar_nets) {
        if (n.dim() != d) throw DimensionError("VectorNet: component dimension mismatch");
        if (!(n.act == scalar_nets.front().act))
            throw ValidationError("VectorNet: components must share one activation");
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].size() != d) throw DimensionError("VectorNet: frame dimension mismatch");
        if (std::abs(nrm2(vs[i]) - 1.0) > 1e-9)
            throw ValidationError("VectorNet: frame vectors must have unit norm");
        std::vector<const Vec*> others;
        for (std::size_t j = 0; j < i; ++j) others.push_back(&vs[j]);
        if (detail::in_span(vs[i], others))
            throw ValidationError("VectorNet: frame vectors must be linearly independent");
    }
    return VectorNet{std::move(scalar_nets), std::move(vs)};
}

// ---------------------------------------------------------------------------
// Forward evaluation.

inline double forward_shallow(const ShallowNet& net, const Vec& x) {
    if (x.size() != net.dim()) throw DimensionError("forward_shallow: dimension mismatch");
    double out = 0.0;
    for (std::size_t j = 0; j < net.neurons.size(); ++j) {
        const Neuron& nr = net.neurons[j];
        Vec y = apply_operator(nr.A, x);
        axpy(1.0, nr.b, y);
        out += net.alphas[j] * pairing(nr.ell, eval_activation(net.act, y));
    }
    return out;
}

inline double forward_deep(const DeepNet& net, const Vec& x) {
    if (x.size() != net.dim()) throw DimensionError("forward_deep: dimension mismatch");
    const double h = net.residual_step.value_or(1.0);
    Vec y = x;
    for (std::size_t k = net.layers.size(); k-- > 0;) {
        const AffineMap& t = net.layers[k];
        Vec z = apply_operator(t.A, y);
        axpy(1.0, t.b, z);
        Vec s = eval_activation(net.act, z);
        if (h == 1.0) {
            y = std::move(s);
        } else {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * (s[i] - y[i]);
        }
    }
    return pairing(net.ell, y);
}

inline Vec forward_vector(const VectorNet& net, const Vec& x) {
    Vec out(net.dim(), 0.0);
    for (std::size_t i = 0; i < net.scalar_nets.size(); ++i)
        axpy(forward_shallow(net.scalar_nets[i], x), net.vs[i], out);
    return out;
}

// ---------------------------------------------------------------------------
// Basis projection of whole networks: ell -> ell o Pi_n, A -> Pi_n A Pi_n,
// b -> Pi_n b, and the activation restricted to Span{e_1..e_n}. The projected
// forward satisfies forward(proj(net), x) == forward(proj(net), Pi_n x).

inline ShallowNet project_network(const ShallowNet& net, std::size_t n) {
    if (n < 1 || n > net.dim()) throw ValidationError("project_network: level out of range");
    std::vector<Neuron> neurons;
    neurons.reserve(net.neurons.size());
    for (const Neuron& nr : net.neurons)
        neurons.push_back(
            Neuron{project(nr.ell, n), project_operator(nr.A, n), project(nr.b, n)});
    return ShallowNet{net.act.projected(n), std::move(neurons), net.alphas};
}

inline DeepNet project_network(const DeepNet& net, std::size_t n) {
    if (n < 1 || n > net.dim()) throw ValidationError("project_network: level out of range");
    std::vector<AffineMap> layers;
    layers.reserve(net.layers.size());
    for (const AffineMap& t : net.layers)
        layers.push_back(AffineMap{project_operator(t.A, n), project(t.b, n)});
    return DeepNet{net.act.projected(n), std::move(layers), project(net.ell, n),
                   net.residual_step};
}

// ---------------------------------------------------------------------------
// Seeded initialization. Every parameter array draws from its own named
// substream, so changing one array's size leaves the others' draws intact.

enum class InitScheme { Uniform, ScaledByFanIn };

struct InitSpec {
    InitScheme scheme = InitScheme::ScaledByFanIn;
    double a = 0.0;  // half-width for Uniform
};

namespace detail {

inline double init_half_width(const InitSpec& spec, std::size_t dim) {
    if (spec.scheme == InitScheme::Uniform) {
        if (spec.a < 0.0) throw ValidationError("init: uniform half-width must be >= 0");
        return spec.a;
    }
    // uniform with sd 1/sqrt(dim)
    return std::sqrt(3.0 / static_cast<double>(dim));
}

inline void fill_uniform(Vec& v, double a, Rng& rng) {
    for (double& e : v) e = rng.uniform(-a, a);
}

}  // namespace detail

/// Deterministic per seed; activation parameters come from the caller's
/// configuration and are never randomized.
inline ShallowNet init_shallow(Activation act, std::size_t neuron_count, const InitSpec& spec,
                               std::uint64_t seed) {
    if (neuron_count < 1) throw ValidationError("init_shallow: need at least one neuron");
    const std::size_t d = act.dim();
    const double a = detail::init_half_width(spec, d);
    Rng r_alpha = Rng::substream(seed, "init.alphas");
    Rng r_ell = Rng::substream(seed, "init.ells");
    Rng r_A = Rng::substream(seed, "init.As");
    Rng r_b = Rng::substream(seed, "init.bs");
    std::vector<Neuron> neurons;
    std::vector<double> alphas;
    for (std::size_t j = 0; j < neuron_count; ++j) {
        Neuron nr{Vec(d), Mat(d), Vec(d)};
        detail::fill_uniform(nr.ell, a, r_ell);
        detail::fill_uniform(nr.A.a, a, r_A);
        detail::fill_uniform(nr.b, a, r_b);
        neurons.push_back(std::move(nr));
        alphas.push_back(r_alpha.uniform(-a, a));
    }
    return make_shallow(std::move(act), std::move(neurons), std::move(alphas));
}

inline DeepNet init_deep(Activation act, std::size_t layer_count, const InitSpec& spec,
                         std::uint64_t seed,
                         std::optional<double> residual_step = std::nullopt) {
    if (layer_count < 1) throw ValidationError("init_deep: need at least one layer");
    const std::size_t d = act.dim();
    const double a = detail::init_half_width(spec, d);
    Rng r_ell = Rng::substream(seed, "init.ells");
    Rng r_A = Rng::substream(seed, "init.As");
    Rng r_b = Rng::substream(seed, "init.bs");
    std::vector<AffineMap> layers;
    for (std::size_t k = 0; k < layer_count; ++k) {
        AffineMap t{Mat(d), Vec(d)};
        detail::fill_uniform(t.A.a, a, r_A);
        detail::fill_uniform(t.b, a, r_b);
        layers.push_back(std::move(t));
    }
    Vec ell(d);
    detail::fill_uniform(ell, a, r_ell);
    return make_deep(std::move(act), std::move(layers), std::move(ell), residual_step);
}

}  // namespace fnn
