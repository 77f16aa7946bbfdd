#pragma once

// Compact-box sampling, datasets, MSE loss, analytic gradients with a
// finite-difference oracle, and a deterministic optimizer loop.
//
// Gradient accumulation over samples uses a fixed-shape pairwise reduction
// tree (leaf size 32). The tree depends only on the sample count, never on
// the thread count, so results are bit-identical however the top levels are
// parallelized.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <vector>

#include "fnn/network.hpp"
#include "fnn/rng.hpp"

namespace fnn {

/// The l2-box compact {x : |x_k| <= s_k}; square-summable by construction
/// at finite length.
struct CompactBox {
    Vec s;
};

inline CompactBox make_box(Vec s) {
    check_nonempty(s, "CompactBox");
    for (double v : s)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError("CompactBox: entries must be finite and >= 0");
    return CompactBox{std::move(s)};
}

/// Box with the power-law radii s_k = c k^-p.
inline CompactBox power_law_box(std::size_t dim, double c, double p) {
    Vec s(dim);
    for (std::size_t k = 0; k < dim; ++k)
        s[k] = c * std::pow(static_cast<double>(k + 1), -p);
    return make_box(std::move(s));
}

/// n points with coordinate k uniform in [-s_k, s_k]; deterministic per seed.
inline std::vector<Vec> sample_compact(const CompactBox& box, std::size_t n, std::uint64_t seed,
                                       std::string_view stream = "cloud") {
    if (n < 1) throw ValidationError("sample_compact: n must be >= 1");
    Rng rng = Rng::substream(seed, stream);
    std::vector<Vec> cloud(n, Vec(box.s.size()));
    for (Vec& x : cloud)
        for (std::size_t k = 0; k < box.s.size(); ++k) x[k] = rng.uniform(-box.s[k], box.s[k]);
    return cloud;
}

/// Smallest N with sum_{k>N} s_k^2 < eps^2, so sup_{x in box} |x - Pi_N x| < eps.
/// N = 0 semantics map to the minimum level 1.
inline std::size_t tail_dimension(const CompactBox& box, double eps) {
    if (!(eps > 0.0)) throw ValidationError("tail_dimension: eps must be positive");
    const std::size_t d = box.s.size();
    Vec tail(d + 1, 0.0);  // tail[N] = sum_{k>N} s_k^2
    for (std::size_t k = d; k-- > 0;) tail[k] = tail[k + 1] + box.s[k] * box.s[k];
    for (std::size_t n = 0; n <= d; ++n)
        if (tail[n] < eps * eps) return std::max<std::size_t>(n, 1);
    throw ValidationError("tail_dimension: box too large for requested eps at this ambient dim");
}

struct Dataset {
    std::vector<Vec> inputs;
    std::vector<double> targets;
};

inline void check_dataset(const Dataset& data, const char* what) {
    if (data.inputs.empty() || data.inputs.size() != data.targets.size())
        throw ValidationError(std::string(what) + ": dataset inputs/targets must be nonempty "
                                                  "and of equal length");
}

// ---------------------------------------------------------------------------
// Forward dispatch shared by the generic routines below.

inline double net_forward(const ShallowNet& net, const Vec& x) { return forward_shallow(net, x); }
inline double net_forward(const DeepNet& net, const Vec& x) { return forward_deep(net, x); }

template <class Net>
double mse_loss(const Net& net, const Dataset& data) {
    check_dataset(data, "mse_loss");
    double s = 0.0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        double r = net_forward(net, data.inputs[i]) - data.targets[i];
        s += r * r;
    }
    return s / static_cast<double>(data.inputs.size());
}

/// Empirical q_K of the approximation error: max over the cloud of
/// |forward(net,x) - target(x)|.
template <class Net>
double sup_error(const Net& net, const std::function<double(const Vec&)>& target,
                 const std::vector<Vec>& cloud) {
    if (cloud.empty()) throw ValidationError("sup_error: empty cloud");
    double m = 0.0;
    for (const Vec& x : cloud) m = std::max(m, std::abs(net_forward(net, x) - target(x)));
    return m;
}

// ---------------------------------------------------------------------------
// Gradients. Shapes mirror the network's parameter arrays exactly.

struct GradientSet {
    std::vector<double> alphas;
    std::vector<Vec> ells;
    std::vector<Mat> As;
    std::vector<Vec> bs;
};

inline GradientSet zero_grads(const ShallowNet& net) {
    const std::size_t d = net.dim(), m = net.neurons.size();
    return GradientSet{std::vector<double>(m, 0.0), std::vector<Vec>(m, Vec(d, 0.0)),
                       std::vector<Mat>(m, Mat(d)), std::vector<Vec>(m, Vec(d, 0.0))};
}

inline GradientSet zero_grads(const DeepNet& net) {
    const std::size_t d = net.dim(), n = net.layers.size();
    return GradientSet{{}, std::vector<Vec>(1, Vec(d, 0.0)), std::vector<Mat>(n, Mat(d)),
                       std::vector<Vec>(n, Vec(d, 0.0))};
}

namespace detail {

inline void add_into(GradientSet& acc, const GradientSet& g) {
    for (std::size_t i = 0; i < acc.alphas.size(); ++i) acc.alphas[i] += g.alphas[i];
    for (std::size_t i = 0; i < acc.ells.size(); ++i) axpy(1.0, g.ells[i], acc.ells[i]);
    for (std::size_t i = 0; i < acc.As.size(); ++i)
        for (std::size_t e = 0; e < acc.As[i].a.size(); ++e) acc.As[i].a[e] += g.As[i].a[e];
    for (std::size_t i = 0; i < acc.bs.size(); ++i) axpy(1.0, g.bs[i], acc.bs[i]);
}

// rank-one update rows: M += c * v x^T, skipping zero rows of v.
inline void add_outer(Mat& M, double c, const Vec& v, const Vec& x) {
    for (std::size_t i = 0; i < M.n; ++i) {
        const double ci = c * v[i];
        if (ci == 0.0) continue;
        double* row = &M.a[i * M.n];
        for (std::size_t j = 0; j < M.n; ++j) row[j] += ci * x[j];
    }
}

// d(mse)/d(theta) contribution of one sample, scaled by 2/m * residual.
inline void accumulate_sample(const ShallowNet& net, const Vec& x, double target, double two_over_m,
                              GradientSet& gs, std::vector<Vec>& ys, std::vector<Vec>& ss) {
    const std::size_t M = net.neurons.size();
    double f = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        const Neuron& nr = net.neurons[j];
        ys[j] = apply_operator(nr.A, x);
        axpy(1.0, nr.b, ys[j]);
        ss[j] = eval_activation(net.act, ys[j]);
        f += net.alphas[j] * pairing(nr.ell, ss[j]);
    }
    const double c = two_over_m * (f - target);
    for (std::size_t j = 0; j < M; ++j) {
        const Neuron& nr = net.neurons[j];
        gs.alphas[j] += c * pairing(nr.ell, ss[j]);
        axpy(c * net.alphas[j], ss[j], gs.ells[j]);
        Vec v = jacobian_vjp(net.act, ys[j], nr.ell);
        axpy(c * net.alphas[j], v, gs.bs[j]);
        add_outer(gs.As[j], c * net.alphas[j], v, x);
    }
}

inline void accumulate_sample(const DeepNet& net, const Vec& x, double target, double two_over_m,
                              GradientSet& gs, std::vector<Vec>& ins, std::vector<Vec>& ts) {
    const std::size_t n = net.layers.size();
    const double h = net.residual_step.value_or(1.0);
    // ins[k] is the input of layer k; layers apply from k = n-1 down to 0.
    Vec y = x;
    for (std::size_t k = n; k-- > 0;) {
        ins[k] = y;
        ts[k] = apply_operator(net.layers[k].A, y);
        axpy(1.0, net.layers[k].b, ts[k]);
        Vec s = eval_activation(net.act, ts[k]);
        if (h == 1.0) {
            y = std::move(s);
        } else {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * (s[i] - y[i]);
        }
    }
    const double c = two_over_m * (pairing(net.ell, y) - target);
    axpy(c, y, gs.ells[0]);
    Vec w = net.ell;  // dL/dy_k, up to the factor c
    for (std::size_t k = 0; k < n; ++k) {
        Vec v = jacobian_vjp(net.act, ts[k], w);
        if (h != 1.0)
            for (double& e : v) e *= h;
        axpy(c, v, gs.bs[k]);
        add_outer(gs.As[k], c, v, ins[k]);
        Vec w_next = apply_transpose(net.layers[k].A, v);
        if (h != 1.0) axpy(1.0 - h, w, w_next);
        w = std::move(w_next);
    }
}

inline std::size_t scratch_size(const ShallowNet& net) { return net.neurons.size(); }
inline std::size_t scratch_size(const DeepNet& net) { return net.layers.size(); }

constexpr std::size_t kGradLeaf = 32;

// Fixed-shape reduction: the recursion structure depends only on (lo, hi);
// par_depth chooses whether subtrees run concurrently, never the shape.
template <class Net>
GradientSet grad_tree(const Net& net, const Dataset& data, const std::vector<std::size_t>& idx,
                      std::size_t lo, std::size_t hi, double two_over_m, int par_depth) {
    if (hi - lo <= kGradLeaf) {
        GradientSet gs = zero_grads(net);
        std::vector<Vec> sa(scratch_size(net)), sb(scratch_size(net));
        for (std::size_t i = lo; i < hi; ++i)
            accumulate_sample(net, data.inputs[idx[i]], data.targets[idx[i]], two_over_m, gs, sa,
                              sb);
        return gs;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    GradientSet left, right;
    if (par_depth > 0) {
        auto fut = std::async(std::launch::async, [&] {
            return grad_tree(net, data, idx, mid, hi, two_over_m, par_depth - 1);
        });
        left = grad_tree(net, data, idx, lo, mid, two_over_m, par_depth - 1);
        right = fut.get();
    } else {
        left = grad_tree(net, data, idx, lo, mid, two_over_m, 0);
        right = grad_tree(net, data, idx, mid, hi, two_over_m, 0);
    }
    add_into(left, right);
    return left;
}

template <class Net>
GradientSet grad_indices(const Net& net, const Dataset& data, const std::vector<std::size_t>& idx,
                         int threads) {
    int depth = 0;
    for (int t = 1; t < threads; t *= 2) ++depth;
    const double two_over_m = 2.0 / static_cast<double>(idx.size());
    return grad_tree(net, data, idx, 0, idx.size(), two_over_m, depth);
}

inline std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace detail

/// Exact gradient of mse_loss with respect to the trainable parameters
/// (alpha_j, ell_j, A_j, b_j; activation parameters are frozen).
template <class Net>
GradientSet grad(const Net& net, const Dataset& data, int threads = 1) {
    check_dataset(data, "grad");
    return detail::grad_indices(net, data, detail::iota_indices(data.inputs.size()), threads);
}

// ---------------------------------------------------------------------------
// Parameter traversal shared by the finite-difference oracle and the
// optimizer. Visits alphas, then per neuron ell, A, b (shallow), or ell then
// per layer A, b (deep). The gradient set is visited in the same order.

namespace detail {

template <class F>
void for_each_param(ShallowNet& net, GradientSet& gs, bool final_layer_only, F&& f) {
    for (std::size_t j = 0; j < net.alphas.size(); ++j) f(net.alphas[j], gs.alphas[j]);
    if (final_layer_only) return;
    for (std::size_t j = 0; j < net.neurons.size(); ++j) {
        Neuron& nr = net.neurons[j];
        for (std::size_t i = 0; i < nr.ell.size(); ++i) f(nr.ell[i], gs.ells[j][i]);
        for (std::size_t e = 0; e < nr.A.a.size(); ++e) f(nr.A.a[e], gs.As[j].a[e]);
        for (std::size_t i = 0; i < nr.b.size(); ++i) f(nr.b[i], gs.bs[j][i]);
    }
}

template <class F>
void for_each_param(DeepNet& net, GradientSet& gs, bool final_layer_only, F&& f) {
    for (std::size_t i = 0; i < net.ell.size(); ++i) f(net.ell[i], gs.ells[0][i]);
    if (final_layer_only) return;
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        AffineMap& t = net.layers[k];
        for (std::size_t e = 0; e < t.A.a.size(); ++e) f(t.A.a[e], gs.As[k].a[e]);
        for (std::size_t i = 0; i < t.b.size(); ++i) f(t.b[i], gs.bs[k][i]);
    }
}

}  // namespace detail

/// Central differences per scalar parameter; O(step^2) accurate. The oracle
/// for grad(); intended for small instances.
template <class Net>
GradientSet finite_diff_grad(const Net& net, const Dataset& data, double step) {
    if (!(step > 0.0)) throw ValidationError("finite_diff_grad: step must be positive");
    check_dataset(data, "finite_diff_grad");
    Net probe = net;
    GradientSet gs = zero_grads(net);
    detail::for_each_param(probe, gs, false, [&](double& p, double& g) {
        const double saved = p;
        p = saved + step;
        const double lp = mse_loss(probe, data);
        p = saved - step;
        const double lm = mse_loss(probe, data);
        p = saved;
        g = (lp - lm) / (2.0 * step);
    });
    return gs;
}

// ---------------------------------------------------------------------------
// Optimizer loop.

enum class OptimizerKind { Sgd, Momentum, Adaptive };

inline OptimizerKind optimizer_from_name(const std::string& name) {
    if (name == "sgd") return OptimizerKind::Sgd;
    if (name == "momentum") return OptimizerKind::Momentum;
    if (name == "adaptive") return OptimizerKind::Adaptive;
    throw ValidationError("unknown optimizer '" + name + "'");
}

struct TrainConfig {
    OptimizerKind optimizer = OptimizerKind::Adaptive;
    double learning_rate = 1e-2;
    std::size_t epochs = 100;
    std::size_t batch_size = 0;  // 0 = full batch
    std::uint64_t seed = 0;
    bool train_final_layer_only = false;
};

struct EpochStats {
    std::size_t epoch = 0;
    double loss = 0.0;
    double wall_ms = 0.0;
};

template <class Net>
struct TrainResult {
    Net net;
    std::vector<EpochStats> history;
};

namespace detail {

template <class Net>
void collect_ptrs(Net& net, GradientSet& gs, bool final_only, std::vector<double*>& params,
                  std::vector<double*>& grads) {
    params.clear();
    grads.clear();
    for_each_param(net, gs, final_only, [&](double& p, double& g) {
        params.push_back(&p);
        grads.push_back(&g);
    });
}

// First-order update step over the flattened parameter list. The adaptive
// variant is Adam with decay 0.9 / 0.999 and epsilon 1e-8.
struct Optimizer {
    OptimizerKind kind;
    double lr;
    std::vector<double> m, v;
    std::size_t t = 0;

    Optimizer(OptimizerKind k, double rate, std::size_t n)
        : kind(k), lr(rate), m(n, 0.0), v(n, 0.0) {}

    void step(const std::vector<double*>& params, const std::vector<double*>& grads) {
        ++t;
        switch (kind) {
            case OptimizerKind::Sgd:
                for (std::size_t i = 0; i < params.size(); ++i) *params[i] -= lr * *grads[i];
                break;
            case OptimizerKind::Momentum:
                for (std::size_t i = 0; i < params.size(); ++i) {
                    m[i] = 0.9 * m[i] + *grads[i];
                    *params[i] -= lr * m[i];
                }
                break;
            case OptimizerKind::Adaptive: {
                const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
                const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
                const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
                for (std::size_t i = 0; i < params.size(); ++i) {
                    const double g = *grads[i];
                    m[i] = b1 * m[i] + (1.0 - b1) * g;
                    v[i] = b2 * v[i] + (1.0 - b2) * g * g;
                    *params[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
                }
                break;
            }
        }
    }
};

}  // namespace detail

/// Deterministic per seed; history holds the full-dataset loss after each
/// epoch. Loss above 1e12 aborts with a NumericError diagnostic. With
/// train_final_layer_only only the outer weights move (alphas for a shallow
/// net, ell for a deep one) -- a linear least-squares subproblem.
template <class Net>
TrainResult<Net> train(Net net, const Dataset& data, const TrainConfig& cfg, int threads = 1) {
    check_dataset(data, "train");
    if (!(cfg.learning_rate >= 0.0)) throw ValidationError("train: learning rate must be >= 0");
    const std::size_t m = data.inputs.size();
    if (cfg.batch_size > m) throw ValidationError("train: batch_size exceeds dataset size");
    const std::size_t batch = cfg.batch_size == 0 ? m : cfg.batch_size;

    GradientSet gs = zero_grads(net);
    std::vector<double*> params, grads;
    detail::collect_ptrs(net, gs, cfg.train_final_layer_only, params, grads);
    detail::Optimizer opt(cfg.optimizer, cfg.learning_rate, params.size());

    std::vector<EpochStats> history;
    history.reserve(cfg.epochs);
    std::vector<std::size_t> order = detail::iota_indices(m);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        if (batch < m) {
            // deterministic per-epoch shuffle
            Rng rng = Rng::substream(cfg.seed, "train.shuffle", epoch);
            for (std::size_t i = m; i > 1; --i)
                std::swap(order[i - 1], order[rng.bits() % i]);
        }
        for (std::size_t lo = 0; lo < m; lo += batch) {
            const std::size_t hi = std::min(lo + batch, m);
            std::vector<std::size_t> idx(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                         order.begin() + static_cast<std::ptrdiff_t>(hi));
            gs = detail::grad_indices(net, data, idx, threads);
            detail::collect_ptrs(net, gs, cfg.train_final_layer_only, params, grads);
            opt.step(params, grads);
        }
        const double loss = mse_loss(net, data);
        const auto t1 = std::chrono::steady_clock::now();
        const double wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
        history.push_back(EpochStats{epoch, loss, wall});
        if (!std::isfinite(loss) || loss > 1e12)
            throw NumericError("train: diverged at epoch " + std::to_string(epoch) +
                               " (loss=" + std::to_string(loss) + ")");
    }
    return TrainResult<Net>{std::move(net), std::move(history)};
}

}  // namespace fnn
