#pragma once

// Batch experiment harness behind the command-line tool: fit builtin targets
// on compact clouds, sweep the projection dimension, check activation
// properties, run gradient checks. Every command is deterministic given its
// seed and inputs; wall-clock times go to a separate metadata file so the
// CSV artifacts are byte-identical across runs.

#include <chrono>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fnn/data.hpp"
#include "fnn/model_io.hpp"
#include "fnn/training.hpp"

namespace fnn {

// ---------------------------------------------------------------------------
// Canonical activation configurations at a given ambient dim.

inline Activation make_default_activation(const std::string& name, std::size_t dim) {
    if (name == "separating_bump") {
        if (dim < 3) throw ValidationError("separating_bump default needs dim >= 3");
        return Activation(dim, SeparatingBump{basis_vector(dim, 0), 0.2, basis_vector(dim, 0),
                                              basis_vector(dim, 1), basis_vector(dim, 2)});
    }
    if (name == "relu_like") {
        if (dim < 2) throw ValidationError("relu_like default needs dim >= 2");
        return Activation(dim, ReluLike{basis_vector(dim, 0), 1.0, 0.5, basis_vector(dim, 0),
                                        basis_vector(dim, 1)});
    }
    if (name == "rank_one") {
        Vec z(dim);
        for (std::size_t k = 0; k < dim; ++k) z[k] = std::pow(2.0, -static_cast<double>(k));
        const double n = nrm2(z);
        for (double& v : z) v /= n;
        return Activation(dim, RankOne{ScalarSigmoid::Ramp, basis_vector(dim, 0), std::move(z)});
    }
    if (name == "three_coord") return Activation(dim, ThreeCoord{});
    if (name == "truncated_sum") {
        const std::size_t terms = std::min<std::size_t>(4, dim);
        std::vector<ScalarSigmoid> betas(terms, ScalarSigmoid::Ramp);
        std::vector<Vec> zs;
        for (std::size_t j = 0; j < terms; ++j)
            zs.push_back(scaled(basis_vector(dim, j), std::pow(2.0, -static_cast<double>(j))));
        return Activation(dim,
                          TruncatedSum{std::move(betas), basis_vector(dim, 0), std::move(zs)});
    }
    if (name == "coordinate_wise") return Activation(dim, CoordinateWise{ScalarSigmoid::Ramp});
    throw ValidationError("unknown activation '" + name + "'");
}

inline Activation load_activation_config(const std::string& path, std::size_t dim) {
    std::ifstream in(path);
    if (!in) throw IoError("activation config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("activation config: invalid JSON: ") + e.what());
    }
    return activation_from_json(j, dim);
}

// ---------------------------------------------------------------------------
// Builtin analytic targets, so experiments need no external data.

struct Target {
    std::string name;
    std::function<double(const Vec&)> f;
};

inline Target make_builtin_target(const std::string& name, std::size_t dim) {
    if (name == "linear" || name == "softplus") {
        Vec psi(dim);
        for (std::size_t k = 0; k < dim; ++k) psi[k] = 1.0 / static_cast<double>(k + 1);
        if (name == "linear")
            return Target{name, [psi](const Vec& x) { return pairing(psi, x); }};
        return Target{name, [psi](const Vec& x) {
                          const double s = pairing(psi, x);
                          return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
                      }};
    }
    if (name == "quadratic") {
        if (dim < 3) throw ValidationError("quadratic target needs dim >= 3");
        return Target{name, [](const Vec& x) {
                          return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                      }};
    }
    throw ValidationError("unknown builtin target '" + name + "'");
}

inline bool is_builtin_target(const std::string& name) {
    return name == "linear" || name == "quadratic" || name == "softplus";
}

// ---------------------------------------------------------------------------
// fit

struct FitSpec {
    std::uint64_t seed = 0;
    std::size_t dim = 64;
    std::string activation = "rank_one";
    std::string activation_config;  // optional path overriding the default
    std::size_t neurons = 8;
    std::size_t layers = 1;
    double box_c = 1.0, box_p = 1.0;  // s_k = c k^-p
    std::size_t train_size = 512;
    std::size_t test_size = 512;
    TrainConfig train;
    std::string target = "linear";
    std::string out_dir;  // empty: no artifacts written
    int threads = 1;
};

struct FitResult {
    AnyNet net;
    std::vector<EpochStats> history;
    double final_loss = 0.0;
    std::optional<double> test_sup_error;
};

namespace detail {

inline Activation resolve_activation(const std::string& name, const std::string& config_path,
                                     std::size_t dim) {
    return config_path.empty() ? make_default_activation(name, dim)
                               : load_activation_config(config_path, dim);
}

template <class Net>
double any_forward(const Net& net, const Vec& x) {
    return net_forward(net, x);
}

inline double any_forward(const AnyNet& net, const Vec& x) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VectorNet>)
                throw ValidationError("scalar forward undefined for vector nets");
            else
                return net_forward(n, x);
        },
        net);
}

inline void write_run_meta(const std::string& out_dir, const std::string& command,
                           std::uint64_t seed, double wall_ms_total,
                           const std::vector<EpochStats>* history) {
    json meta{{"command", command},
              {"seed", seed},
              {"started_at_unix_ms",
               std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
                   .count()},
              {"wall_ms_total", wall_ms_total}};
    if (history) {
        json per = json::array();
        for (const EpochStats& e : *history) per.push_back(e.wall_ms);
        meta["wall_ms_per_epoch"] = std::move(per);
    }
    std::ofstream out(out_dir + "/run_meta.json");
    if (!out) throw IoError("cannot open '" + out_dir + "/run_meta.json'");
    out << meta.dump(2) << '\n';
}

inline void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
}

}  // namespace detail

inline FitResult cmd_fit(const FitSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.layers < 1) throw ValidationError("fit: layers must be >= 1");
    Activation act = detail::resolve_activation(spec.activation, spec.activation_config, spec.dim);
    const CompactBox box = power_law_box(spec.dim, spec.box_c, spec.box_p);

    // Training data: a builtin target sampled on the box, or a dataset file.
    Dataset data;
    std::optional<Target> target;
    if (is_builtin_target(spec.target)) {
        target = make_builtin_target(spec.target, spec.dim);
        data.inputs = sample_compact(box, spec.train_size, spec.seed, "cloud.train");
        for (const Vec& x : data.inputs) data.targets.push_back(target->f(x));
    } else {
        // Values-form rows are integrated on a uniform grid of the row width.
        std::ifstream probe(spec.target);
        if (!probe) throw IoError("fit: cannot open dataset '" + spec.target + "'");
        std::string header;
        std::getline(probe, header);
        const std::size_t cols = detail::split_csv_line(header).size();
        if (cols < 2) throw ValidationError("fit: malformed dataset header");
        probe.close();
        const BasisSpec basis = fourier_basis(spec.dim);
        const Grid grid = uniform_grid(std::max<std::size_t>(cols - 1, 2));
        data = load_dataset_csv(spec.target, basis, grid);
        if (data.inputs.front().size() != spec.dim)
            throw ValidationError("fit: dataset dim does not match --dim");
    }

    TrainConfig cfg = spec.train;
    cfg.seed = spec.seed;
    FitResult res{AnyNet{ShallowNet{act, {}, {}}}, {}, 0.0, std::nullopt};
    if (spec.layers == 1) {
        ShallowNet net = init_shallow(act, spec.neurons, InitSpec{}, spec.seed);
        auto tr = train(std::move(net), data, cfg, spec.threads);
        res.history = std::move(tr.history);
        res.net = AnyNet{std::move(tr.net)};
    } else {
        DeepNet net = init_deep(act, spec.layers, InitSpec{}, spec.seed);
        auto tr = train(std::move(net), data, cfg, spec.threads);
        res.history = std::move(tr.history);
        res.net = AnyNet{std::move(tr.net)};
    }
    res.final_loss = res.history.empty()
                         ? std::visit(
                               [&](const auto& n) -> double {
                                   using T = std::decay_t<decltype(n)>;
                                   if constexpr (std::is_same_v<T, VectorNet>) return 0.0;
                                   else return mse_loss(n, data);
                               },
                               res.net)
                         : res.history.back().loss;
    if (target) {
        const auto cloud = sample_compact(box, spec.test_size, spec.seed, "cloud.test");
        res.test_sup_error = std::visit(
            [&](const auto& n) -> double {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, VectorNet>) return 0.0;
                else return sup_error(n, target->f, cloud);
            },
            res.net);
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (!spec.out_dir.empty()) {
        detail::ensure_out_dir(spec.out_dir);
        save_model(spec.out_dir + "/model.json", res.net);
        save_metrics_csv(spec.out_dir + "/metrics.csv", res.history);
        detail::write_run_meta(spec.out_dir, "fit", spec.seed,
                               std::chrono::duration<double, std::milli>(t1 - t0).count(),
                               &res.history);
    }
    return res;
}

// ---------------------------------------------------------------------------
// project-sweep: deviation of the Pi_N-projected network from the full one,
// sup over a sampled compact cloud. The last row at N = ambient dim is
// exactly zero.

struct SweepSpec {
    std::string model_path;
    std::vector<std::size_t> dims;
    double box_c = 1.0, box_p = 1.0;
    std::size_t cloud_size = 512;
    std::uint64_t seed = 0;
    std::string out_dir;
};

struct SweepRow {
    std::size_t n = 0;
    double deviation = 0.0;
};

inline std::vector<SweepRow> cmd_project_sweep(const SweepSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.dims.empty()) throw ValidationError("project-sweep: no projection dims given");
    AnyNet any = load_model(spec.model_path);
    if (std::holds_alternative<VectorNet>(any))
        throw ValidationError("project-sweep: supports shallow and deep models");
    const std::size_t dim =
        std::visit([](const auto& n) { return n.dim(); }, any);
    for (std::size_t n : spec.dims)
        if (n < 1 || n > dim)
            throw ValidationError("project-sweep: dim " + std::to_string(n) + " out of range");
    const CompactBox box = power_law_box(dim, spec.box_c, spec.box_p);
    const auto cloud = sample_compact(box, spec.cloud_size, spec.seed, "cloud.sweep");

    std::vector<SweepRow> rows;
    std::visit(
        [&](const auto& net) {
            using T = std::decay_t<decltype(net)>;
            if constexpr (!std::is_same_v<T, VectorNet>) {
                for (std::size_t n : spec.dims) {
                    const auto proj = project_network(net, n);
                    double dev = 0.0;
                    for (const Vec& x : cloud)
                        dev = std::max(dev,
                                       std::abs(net_forward(net, x) - net_forward(proj, x)));
                    rows.push_back(SweepRow{n, dev});
                }
            }
        },
        any);
    const auto t1 = std::chrono::steady_clock::now();
    if (!spec.out_dir.empty()) {
        detail::ensure_out_dir(spec.out_dir);
        std::ofstream out(spec.out_dir + "/sweep.csv");
        if (!out) throw IoError("cannot open '" + spec.out_dir + "/sweep.csv'");
        out << "n,deviation\n";
        for (const SweepRow& r : rows) out << r.n << ',' << fmt_full(r.deviation) << '\n';
        detail::write_run_meta(spec.out_dir, "project-sweep", spec.seed,
                               std::chrono::duration<double, std::milli>(t1 - t0).count(),
                               nullptr);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// check-activation: separating limits, Lipschitz estimate vs analytic bound,
// von Neumann boundedness vs analytic bound.

struct CheckSpec {
    std::uint64_t seed = 0;
    std::size_t dim = 16;
    std::string activation = "separating_bump";
    std::string activation_config;
    std::size_t samples = 10000;          // boundedness / Lipschitz sample count
    std::size_t samples_per_region = 100; // separating-limit points per region
    double limit_tol = 1e-9;
    std::string out_dir;
};

struct CheckItem {
    std::string name;
    bool passed = true;
    double value = 0.0;
    double bound = std::numeric_limits<double>::quiet_NaN();
};

struct CheckReport {
    bool all_passed = true;
    std::vector<CheckItem> items;
};

namespace detail {

/// Box sample shifted along psi so that <psi,x> lands in the requested
/// region, with margin away from the hyperplane for Plus/Minus.
inline Vec region_sample(const Vec& psi, HalfSpaceLabel region, const CompactBox& box, Rng& rng) {
    Vec x(box.s.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform(-box.s[k], box.s[k]);
    const double psi2 = dot(psi, psi);
    double target = 0.0;
    if (region == HalfSpaceLabel::Plus) target = rng.uniform(0.05, 1.0);
    if (region == HalfSpaceLabel::Minus) target = -rng.uniform(0.05, 1.0);
    axpy((target - pairing(psi, x)) / psi2, psi, x);
    return x;
}

inline const char* region_name(HalfSpaceLabel l) {
    switch (l) {
        case HalfSpaceLabel::Plus: return "plus";
        case HalfSpaceLabel::Minus: return "minus";
        default: return "zero";
    }
}

}  // namespace detail

inline std::vector<double> default_lambda_ladder() {
    return {1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
}

inline CheckReport cmd_check_activation(const CheckSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Activation act = detail::resolve_activation(spec.activation, spec.activation_config, spec.dim);
    const CompactBox box = power_law_box(spec.dim, 1.0, 1.0);
    CheckReport rep;
    auto push = [&rep](CheckItem item) {
        rep.all_passed = rep.all_passed && item.passed;
        rep.items.push_back(std::move(item));
    };

    // Separating limits, when the variant declares them.
    if (auto psi = separating_functional(act)) {
        const auto ladder = default_lambda_ladder();
        for (HalfSpaceLabel region :
             {HalfSpaceLabel::Plus, HalfSpaceLabel::Minus, HalfSpaceLabel::Zero}) {
            Rng rng = Rng::substream(spec.seed, "check.region",
                                     static_cast<std::uint64_t>(region));
            std::size_t converged = 0;
            for (std::size_t i = 0; i < spec.samples_per_region; ++i) {
                Vec x = detail::region_sample(*psi, region, box, rng);
                const auto lr = check_separating_limits(act, *psi, x, ladder, spec.limit_tol);
                if (lr.converged && lr.label == region) ++converged;
            }
            CheckItem item;
            item.name = std::string("separating_limit.") + detail::region_name(region);
            item.value = static_cast<double>(converged);
            item.bound = static_cast<double>(spec.samples_per_region);
            item.passed = converged == spec.samples_per_region;
            push(std::move(item));
        }
    }

    // sigma(0) = 0 whenever the variant fixes the origin.
    if (std::holds_alternative<CoordinateWise>(act.variant()) ||
        std::holds_alternative<RankOne>(act.variant()) ||
        std::holds_alternative<TruncatedSum>(act.variant())) {
        const double v = nrm2(eval_activation(act, Vec(spec.dim, 0.0)));
        push(CheckItem{"fixes_origin", v == 0.0, v, 0.0});
    }

    // Sampled Lipschitz estimate and von Neumann bound against the analytic
    // bounds, Hilbert k=1 and graded k=1..4.
    const auto cloud = sample_compact(box, spec.samples, spec.seed, "check.cloud");
    Rng prng = Rng::substream(spec.seed, "check.pairs");
    std::vector<std::pair<Vec, Vec>> pairs;
    pairs.reserve(spec.samples);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        Vec x(spec.dim), y(spec.dim);
        for (std::size_t k = 0; k < spec.dim; ++k) {
            x[k] = prng.uniform(-box.s[k], box.s[k]);
            y[k] = prng.uniform(-box.s[k], box.s[k]);
        }
        pairs.emplace_back(std::move(x), std::move(y));
    }
    struct FamK {
        SeminormFamily fam;
        unsigned k;
        const char* tag;
    };
    const FamK fams[] = {{SeminormFamily::HilbertNorm, 1, "hilbert"},
                         {SeminormFamily::GradedSup, 1, "graded.k1"},
                         {SeminormFamily::GradedSup, 2, "graded.k2"},
                         {SeminormFamily::GradedSup, 3, "graded.k3"},
                         {SeminormFamily::GradedSup, 4, "graded.k4"}};
    for (const FamK& fk : fams) {
        const double lip = estimate_lipschitz(act, fk.fam, fk.k, pairs);
        if (auto bound = analytic_lipschitz_bound(act, fk.fam, fk.k)) {
            push(CheckItem{std::string("lipschitz.") + fk.tag, lip <= *bound + 1e-9, lip,
                           *bound});
        }
        const double vn = von_neumann_bound(act, fk.fam, fk.k, cloud);
        if (auto bound = analytic_boundedness_bound(act, fk.fam, fk.k)) {
            push(CheckItem{std::string("boundedness.") + fk.tag, vn <= *bound + 1e-9, vn,
                           *bound});
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    if (!spec.out_dir.empty()) {
        detail::ensure_out_dir(spec.out_dir);
        json items = json::array();
        for (const CheckItem& it : rep.items)
            items.push_back(json{{"name", it.name},
                                 {"passed", it.passed},
                                 {"value", it.value},
                                 {"bound", it.bound}});
        json doc{{"activation", to_json(act)},
                 {"all_passed", rep.all_passed},
                 {"checks", std::move(items)}};
        std::ofstream out(spec.out_dir + "/report.json");
        if (!out) throw IoError("cannot open '" + spec.out_dir + "/report.json'");
        out << doc.dump(2) << '\n';
        detail::write_run_meta(spec.out_dir, "check-activation", spec.seed,
                               std::chrono::duration<double, std::milli>(t1 - t0).count(),
                               nullptr);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// gradcheck: analytic gradient vs central finite differences on random
// instances at generic points (arguments kept away from activation kinks).

struct GradcheckSpec {
    std::uint64_t seed = 0;
    std::size_t dim = 8;
    std::string activation = "rank_one";
    std::string activation_config;
    std::size_t neurons = 4;
    std::size_t layers = 1;
    std::size_t instances = 5;
    std::size_t samples = 16;
    double step = 1e-6;
    double tol = 1e-5;
    bool corrupt = false;  // test hook: perturbs the analytic gradient
    std::string out_dir;
};

struct GradcheckReport {
    double max_rel_err = 0.0;
    bool passed = true;
};

namespace detail {

inline double net_kink_margin(const ShallowNet& net, const Vec& x) {
    double m = std::numeric_limits<double>::infinity();
    for (const Neuron& nr : net.neurons) {
        Vec y = apply_operator(nr.A, x);
        axpy(1.0, nr.b, y);
        m = std::min(m, kink_distance(net.act, y));
    }
    return m;
}

inline double net_kink_margin(const DeepNet& net, const Vec& x) {
    double m = std::numeric_limits<double>::infinity();
    const double h = net.residual_step.value_or(1.0);
    Vec y = x;
    for (std::size_t k = net.layers.size(); k-- > 0;) {
        Vec t = apply_operator(net.layers[k].A, y);
        axpy(1.0, net.layers[k].b, t);
        m = std::min(m, kink_distance(net.act, t));
        Vec s = eval_activation(net.act, t);
        if (h == 1.0) {
            y = std::move(s);
        } else {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * (s[i] - y[i]);
        }
    }
    return m;
}

inline double grad_rel_err(const GradientSet& g, const GradientSet& f) {
    double worst = 0.0;
    auto cmp = [&worst](double a, double b) {
        const double den = std::max({std::abs(a), std::abs(b), 1e-3});
        worst = std::max(worst, std::abs(a - b) / den);
    };
    for (std::size_t i = 0; i < g.alphas.size(); ++i) cmp(g.alphas[i], f.alphas[i]);
    for (std::size_t i = 0; i < g.ells.size(); ++i)
        for (std::size_t e = 0; e < g.ells[i].size(); ++e) cmp(g.ells[i][e], f.ells[i][e]);
    for (std::size_t i = 0; i < g.As.size(); ++i)
        for (std::size_t e = 0; e < g.As[i].a.size(); ++e) cmp(g.As[i].a[e], f.As[i].a[e]);
    for (std::size_t i = 0; i < g.bs.size(); ++i)
        for (std::size_t e = 0; e < g.bs[i].size(); ++e) cmp(g.bs[i][e], f.bs[i][e]);
    return worst;
}

template <class Net>
double gradcheck_instance(const Net& net, const CompactBox& box, std::uint64_t seed,
                          std::size_t samples, double step, bool corrupt) {
    Rng rng = Rng::substream(seed, "gradcheck.data");
    Dataset data;
    for (std::size_t i = 0; i < samples; ++i) {
        // regenerate until the sample is generic for the differencing step
        Vec x(box.s.size());
        for (int tries = 0; tries < 1000; ++tries) {
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = rng.uniform(-box.s[k], box.s[k]);
            if (net_kink_margin(net, x) > 1e-4) break;
        }
        data.inputs.push_back(std::move(x));
        data.targets.push_back(rng.uniform(-1.0, 1.0));
    }
    GradientSet g = grad(net, data);
    if (corrupt) {
        if (!g.alphas.empty()) g.alphas[0] += 1.0;
        else g.ells[0][0] += 1.0;
    }
    const GradientSet f = finite_diff_grad(net, data, step);
    return grad_rel_err(g, f);
}

}  // namespace detail

inline GradcheckReport cmd_gradcheck(const GradcheckSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.layers < 1) throw ValidationError("gradcheck: layers must be >= 1");
    const CompactBox box = power_law_box(spec.dim, 1.0, 1.0);
    GradcheckReport rep;
    for (std::size_t i = 0; i < spec.instances; ++i) {
        Activation act =
            detail::resolve_activation(spec.activation, spec.activation_config, spec.dim);
        const std::uint64_t net_seed = Rng::derive_seed(spec.seed, "gradcheck.net", i);
        const std::uint64_t data_seed = Rng::derive_seed(spec.seed, "gradcheck.inst", i);
        double err;
        if (spec.layers == 1) {
            ShallowNet net = init_shallow(std::move(act), spec.neurons, InitSpec{}, net_seed);
            err = detail::gradcheck_instance(net, box, data_seed, spec.samples, spec.step,
                                             spec.corrupt);
        } else {
            DeepNet net = init_deep(std::move(act), spec.layers, InitSpec{}, net_seed);
            err = detail::gradcheck_instance(net, box, data_seed, spec.samples, spec.step,
                                             spec.corrupt);
        }
        rep.max_rel_err = std::max(rep.max_rel_err, err);
    }
    rep.passed = rep.max_rel_err < spec.tol;
    const auto t1 = std::chrono::steady_clock::now();
    if (!spec.out_dir.empty()) {
        detail::ensure_out_dir(spec.out_dir);
        json doc{{"activation", spec.activation},
                 {"dim", spec.dim},
                 {"instances", spec.instances},
                 {"max_rel_err", rep.max_rel_err},
                 {"tol", spec.tol},
                 {"passed", rep.passed}};
        std::ofstream out(spec.out_dir + "/report.json");
        if (!out) throw IoError("cannot open '" + spec.out_dir + "/report.json'");
        out << doc.dump(2) << '\n';
        detail::write_run_meta(spec.out_dir, "gradcheck", spec.seed,
                               std::chrono::duration<double, std::milli>(t1 - t0).count(),
                               nullptr);
    }
    return rep;
}

}  // namespace fnn
