// Command-line experiment harness. Subcommands: fit, project-sweep,
// check-activation, gradcheck. Exit codes: 0 success, 1 validation failure,
// 2 numerical failure, 3 I/O failure.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fnn/harness.hpp"

namespace {

std::vector<std::size_t> parse_dim_list(const std::string& s) {
    std::vector<std::size_t> dims;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        dims.push_back(static_cast<std::size_t>(std::stoul(tok)));
    }
    if (dims.empty()) throw fnn::ValidationError("--project-dims: empty list");
    return dims;
}

void parse_box(const std::string& s, double& c, double& p) {
    std::stringstream ss(s);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b))
        throw fnn::ValidationError("--box expects \"c,p\"");
    c = std::stod(a);
    p = std::stod(b);
}

int env_threads() {
    const char* v = std::getenv("FNN_THREADS");
    if (!v) return 1;
    int t = std::atoi(v);
    return t >= 1 ? t : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural networks on basis-coefficient space models"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t dim = 64;
    std::string activation = "rank_one";
    std::string activation_config;
    std::size_t neurons = 8;
    std::size_t layers = 1;
    std::string box = "1,1";
    std::size_t train_size = 512, test_size = 512;
    std::size_t epochs = 200;
    double lr = 1e-2;
    std::string optimizer = "adaptive";
    std::string target = "linear";
    std::string out_dir;
    std::string project_dims = "4,8,16,32,64";
    std::string model_path;
    bool final_layer_only = false;
    bool corrupt = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (all randomness flows from it)")->required();
        cmd->add_option("--dim", dim, "ambient truncation dimension");
        cmd->add_option("--activation", activation,
                        "separating_bump | relu_like | rank_one | three_coord | truncated_sum "
                        "| coordinate_wise");
        cmd->add_option("--activation-config", activation_config,
                        "JSON file overriding the default activation parameters");
        cmd->add_option("--out", out_dir, "output directory for artifacts");
    };

    CLI::App* fit = app.add_subcommand("fit", "fit a target on a sampled compact cloud");
    add_common(fit);
    fit->add_option("--neurons", neurons, "neuron count M (shallow nets)");
    fit->add_option("--layers", layers, "layer count n (> 1 trains a deep net)");
    fit->add_option("--box", box, "box rule \"c,p\" for radii s_k = c k^-p");
    fit->add_option("--train-size", train_size, "training cloud size");
    fit->add_option("--test-size", test_size, "held-out cloud size");
    fit->add_option("--epochs", epochs, "training epochs");
    fit->add_option("--lr", lr, "learning rate");
    fit->add_option("--optimizer", optimizer, "sgd | momentum | adaptive");
    fit->add_option("--target", target, "builtin target (linear | quadratic | softplus) or a "
                                        "dataset CSV path");
    fit->add_flag("--final-layer-only", final_layer_only,
                  "train only the outer span weights");

    CLI::App* sweep = app.add_subcommand("project-sweep",
                                         "deviation of projected networks from the full model");
    sweep->add_option("model", model_path, "model JSON file")->required();
    sweep->add_option("--seed", seed, "RNG seed")->required();
    sweep->add_option("--project-dims", project_dims, "comma-separated projection levels");
    sweep->add_option("--box", box, "box rule \"c,p\"");
    sweep->add_option("--test-size", test_size, "cloud size");
    sweep->add_option("--out", out_dir, "output directory");

    CLI::App* check = app.add_subcommand("check-activation",
                                         "separating / Lipschitz / boundedness checks");
    add_common(check);
    check->add_option("--test-size", test_size, "sample count for the sampled bounds");

    CLI::App* gradcheck = app.add_subcommand("gradcheck",
                                             "analytic gradients vs finite differences");
    add_common(gradcheck);
    gradcheck->add_option("--neurons", neurons, "neuron count M");
    gradcheck->add_option("--layers", layers, "layer count n");
    gradcheck->add_flag("--corrupt-jacobian", corrupt, "negative-control test hook")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(fit)) {
            fnn::FitSpec spec;
            spec.seed = seed;
            spec.dim = dim;
            spec.activation = activation;
            spec.activation_config = activation_config;
            spec.neurons = neurons;
            spec.layers = layers;
            parse_box(box, spec.box_c, spec.box_p);
            spec.train_size = train_size;
            spec.test_size = test_size;
            spec.train.epochs = epochs;
            spec.train.learning_rate = lr;
            spec.train.optimizer = fnn::optimizer_from_name(optimizer);
            spec.train.train_final_layer_only = final_layer_only;
            spec.target = target;
            spec.out_dir = out_dir;
            spec.threads = env_threads();
            fnn::FitResult res = fnn::cmd_fit(spec);
            std::cout << "train_loss=" << fnn::fmt_full(res.final_loss);
            if (res.test_sup_error)
                std::cout << " test_sup_error=" << fnn::fmt_full(*res.test_sup_error);
            std::cout << '\n';
            return 0;
        }
        if (app.got_subcommand(sweep)) {
            fnn::SweepSpec spec;
            spec.model_path = model_path;
            spec.seed = seed;
            spec.dims = parse_dim_list(project_dims);
            parse_box(box, spec.box_c, spec.box_p);
            spec.cloud_size = test_size;
            spec.out_dir = out_dir;
            const auto rows = fnn::cmd_project_sweep(spec);
            for (const auto& r : rows)
                std::cout << "n=" << r.n << " deviation=" << fnn::fmt_full(r.deviation) << '\n';
            return 0;
        }
        if (app.got_subcommand(check)) {
            fnn::CheckSpec spec;
            spec.seed = seed;
            spec.dim = dim;
            spec.activation = activation;
            spec.activation_config = activation_config;
            spec.samples = test_size;
            spec.out_dir = out_dir;
            const auto rep = fnn::cmd_check_activation(spec);
            for (const auto& item : rep.items)
                std::cout << (item.passed ? "pass " : "FAIL ") << item.name
                          << " value=" << fnn::fmt_full(item.value)
                          << " bound=" << fnn::fmt_full(item.bound) << '\n';
            if (!rep.all_passed) {
                std::cerr << "check-activation: declared property failed\n";
                return 2;
            }
            return 0;
        }
        if (app.got_subcommand(gradcheck)) {
            fnn::GradcheckSpec spec;
            spec.seed = seed;
            spec.dim = dim;
            spec.activation = activation;
            spec.activation_config = activation_config;
            spec.neurons = neurons;
            spec.layers = layers;
            spec.corrupt = corrupt;
            spec.out_dir = out_dir;
            const auto rep = fnn::cmd_gradcheck(spec);
            std::cout << "max_rel_err=" << fnn::fmt_full(rep.max_rel_err)
                      << (rep.passed ? " pass" : " FAIL") << '\n';
            if (!rep.passed) return 2;
            return 0;
        }
    } catch (const fnn::DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fnn::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fnn::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fnn::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
