#pragma once

// Model document format: a single self-describing JSON document with
//   { format_version: 1, architecture, ambient_dim, activation {...},
//     parameters { alphas, ells, As, bs, vs? } }
// Matrices are stored row-major; reals round-trip at full precision.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "fnn/network.hpp"

namespace fnn {

using json = nlohmann::json;

using AnyNet = std::variant<ShallowNet, DeepNet, VectorNet>;

namespace detail {

inline const json& j_field(const json& j, const char* key, const char* where) {
    if (!j.contains(key))
        throw ValidationError(std::string("model: missing field '") + key + "' in " + where);
    return j.at(key);
}

template <class T>
T j_get(const json& j, const char* key, const char* where) {
    try {
        return j_field(j, key, where).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("model: bad field '") + key + "' in " + where + ": " +
                              e.what());
    }
}

inline std::string sigmoid_name(ScalarSigmoid s) {
    return s == ScalarSigmoid::Ramp ? "ramp" : "smooth_ramp";
}

inline ScalarSigmoid sigmoid_from_name(const std::string& s) {
    if (s == "ramp") return ScalarSigmoid::Ramp;
    if (s == "smooth_ramp") return ScalarSigmoid::SmoothRamp;
    throw ValidationError("model: unknown sigmoid '" + s + "'");
}

inline Mat mat_from_json(const json& j, std::size_t dim, const char* where) {
    std::vector<double> a;
    try {
        a = j.get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("model: bad matrix in ") + where + ": " + e.what());
    }
    if (a.size() != dim * dim)
        throw ValidationError(std::string("model: matrix size mismatch in ") + where);
    Mat m(dim);
    m.a = std::move(a);
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Activation <-> JSON.

inline json to_json(const Activation& act) {
    json j;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SeparatingBump>) {
                j["type"] = "separating_bump";
                j["eps"] = p.eps;
                j["psi"] = p.psi;
                j["u_plus"] = p.u_plus;
                j["u_minus"] = p.u_minus;
                j["u_zero"] = p.u_zero;
            } else if constexpr (std::is_same_v<T, ReluLike>) {
                j["type"] = "relu_like";
                j["radius"] = p.radius;
                j["eps"] = p.eps;
                j["psi"] = p.psi;
                j["u_geq"] = p.u_geq;
                j["u_leq"] = p.u_leq;
            } else if constexpr (std::is_same_v<T, RankOne>) {
                j["type"] = "rank_one";
                j["beta"] = detail::sigmoid_name(p.beta);
                j["psi"] = p.psi;
                j["z"] = p.z;
            } else if constexpr (std::is_same_v<T, ThreeCoord>) {
                j["type"] = "three_coord";
            } else if constexpr (std::is_same_v<T, TruncatedSum>) {
                j["type"] = "truncated_sum";
                json betas = json::array();
                for (ScalarSigmoid b : p.betas) betas.push_back(detail::sigmoid_name(b));
                j["betas"] = betas;
                j["psi"] = p.psi;
                j["zs"] = p.zs;
            } else if constexpr (std::is_same_v<T, CoordinateWise>) {
                j["type"] = "coordinate_wise";
                j["sigma_hat"] = detail::sigmoid_name(p.sigma_hat);
            }
        },
        act.variant());
    if (act.proj_level() > 0) j["proj_level"] = act.proj_level();
    return j;
}

inline Activation activation_from_json(const json& j, std::size_t dim) {
    using detail::j_get;
    const std::string type = j_get<std::string>(j, "type", "activation");
    Activation::Variant v = [&]() -> Activation::Variant {
        if (type == "separating_bump")
            return SeparatingBump{j_get<Vec>(j, "psi", "activation"),
                                  j_get<double>(j, "eps", "activation"),
                                  j_get<Vec>(j, "u_plus", "activation"),
                                  j_get<Vec>(j, "u_minus", "activation"),
                                  j_get<Vec>(j, "u_zero", "activation")};
        if (type == "relu_like")
            return ReluLike{j_get<Vec>(j, "psi", "activation"),
                            j_get<double>(j, "radius", "activation"),
                            j_get<double>(j, "eps", "activation"),
                            j_get<Vec>(j, "u_geq", "activation"),
                            j_get<Vec>(j, "u_leq", "activation")};
        if (type == "rank_one")
            return RankOne{
                detail::sigmoid_from_name(j_get<std::string>(j, "beta", "activation")),
                j_get<Vec>(j, "psi", "activation"), j_get<Vec>(j, "z", "activation")};
        if (type == "three_coord") return ThreeCoord{};
        if (type == "truncated_sum") {
            std::vector<ScalarSigmoid> betas;
            for (const auto& name : j_get<std::vector<std::string>>(j, "betas", "activation"))
                betas.push_back(detail::sigmoid_from_name(name));
            return TruncatedSum{std::move(betas), j_get<Vec>(j, "psi", "activation"),
                                j_get<std::vector<Vec>>(j, "zs", "activation")};
        }
        if (type == "coordinate_wise")
            return CoordinateWise{
                detail::sigmoid_from_name(j_get<std::string>(j, "sigma_hat", "activation"))};
        throw ValidationError("model: unknown activation type '" + type + "'");
    }();
    if (j.contains("proj_level"))
        return Activation::restore_projected(dim, std::move(v),
                                             j_get<std::size_t>(j, "proj_level", "activation"));
    return Activation(dim, std::move(v));
}

// ---------------------------------------------------------------------------
// Networks <-> JSON.

inline json serialize(const ShallowNet& net) {
    json params;
    params["alphas"] = net.alphas;
    json ells = json::array(), As = json::array(), bs = json::array();
    for (const Neuron& nr : net.neurons) {
        ells.push_back(nr.ell);
        As.push_back(nr.A.a);
        bs.push_back(nr.b);
    }
    params["ells"] = std::move(ells);
    params["As"] = std::move(As);
    params["bs"] = std::move(bs);
    return json{{"format_version", 1},
                {"architecture", "shallow"},
                {"ambient_dim", net.dim()},
                {"activation", to_json(net.act)},
                {"parameters", std::move(params)}};
}

inline json serialize(const DeepNet& net) {
    json params;
    params["ells"] = json::array({net.ell});
    json As = json::array(), bs = json::array();
    for (const AffineMap& t : net.layers) {
        As.push_back(t.A.a);
        bs.push_back(t.b);
    }
    params["As"] = std::move(As);
    params["bs"] = std::move(bs);
    json j{{"format_version", 1},
           {"architecture", "deep"},
           {"ambient_dim", net.dim()},
           {"activation", to_json(net.act)},
           {"parameters", std::move(params)}};
    if (net.residual_step) j["residual_step"] = *net.residual_step;
    return j;
}

inline json serialize(const VectorNet& net) {
    json alphas = json::array(), ells = json::array(), As = json::array(), bs = json::array(),
         vs = json::array();
    for (const ShallowNet& n : net.scalar_nets) {
        json ne = json::array(), na = json::array(), nb = json::array();
        for (const Neuron& nr : n.neurons) {
            ne.push_back(nr.ell);
            na.push_back(nr.A.a);
            nb.push_back(nr.b);
        }
        alphas.push_back(n.alphas);
        ells.push_back(std::move(ne));
        As.push_back(std::move(na));
        bs.push_back(std::move(nb));
    }
    for (const Vec& v : net.vs) vs.push_back(v);
    json params{{"alphas", std::move(alphas)},
                {"ells", std::move(ells)},
                {"As", std::move(As)},
                {"bs", std::move(bs)},
                {"vs", std::move(vs)}};
    return json{{"format_version", 1},
                {"architecture", "vector"},
                {"ambient_dim", net.dim()},
                {"activation", to_json(net.scalar_nets.front().act)},
                {"parameters", std::move(params)}};
}

inline json serialize(const AnyNet& net) {
    return std::visit([](const auto& n) { return serialize(n); }, net);
}

namespace detail {

inline ShallowNet shallow_from_parts(Activation act, const json& params, std::size_t dim,
                                     const char* where) {
    auto alphas = j_get<std::vector<double>>(params, "alphas", where);
    auto ells = j_get<std::vector<Vec>>(params, "ells", where);
    const json& As = j_field(params, "As", where);
    auto bs = j_get<std::vector<Vec>>(params, "bs", where);
    if (ells.size() != alphas.size() || As.size() != alphas.size() || bs.size() != alphas.size())
        throw ValidationError(std::string("model: parameter arrays disagree in length in ") +
                              where);
    std::vector<Neuron> neurons;
    for (std::size_t m = 0; m < alphas.size(); ++m)
        neurons.push_back(
            Neuron{std::move(ells[m]), mat_from_json(As[m], dim, where), std::move(bs[m])});
    return make_shallow(std::move(act), std::move(neurons), std::move(alphas));
}

}  // namespace detail

inline AnyNet deserialize(const json& doc) {
    using detail::j_get;
    if (!doc.is_object()) throw ValidationError("model: document is not a JSON object");
    if (j_get<int>(doc, "format_version", "document") != 1)
        throw ValidationError("model: unsupported format_version");
    const auto dim = j_get<std::size_t>(doc, "ambient_dim", "document");
    if (dim < 1) throw ValidationError("model: ambient_dim must be >= 1");
    Activation act = activation_from_json(detail::j_field(doc, "activation", "document"), dim);
    const std::string arch = j_get<std::string>(doc, "architecture", "document");
    const json& params = detail::j_field(doc, "parameters", "document");
    if (arch == "shallow")
        return detail::shallow_from_parts(std::move(act), params, dim, "parameters");
    if (arch == "deep") {
        auto ells = j_get<std::vector<Vec>>(params, "ells", "parameters");
        if (ells.size() != 1)
            throw ValidationError("model: deep architecture stores exactly one ell");
        const json& As = detail::j_field(params, "As", "parameters");
        auto bs = j_get<std::vector<Vec>>(params, "bs", "parameters");
        if (As.size() != bs.size() || As.empty())
            throw ValidationError("model: layer arrays disagree in length in parameters");
        std::vector<AffineMap> layers;
        for (std::size_t k = 0; k < bs.size(); ++k)
            layers.push_back(
                AffineMap{detail::mat_from_json(As[k], dim, "parameters"), std::move(bs[k])});
        std::optional<double> h;
        if (doc.contains("residual_step")) h = j_get<double>(doc, "residual_step", "document");
        return make_deep(std::move(act), std::move(layers), std::move(ells[0]), h);
    }
    if (arch == "vector") {
        const json& alphas = detail::j_field(params, "alphas", "parameters");
        const json& ells = detail::j_field(params, "ells", "parameters");
        const json& As = detail::j_field(params, "As", "parameters");
        const json& bs = detail::j_field(params, "bs", "parameters");
        auto vs = j_get<std::vector<Vec>>(params, "vs", "parameters");
        if (alphas.size() != vs.size() || ells.size() != vs.size() || As.size() != vs.size() ||
            bs.size() != vs.size())
            throw ValidationError("model: component arrays disagree in length in parameters");
        std::vector<ShallowNet> nets;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            json sub{{"alphas", alphas[i]}, {"ells", ells[i]}, {"As", As[i]}, {"bs", bs[i]}};
            nets.push_back(detail::shallow_from_parts(act, sub, dim, "parameters"));
        }
        return make_vector(std::move(nets), std::move(vs));
    }
    throw ValidationError("model: unknown architecture '" + arch + "'");
}

// ---------------------------------------------------------------------------
// File round trips.

inline void save_model(const std::string& path, const AnyNet& net) {
    std::ofstream out(path);
    if (!out) throw IoError("save_model: cannot open '" + path + "'");
    out << serialize(net).dump(2) << '\n';
    if (!out) throw IoError("save_model: write failed for '" + path + "'");
}

inline AnyNet load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_model: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("model: invalid JSON: ") + e.what());
    }
    return deserialize(doc);
}

}  // namespace fnn
