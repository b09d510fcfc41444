#include "aeids/model_io.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

#include "aeids/error.hpp"

namespace aeids {

namespace {

using nlohmann::json;

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= bytes.size()) {
        std::uint32_t triple = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(kB64Alphabet[(triple >> 18) & 63]);
        out.push_back(kB64Alphabet[(triple >> 12) & 63]);
        out.push_back(kB64Alphabet[(triple >> 6) & 63]);
        out.push_back(kB64Alphabet[triple & 63]);
        i += 3;
    }
    std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        std::uint32_t triple = bytes[i] << 16;
        out.push_back(kB64Alphabet[(triple >> 18) & 63]);
        out.push_back(kB64Alphabet[(triple >> 12) & 63]);
        out.push_back('=');
        out.push_back('=');
    } else if (rest == 2) {
        std::uint32_t triple = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out.push_back(kB64Alphabet[(triple >> 18) & 63]);
        out.push_back(kB64Alphabet[(triple >> 12) & 63]);
        out.push_back(kB64Alphabet[(triple >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0) throw ParseError("base64: length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 2) throw ParseError("base64: stray padding");
                vals[j] = 0;
                ++pad;
            } else {
                vals[j] = b64_value(c);
                if (vals[j] < 0) throw ParseError("base64: invalid character");
                if (pad > 0) throw ParseError("base64: data after padding");
            }
        }
        std::uint32_t triple = (static_cast<std::uint32_t>(vals[0]) << 18) |
                               (static_cast<std::uint32_t>(vals[1]) << 12) |
                               (static_cast<std::uint32_t>(vals[2]) << 6) |
                               static_cast<std::uint32_t>(vals[3]);
        out.push_back(static_cast<std::uint8_t>((triple >> 16) & 0xff));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((triple >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(triple & 0xff));
    }
    return out;
}

std::string doubles_to_b64(const Vector& values) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(values.size() * 8);
    for (double v : values) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b)
            bytes.push_back(static_cast<std::uint8_t>((bits >> (8 * b)) & 0xff));
    }
    return base64_encode(bytes);
}

Vector b64_to_doubles(const std::string& text) {
    std::vector<std::uint8_t> bytes = base64_decode(text);
    if (bytes.size() % 8 != 0) throw ParseError("float array: byte count not a multiple of 8");
    Vector out(bytes.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(bytes[i * 8 + static_cast<std::size_t>(b)])
                    << (8 * b);
        out[i] = std::bit_cast<double>(bits);
    }
    return out;
}

namespace {

json layer_to_json(const DenseLayer& layer) {
    json j;
    j["in"] = layer.in_dim();
    j["out"] = layer.out_dim();
    j["activation"] = layer.activation == Activation::tanh ? "tanh" : "linear";
    j["weights"] = doubles_to_b64(layer.weights.data);
    j["bias"] = doubles_to_b64(layer.bias);
    return j;
}

DenseLayer layer_from_json(const json& j) {
    DenseLayer layer;
    std::size_t in = j.at("in").get<std::size_t>();
    std::size_t out = j.at("out").get<std::size_t>();
    std::string act = j.at("activation").get<std::string>();
    if (act == "tanh")
        layer.activation = Activation::tanh;
    else if (act == "linear")
        layer.activation = Activation::linear;
    else
        throw ParseError("model container: unknown activation '" + act + "'");
    layer.weights = Matrix(out, in);
    layer.weights.data = b64_to_doubles(j.at("weights").get<std::string>());
    if (layer.weights.data.size() != in * out)
        throw ParseError("model container: weight array does not match its declared shape");
    layer.bias = b64_to_doubles(j.at("bias").get<std::string>());
    if (layer.bias.size() != out)
        throw ParseError("model container: bias array does not match its declared shape");
    return layer;
}

json tree_to_json(const DecisionTree& tree) {
    // one compact record per node: [feature, threshold, left, right, label, histogram]
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes)
        nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.label,
                                     n.histogram}));
    return nodes;
}

DecisionTree tree_from_json(const json& nodes) {
    DecisionTree tree;
    for (const json& rec : nodes) {
        if (!rec.is_array() || rec.size() != 6)
            throw ParseError("model container: malformed tree node record");
        TreeNode n;
        n.feature = rec[0].get<int>();
        n.threshold = rec[1].get<double>();
        n.left = rec[2].get<std::int32_t>();
        n.right = rec[3].get<std::int32_t>();
        n.label = rec[4].get<int>();
        n.histogram = rec[5].get<std::vector<std::size_t>>();
        tree.nodes.push_back(std::move(n));
    }
    if (tree.nodes.empty()) throw ParseError("model container: empty tree");
    return tree;
}

json spec_to_json(const ClassifierSpec& spec) {
    json j;
    j["kind"] = kind_name(spec.kind);
    j["seed"] = spec.seed;
    j["max_depth"] = spec.max_depth;
    j["min_samples_split"] = spec.min_samples_split;
    j["n_trees"] = spec.n_trees;
    j["neighbors"] = spec.neighbors;
    j["hidden_dims"] = spec.hidden_dims;
    j["learning_rate"] = spec.learning_rate;
    j["batch_size"] = spec.batch_size;
    j["max_epochs"] = spec.max_epochs;
    j["patience"] = spec.patience;
    j["val_fraction"] = spec.val_fraction;
    j["svm_c"] = spec.svm_c;
    j["svm_epochs"] = spec.svm_epochs;
    return j;
}

ClassifierSpec spec_from_json(const json& j) {
    ClassifierSpec spec;
    spec.kind = kind_from_name(j.at("kind").get<std::string>());
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.max_depth = j.at("max_depth").get<int>();
    spec.min_samples_split = j.at("min_samples_split").get<int>();
    spec.n_trees = j.at("n_trees").get<int>();
    spec.neighbors = j.at("neighbors").get<int>();
    spec.hidden_dims = j.at("hidden_dims").get<std::vector<std::size_t>>();
    spec.learning_rate = j.at("learning_rate").get<double>();
    spec.batch_size = j.at("batch_size").get<std::size_t>();
    spec.max_epochs = j.at("max_epochs").get<std::size_t>();
    spec.patience = j.at("patience").get<std::size_t>();
    spec.val_fraction = j.at("val_fraction").get<double>();
    spec.svm_c = j.at("svm_c").get<double>();
    spec.svm_epochs = j.at("svm_epochs").get<std::size_t>();
    return spec;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw FileError("write to '" + path + "' failed");
}

json read_json_file(const std::string& path, const std::string& expected_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("'" + path + "': corrupt model container");
    if (!j.is_object() || j.value("format", "") != "aeids-model")
        throw ParseError("'" + path + "': not an aeids model container");
    if (j.value("version", 0) != 1)
        throw ParseError("'" + path + "': unsupported container version");
    if (!expected_kind.empty() && j.value("kind", "") != expected_kind)
        throw ParseError("'" + path + "': container holds kind '" + j.value("kind", "") +
                         "', expected '" + expected_kind + "'");
    return j;
}

}  // namespace

void save_autoencoder(const std::string& path, const Autoencoder& model) {
    json j;
    j["format"] = "aeids-model";
    j["version"] = 1;
    j["kind"] = "autoencoder";
    const AutoencoderConfig& cfg = model.config();
    j["input_dim"] = cfg.input_dim;
    j["bottleneck_dim"] = cfg.bottleneck_dim;
    j["config"] = {{"learning_rate", cfg.learning_rate}, {"batch_size", cfg.batch_size},
                   {"max_epochs", cfg.max_epochs},       {"patience", cfg.patience},
                   {"seed", cfg.seed}};
    json layers = json::array();
    for (const DenseLayer& layer : model.layers()) layers.push_back(layer_to_json(layer));
    j["layers"] = layers;
    write_json_file(path, j);
}

Autoencoder load_autoencoder(const std::string& path) {
    json j = read_json_file(path, "autoencoder");
    try {
        AutoencoderConfig cfg;
        cfg.input_dim = j.at("input_dim").get<std::size_t>();
        cfg.bottleneck_dim = j.at("bottleneck_dim").get<std::size_t>();
        const json& cj = j.at("config");
        cfg.learning_rate = cj.at("learning_rate").get<double>();
        cfg.batch_size = cj.at("batch_size").get<std::size_t>();
        cfg.max_epochs = cj.at("max_epochs").get<std::size_t>();
        cfg.patience = cj.at("patience").get<std::size_t>();
        cfg.seed = cj.at("seed").get<std::uint64_t>();

        std::vector<DenseLayer> layers;
        for (const json& lj : j.at("layers")) layers.push_back(layer_from_json(lj));
        Autoencoder model = Autoencoder::from_parts(cfg, std::move(layers));
        // shape chain must match the declared dims
        if (model.encoder_layers()[0].in_dim() != cfg.input_dim ||
            model.encoder_layers()[2].out_dim() != cfg.bottleneck_dim)
            throw ParseError("'" + path + "': layer shapes disagree with the header");
        return model;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void save_classifier(const std::string& path, const ClassifierModel& model) {
    json j;
    j["format"] = "aeids-model";
    j["version"] = 1;
    j["kind"] = kind_name(model.kind());
    j["n_features"] = model.n_features;
    j["n_classes"] = model.n_classes;
    j["spec"] = spec_to_json(model.spec);

    if (const DtModel* dt = std::get_if<DtModel>(&model.impl)) {
        j["tree"] = tree_to_json(dt->tree);
    } else if (const RfModel* rf = std::get_if<RfModel>(&model.impl)) {
        json trees = json::array();
        for (const DecisionTree& tree : rf->trees) trees.push_back(tree_to_json(tree));
        j["trees"] = trees;
    } else if (const KnnModel* knn = std::get_if<KnnModel>(&model.impl)) {
        j["points"] = doubles_to_b64(knn->points.data);
        j["labels"] = knn->labels;
    } else if (const MlpModel* mlp = std::get_if<MlpModel>(&model.impl)) {
        json layers = json::array();
        for (const DenseLayer& layer : mlp->layers) layers.push_back(layer_to_json(layer));
        j["layers"] = layers;
    } else if (const SvmModel* svm = std::get_if<SvmModel>(&model.impl)) {
        j["weights"] = doubles_to_b64(svm->weights.data);
        j["bias"] = doubles_to_b64(svm->bias);
    }
    write_json_file(path, j);
}

ClassifierModel load_classifier(const std::string& path) {
    json j = read_json_file(path, "");
    try {
        ClassifierModel model;
        model.spec = spec_from_json(j.at("spec"));
        if (kind_name(model.spec.kind) != j.value("kind", ""))
            throw ParseError("'" + path + "': spec kind disagrees with the container tag");
        try {
            model.spec.validate();
        } catch (const ConfigError& e) {
            throw ParseError("'" + path + "': " + e.what());
        }
        model.n_features = j.at("n_features").get<std::size_t>();
        model.n_classes = j.at("n_classes").get<std::size_t>();

        switch (model.spec.kind) {
            case ClassifierKind::decision_tree: {
                DtModel dt;
                dt.tree = tree_from_json(j.at("tree"));
                model.impl = std::move(dt);
                break;
            }
            case ClassifierKind::random_forest: {
                RfModel rf;
                for (const json& tj : j.at("trees")) rf.trees.push_back(tree_from_json(tj));
                if (rf.trees.empty()) throw ParseError("'" + path + "': forest has no trees");
                model.impl = std::move(rf);
                break;
            }
            case ClassifierKind::knn: {
                KnnModel knn;
                knn.labels = j.at("labels").get<std::vector<int>>();
                Vector flat = b64_to_doubles(j.at("points").get<std::string>());
                if (model.n_features == 0 || flat.size() % model.n_features != 0 ||
                    flat.size() / model.n_features != knn.labels.size())
                    throw ParseError("'" + path + "': knn points do not match labels");
                knn.points = Matrix(knn.labels.size(), model.n_features);
                knn.points.data = std::move(flat);
                model.impl = std::move(knn);
                break;
            }
            case ClassifierKind::mlp: {
                MlpModel mlp;
                for (const json& lj : j.at("layers")) mlp.layers.push_back(layer_from_json(lj));
                if (mlp.layers.empty()) throw ParseError("'" + path + "': mlp has no layers");
                model.impl = std::move(mlp);
                break;
            }
            case ClassifierKind::svm: {
                SvmModel svm;
                svm.bias = b64_to_doubles(j.at("bias").get<std::string>());
                Vector flat = b64_to_doubles(j.at("weights").get<std::string>());
                if (svm.bias.size() != model.n_classes ||
                    flat.size() != model.n_classes * model.n_features)
                    throw ParseError("'" + path + "': svm arrays do not match the header");
                svm.weights = Matrix(model.n_classes, model.n_features);
                svm.weights.data = std::move(flat);
                model.impl = std::move(svm);
                break;
            }
        }
        return model;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

}  // namespace aeids
