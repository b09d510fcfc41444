#include "aeids/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aeids/error.hpp"
#include "aeids/kernels.hpp"
#include "aeids/rng.hpp"

namespace aeids {

std::string kind_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::decision_tree: return "dt";
        case ClassifierKind::random_forest: return "rf";
        case ClassifierKind::knn: return "knn";
        case ClassifierKind::mlp: return "mlp";
        case ClassifierKind::svm: return "svm";
    }
    return "?";
}

ClassifierKind kind_from_name(const std::string& name) {
    if (name == "dt") return ClassifierKind::decision_tree;
    if (name == "rf") return ClassifierKind::random_forest;
    if (name == "knn") return ClassifierKind::knn;
    if (name == "mlp") return ClassifierKind::mlp;
    if (name == "svm") return ClassifierKind::svm;
    throw ConfigError("unknown classifier kind '" + name + "' (expected dt/rf/knn/mlp/svm)");
}

void ClassifierSpec::validate() const {
    if (max_depth < 0) throw ConfigError("classifier: max_depth must be >= 0");
    if (min_samples_split < 2) throw ConfigError("classifier: min_samples_split must be >= 2");
    if (n_trees < 1) throw ConfigError("classifier: n_trees must be >= 1");
    if (neighbors < 1) throw ConfigError("classifier: neighbors must be >= 1");
    if (hidden_dims.empty()) throw ConfigError("classifier: mlp needs at least one hidden layer");
    for (std::size_t d : hidden_dims)
        if (d < 1) throw ConfigError("classifier: mlp hidden widths must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("classifier: learning_rate must be > 0");
    if (batch_size < 1) throw ConfigError("classifier: batch_size must be >= 1");
    if (patience < 1 || patience > max_epochs)
        throw ConfigError("classifier: patience must satisfy 1 <= patience <= max_epochs");
    if (!(val_fraction > 0.0 && val_fraction < 1.0))
        throw ConfigError("classifier: val_fraction must lie in (0,1)");
    if (!(svm_c > 0.0)) throw ConfigError("classifier: svm C must be > 0");
    if (svm_epochs < 1) throw ConfigError("classifier: svm_epochs must be >= 1");
}

namespace {

// ---------------------------------------------------------------- CART ----

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double score = std::numeric_limits<double>::infinity();  // weighted gini
};

double gini_from_counts(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (std::size_t c : counts) {
        double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

int majority_label(const std::vector<std::size_t>& counts) {
    std::size_t best = 0;
    int label = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] > best) {  // strict: ties keep the lowest class id
            best = counts[c];
            label = static_cast<int>(c);
        }
    }
    return label;
}

// exhaustive best split over the candidate features; thresholds are
// midpoints between consecutive distinct sorted values. Ties keep the first
// candidate in (feature ascending, threshold ascending) scan order.
SplitChoice best_split(const Matrix& x, const std::vector<int>& y,
                       const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& features, std::size_t n_classes) {
    SplitChoice best;
    const std::size_t n = rows.size();
    std::vector<std::pair<double, int>> ordered(n);
    std::vector<std::size_t> left_counts(n_classes), right_counts(n_classes);

    for (std::size_t f : features) {
        for (std::size_t i = 0; i < n; ++i)
            ordered[i] = {x(rows[i], f), y[rows[i]]};
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (ordered.front().first == ordered.back().first) continue;  // constant feature

        std::fill(left_counts.begin(), left_counts.end(), 0);
        std::fill(right_counts.begin(), right_counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            right_counts[static_cast<std::size_t>(ordered[i].second)] += 1;

        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t cls = static_cast<std::size_t>(ordered[i].second);
            left_counts[cls] += 1;
            right_counts[cls] -= 1;
            double v = ordered[i].first;
            double next = ordered[i + 1].first;
            if (v == next) continue;
            std::size_t n_left = i + 1, n_right = n - n_left;
            double score = (static_cast<double>(n_left) * gini_from_counts(left_counts, n_left) +
                            static_cast<double>(n_right) * gini_from_counts(right_counts, n_right)) /
                           static_cast<double>(n);
            if (score < best.score) {
                double thr = v + (next - v) / 2.0;
                if (!(thr < next)) thr = v;  // adjacent doubles: keep the split valid
                best.score = score;
                best.feature = static_cast<int>(f);
                best.threshold = thr;
            }
        }
    }
    return best;
}

// per-split uniform feature subsample of the forest; with subsample covering
// all features no randomness is consumed (keeps the 1-tree forest identical
// to a plain tree)
std::vector<std::size_t> draw_features(std::size_t n_features, std::size_t mtry, SeededRng* rng) {
    std::vector<std::size_t> all(n_features);
    std::iota(all.begin(), all.end(), 0);
    if (rng == nullptr || mtry >= n_features) return all;
    for (std::size_t i = 0; i < mtry; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng->next_below(n_features - i));
        std::swap(all[i], all[j]);
    }
    all.resize(mtry);
    std::sort(all.begin(), all.end());
    return all;
}

DecisionTree build_tree(const Matrix& x, const std::vector<int>& y,
                        std::vector<std::size_t> root_rows, std::size_t n_classes,
                        const ClassifierSpec& spec, std::size_t mtry, SeededRng* rng) {
    DecisionTree tree;
    struct Pending {
        std::int32_t node;
        std::vector<std::size_t> rows;
        int depth;
    };
    std::vector<Pending> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, std::move(root_rows), 0});

    std::vector<std::size_t> counts(n_classes);
    while (!stack.empty()) {
        Pending item = std::move(stack.back());
        stack.pop_back();

        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t r : item.rows) counts[static_cast<std::size_t>(y[r])] += 1;
        bool pure = false;
        for (std::size_t c : counts)
            if (c == item.rows.size()) pure = true;

        TreeNode& node = tree.nodes[static_cast<std::size_t>(item.node)];
        node.label = majority_label(counts);

        bool depth_capped = spec.max_depth > 0 && item.depth >= spec.max_depth;
        if (pure || depth_capped ||
            item.rows.size() < static_cast<std::size_t>(spec.min_samples_split)) {
            node.histogram = counts;
            continue;
        }

        std::vector<std::size_t> features = draw_features(x.cols, mtry, rng);
        SplitChoice split = best_split(x, y, item.rows, features, n_classes);
        if (split.feature < 0) {  // no feature separates the rows
            node.histogram = counts;
            continue;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : item.rows) {
            if (x(r, static_cast<std::size_t>(split.feature)) <= split.threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }

        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = static_cast<std::int32_t>(tree.nodes.size());
        node.right = node.left + 1;
        std::int32_t left_id = node.left, right_id = node.right;
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        // left is processed first: push it last
        stack.push_back({right_id, std::move(right_rows), item.depth + 1});
        stack.push_back({left_id, std::move(left_rows), item.depth + 1});
    }
    return tree;
}

const TreeNode& route_to_leaf(const DecisionTree& tree, const double* row) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
        std::int32_t next =
            row[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left
                                                                            : node->right;
        node = &tree.nodes[static_cast<std::size_t>(next)];
    }
    return *node;
}

std::vector<std::size_t> bootstrap_rows(std::size_t n, SeededRng& rng) {
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        rows[i] = static_cast<std::size_t>(rng.next_below(n));
    return rows;
}

// ----------------------------------------------------------------- KNN ----

// k nearest under lexicographic (distance, training index) order
std::vector<std::size_t> nearest_indices(const KnnModel& knn, const double* query, std::size_t k) {
    const std::size_t n = knn.points.rows;
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = knn.points.row(i);
        double acc = 0.0;
        for (std::size_t d = 0; d < knn.points.cols; ++d) {
            double diff = query[d] - p[d];
            acc += diff * diff;
        }
        dist[i] = {acc, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = dist[i].second;
    return out;
}

int vote_among(const KnnModel& knn, const std::vector<std::size_t>& neighbors,
               std::size_t n_classes, Vector* fractions) {
    std::vector<std::size_t> votes(n_classes, 0);
    for (std::size_t idx : neighbors) votes[static_cast<std::size_t>(knn.labels[idx])] += 1;
    if (fractions) {
        fractions->assign(n_classes, 0.0);
        for (std::size_t c = 0; c < n_classes; ++c)
            (*fractions)[c] =
                static_cast<double>(votes[c]) / static_cast<double>(neighbors.size());
    }
    return majority_label(votes);
}

// ----------------------------------------------------------------- MLP ----

MlpModel train_mlp(const ClassifierSpec& spec, const Matrix& x, const std::vector<int>& y,
                   std::size_t n_classes) {
    // held-out fold for early stopping
    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), 0);
    SeededRng fold_rng(derive_seed(spec.seed, 0x9000));
    fold_rng.shuffle(order);
    std::size_t val_n = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(spec.val_fraction * static_cast<double>(x.rows))), 1,
        x.rows - 1);

    Matrix val_x(val_n, x.cols);
    std::vector<int> val_y(val_n);
    Matrix train_x(x.rows - val_n, x.cols);
    std::vector<int> train_y(x.rows - val_n);
    for (std::size_t i = 0; i < val_n; ++i) {
        std::copy(x.row(order[i]), x.row(order[i]) + x.cols, val_x.row(i));
        val_y[i] = y[order[i]];
    }
    for (std::size_t i = val_n; i < x.rows; ++i) {
        std::copy(x.row(order[i]), x.row(order[i]) + x.cols, train_x.row(i - val_n));
        train_y[i - val_n] = y[order[i]];
    }

    MlpModel model;
    std::size_t in_dim = x.cols;
    for (std::size_t li = 0; li < spec.hidden_dims.size(); ++li) {
        SeededRng rng(derive_seed(spec.seed, li));
        model.layers.push_back(
            make_dense_layer(in_dim, spec.hidden_dims[li], Activation::tanh, rng));
        in_dim = spec.hidden_dims[li];
    }
    SeededRng head_rng(derive_seed(spec.seed, spec.hidden_dims.size()));
    model.layers.push_back(make_dense_layer(in_dim, n_classes, Activation::linear, head_rng));

    AdamConfig adam_cfg;
    adam_cfg.learning_rate = spec.learning_rate;
    AdamState adam = AdamState::for_layers(model.layers, adam_cfg);

    std::vector<DenseLayer> best_layers = model.layers;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;

    std::vector<std::size_t> batch_order(train_x.rows);
    std::iota(batch_order.begin(), batch_order.end(), 0);

    for (std::size_t epoch = 0; epoch < spec.max_epochs; ++epoch) {
        SeededRng shuffle_rng(derive_seed(spec.seed, 0x100 + epoch));
        shuffle_rng.shuffle(batch_order);

        for (std::size_t start = 0; start < train_x.rows; start += spec.batch_size) {
            std::size_t stop = std::min(train_x.rows, start + spec.batch_size);
            Matrix batch(stop - start, x.cols);
            std::vector<int> batch_y(stop - start);
            for (std::size_t i = start; i < stop; ++i) {
                std::copy(train_x.row(batch_order[i]), train_x.row(batch_order[i]) + x.cols,
                          batch.row(i - start));
                batch_y[i - start] = train_y[batch_order[i]];
            }
            ForwardTrace trace;
            Matrix logits = stack_forward(model.layers, batch, &trace);
            Matrix probs = softmax_rows(logits);
            double loss = cross_entropy(probs, batch_y);
            if (!std::isfinite(loss))
                throw TrainError("mlp: non-finite loss at epoch " + std::to_string(epoch + 1));
            Matrix d_logits = cross_entropy_d_logits(probs, batch_y);
            std::vector<LayerGrads> grads = stack_backward(model.layers, trace, d_logits);
            adam_step(model.layers, grads, adam);
        }

        Matrix val_probs = softmax_rows(stack_forward(model.layers, val_x));
        double val_loss = cross_entropy(val_probs, val_y);
        if (!std::isfinite(val_loss))
            throw TrainError("mlp: non-finite validation loss at epoch " +
                             std::to_string(epoch + 1));
        if (val_loss < best_val) {
            best_val = val_loss;
            best_layers = model.layers;
            since_best = 0;
        } else {
            since_best += 1;
            if (since_best >= spec.patience) break;
        }
    }
    model.layers = std::move(best_layers);
    return model;
}

// ----------------------------------------------------------------- SVM ----

SvmModel train_svm(const ClassifierSpec& spec, const Matrix& x, const std::vector<int>& y,
                   std::size_t n_classes) {
    SvmModel model;
    model.weights = Matrix(n_classes, x.cols);
    model.bias.assign(n_classes, 0.0);
    std::vector<int> y_pm(x.rows);
    for (std::size_t c = 0; c < n_classes; ++c) {
        for (std::size_t i = 0; i < x.rows; ++i)
            y_pm[i] = y[i] == static_cast<int>(c) ? 1 : -1;
        auto [w, b] = svm_fit_binary(x, y_pm, spec.svm_c, spec.svm_epochs);
        std::copy(w.begin(), w.end(), model.weights.row(c));
        model.bias[c] = b;
    }
    return model;
}

Matrix svm_decision_values(const SvmModel& model, const Matrix& x) {
    Matrix scores = matmul(x, transpose(model.weights));
    for (std::size_t i = 0; i < scores.rows; ++i)
        for (std::size_t j = 0; j < scores.cols; ++j) scores(i, j) += model.bias[j];
    return scores;
}

int argmax_row(const double* row, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (row[j] > row[best]) best = j;  // strict: ties keep the lowest id
    return static_cast<int>(best);
}

}  // namespace

std::pair<Vector, double> svm_fit_binary(const Matrix& x, const std::vector<int>& y_pm, double c,
                                         std::size_t epochs, std::vector<double>* objective_trace) {
    require_shape(x.rows == y_pm.size(), "svm_fit_binary: row/label count mismatch");
    const std::size_t n = x.rows, d = x.cols;
    const double inv_n = 1.0 / static_cast<double>(n);
    Vector w(d, 0.0);
    double b = 0.0;

    auto objective = [&] {
        double reg = 0.0;
        for (double wi : w) reg += wi * wi;
        reg /= 2.0 * c;
        double hinge = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = x.row(i);
            double margin = b;
            for (std::size_t j = 0; j < d; ++j) margin += w[j] * row[j];
            hinge += std::max(0.0, 1.0 - y_pm[i] * margin);
        }
        return reg + hinge * inv_n;
    };

    Vector grad_w(d);
    for (std::size_t t = 1; t <= epochs; ++t) {
        for (std::size_t j = 0; j < d; ++j) grad_w[j] = w[j] / c;
        double grad_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = x.row(i);
            double margin = b;
            for (std::size_t j = 0; j < d; ++j) margin += w[j] * row[j];
            if (y_pm[i] * margin < 1.0) {
                double yi = static_cast<double>(y_pm[i]);
                for (std::size_t j = 0; j < d; ++j) grad_w[j] -= yi * row[j] * inv_n;
                grad_b -= yi * inv_n;
            }
        }
        double step = 1.0 / (c * static_cast<double>(t));
        for (std::size_t j = 0; j < d; ++j) w[j] -= step * grad_w[j];
        b -= step * grad_b;
        if (objective_trace) objective_trace->push_back(objective());
    }
    return {w, b};
}

ClassifierModel train_classifier(const ClassifierSpec& spec, const Matrix& x,
                                 const std::vector<int>& y) {
    spec.validate();
    require_shape(x.rows == y.size(), "train_classifier: row/label count mismatch");
    if (x.rows < 2) throw DataError("train_classifier: need at least 2 rows");
    if (!x.is_finite()) throw DataError("train_classifier: non-finite feature value");

    int max_label = 0;
    for (int label : y) {
        if (label < 0) throw DataError("train_classifier: negative class id");
        max_label = std::max(max_label, label);
    }
    std::size_t n_classes = static_cast<std::size_t>(max_label) + 1;
    std::vector<std::size_t> counts(n_classes, 0);
    for (int label : y) counts[static_cast<std::size_t>(label)] += 1;
    std::size_t present = 0;
    for (std::size_t c : counts) present += c > 0 ? 1 : 0;
    if (present < 2) throw DataError("train_classifier: training data has a single class");

    ClassifierModel model;
    model.spec = spec;
    model.n_features = x.cols;
    model.n_classes = n_classes;

    switch (spec.kind) {
        case ClassifierKind::decision_tree: {
            std::vector<std::size_t> rows(x.rows);
            std::iota(rows.begin(), rows.end(), 0);
            DtModel dt;
            dt.tree = build_tree(x, y, std::move(rows), n_classes, spec, x.cols, nullptr);
            model.impl = std::move(dt);
            break;
        }
        case ClassifierKind::random_forest: {
            RfModel rf;
            rf.trees.resize(static_cast<std::size_t>(spec.n_trees));
            std::size_t mtry = static_cast<std::size_t>(
                std::ceil(std::sqrt(static_cast<double>(x.cols))));
#pragma omp parallel for schedule(dynamic)
            for (long t = 0; t < static_cast<long>(rf.trees.size()); ++t) {
                SeededRng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(t)));
                std::vector<std::size_t> rows = bootstrap_rows(x.rows, rng);
                rf.trees[static_cast<std::size_t>(t)] =
                    build_tree(x, y, std::move(rows), n_classes, spec, mtry, &rng);
            }
            model.impl = std::move(rf);
            break;
        }
        case ClassifierKind::knn: {
            if (static_cast<std::size_t>(spec.neighbors) > x.rows)
                throw ConfigError("knn: neighbors exceeds training rows");
            model.impl = KnnModel{x, y};
            break;
        }
        case ClassifierKind::mlp: {
            if (x.rows < 4) throw DataError("mlp: too few rows to carve a validation fold");
            MlpModel mlp = train_mlp(spec, x, y, n_classes);
            model.impl = std::move(mlp);
            break;
        }
        case ClassifierKind::svm: {
            model.impl = train_svm(spec, x, y, n_classes);
            break;
        }
    }
    return model;
}

std::vector<int> predict(const ClassifierModel& model, const Matrix& x) {
    require_shape(x.cols == model.n_features,
                  "predict: input has " + std::to_string(x.cols) + " features, model expects " +
                      std::to_string(model.n_features));
    std::vector<int> out(x.rows, 0);

    if (const DtModel* dt = std::get_if<DtModel>(&model.impl)) {
        for (std::size_t i = 0; i < x.rows; ++i)
            out[i] = route_to_leaf(dt->tree, x.row(i)).label;
    } else if (const RfModel* rf = std::get_if<RfModel>(&model.impl)) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(x.rows); ++i) {
            std::vector<std::size_t> votes(model.n_classes, 0);
            for (const DecisionTree& tree : rf->trees)
                votes[static_cast<std::size_t>(
                    route_to_leaf(tree, x.row(static_cast<std::size_t>(i))).label)] += 1;
            out[static_cast<std::size_t>(i)] = majority_label(votes);
        }
    } else if (const KnnModel* knn = std::get_if<KnnModel>(&model.impl)) {
        std::size_t k = std::min<std::size_t>(model.spec.neighbors, knn->points.rows);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(x.rows); ++i) {
            auto neighbors = nearest_indices(*knn, x.row(static_cast<std::size_t>(i)), k);
            out[static_cast<std::size_t>(i)] =
                vote_among(*knn, neighbors, model.n_classes, nullptr);
        }
    } else if (const MlpModel* mlp = std::get_if<MlpModel>(&model.impl)) {
        Matrix logits = stack_forward(mlp->layers, x);
        for (std::size_t i = 0; i < x.rows; ++i)
            out[i] = argmax_row(logits.row(i), logits.cols);
    } else if (const SvmModel* svm = std::get_if<SvmModel>(&model.impl)) {
        Matrix scores = svm_decision_values(*svm, x);
        for (std::size_t i = 0; i < x.rows; ++i)
            out[i] = argmax_row(scores.row(i), scores.cols);
    }
    return out;
}

Matrix predict_proba(const ClassifierModel& model, const Matrix& x) {
    require_shape(x.cols == model.n_features,
                  "predict_proba: input has " + std::to_string(x.cols) +
                      " features, model expects " + std::to_string(model.n_features));
    Matrix out(x.rows, model.n_classes, 0.0);

    if (const DtModel* dt = std::get_if<DtModel>(&model.impl)) {
        for (std::size_t i = 0; i < x.rows; ++i) {
            const TreeNode& leaf = route_to_leaf(dt->tree, x.row(i));
            std::size_t total = 0;
            for (std::size_t c : leaf.histogram) total += c;
            for (std::size_t c = 0; c < model.n_classes; ++c)
                out(i, c) = static_cast<double>(leaf.histogram[c]) / static_cast<double>(total);
        }
    } else if (const RfModel* rf = std::get_if<RfModel>(&model.impl)) {
        double inv_trees = 1.0 / static_cast<double>(rf->trees.size());
        for (std::size_t i = 0; i < x.rows; ++i)
            for (const DecisionTree& tree : rf->trees)
                out(i, static_cast<std::size_t>(route_to_leaf(tree, x.row(i)).label)) += inv_trees;
    } else if (const KnnModel* knn = std::get_if<KnnModel>(&model.impl)) {
        std::size_t k = std::min<std::size_t>(model.spec.neighbors, knn->points.rows);
        Vector fractions;
        for (std::size_t i = 0; i < x.rows; ++i) {
            auto neighbors = nearest_indices(*knn, x.row(i), k);
            vote_among(*knn, neighbors, model.n_classes, &fractions);
            std::copy(fractions.begin(), fractions.end(), out.row(i));
        }
    } else if (const MlpModel* mlp = std::get_if<MlpModel>(&model.impl)) {
        out = softmax_rows(stack_forward(mlp->layers, x));
    } else if (const SvmModel* svm = std::get_if<SvmModel>(&model.impl)) {
        Matrix scores = svm_decision_values(*svm, x);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const double* row = scores.row(i);
            double lo = row[0], hi = row[0];
            for (std::size_t j = 1; j < scores.cols; ++j) {
                lo = std::min(lo, row[j]);
                hi = std::max(hi, row[j]);
            }
            for (std::size_t j = 0; j < scores.cols; ++j)
                out(i, j) = hi > lo ? (row[j] - lo) / (hi - lo)
                                    : 1.0 / static_cast<double>(scores.cols);
        }
    }
    return out;
}

}  // namespace aeids
