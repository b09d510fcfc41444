#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "aeids/matrix.hpp"
#include "aeids/nn.hpp"

namespace aeids {

enum class ClassifierKind { decision_tree, random_forest, knn, mlp, svm };

std::string kind_name(ClassifierKind kind);                 // "dt", "rf", ...
ClassifierKind kind_from_name(const std::string& name);     // throws ConfigError

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::decision_tree;
    std::uint64_t seed = 0;

    // trees
    int max_depth = 0;  // 0 = grow until pure
    int min_samples_split = 2;
    int n_trees = 100;

    // knn
    int neighbors = 5;

    // mlp
    std::vector<std::size_t> hidden_dims = {64, 32};
    double learning_rate = 1e-3;
    std::size_t batch_size = 64;
    std::size_t max_epochs = 200;
    std::size_t patience = 10;
    double val_fraction = 0.1;

    // svm
    double svm_c = 1.0;
    std::size_t svm_epochs = 100;

    void validate() const;  // throws ConfigError
};

// CART node. Internal nodes route on feature/threshold (x <= threshold goes
// left); leaves carry the majority label and the class histogram of their
// training rows.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int label = -1;
    std::vector<std::size_t> histogram;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct DtModel {
    DecisionTree tree;
};

struct RfModel {
    std::vector<DecisionTree> trees;
};

struct KnnModel {
    Matrix points;
    std::vector<int> labels;
};

struct MlpModel {
    std::vector<DenseLayer> layers;  // linear head; softmax applied at use
};

struct SvmModel {
    Matrix weights;  // n_classes x n_features, one-vs-rest
    Vector bias;     // n_classes
};

struct ClassifierModel {
    ClassifierSpec spec;
    std::size_t n_features = 0;
    std::size_t n_classes = 0;
    std::variant<DtModel, RfModel, KnnModel, MlpModel, SvmModel> impl;

    ClassifierKind kind() const { return spec.kind; }
};

// Trains the model named by spec.kind. Labels must be dense ids 0..K-1 with
// at least two classes present; features must be finite. Deterministic for a
// fixed (spec, data) pair, including the forest regardless of thread count.
//
// Reproducibility contracts the tests rely on:
//  - forest tree t draws its randomness from SeededRng(derive_seed(seed, t));
//  - a bootstrap sample is rows.size() draws of rng.next_below(rows.size()),
//    in order, before any split decision;
//  - when the per-split feature subsample covers every feature it is skipped
//    entirely (no rng consumed), so a 1-tree forest with full feature search
//    equals a plain decision tree on its bootstrap rows.
ClassifierModel train_classifier(const ClassifierSpec& spec, const Matrix& x,
                                 const std::vector<int>& y);

// One class id per row. Every argmax/vote tie resolves to the lowest class
// id; KNN breaks distance ties toward the lowest training index.
std::vector<int> predict(const ClassifierModel& model, const Matrix& x);

// Per-class score rows: MLP softmax, tree-vote or leaf-histogram fractions,
// SVM per-row min-max-mapped decision values. Rows are nonnegative;
// softmax/vote rows sum to 1.
Matrix predict_proba(const ClassifierModel& model, const Matrix& x);

// Linear one-vs-rest building block: L2-regularized hinge loss
//   J(w, b) = ||w||^2 / (2C) + (1/n) sum_i max(0, 1 - y_i (w.x_i + b))
// minimized by full-batch subgradient descent with step 1/(C t). Labels are
// +-1. Appends J after every epoch to *objective_trace when given.
std::pair<Vector, double> svm_fit_binary(const Matrix& x, const std::vector<int>& y_pm, double c,
                                         std::size_t epochs,
                                         std::vector<double>* objective_trace = nullptr);

}  // namespace aeids
