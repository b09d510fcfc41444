#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace aeids {

// K x K counts, entry (i, j) = samples of true class i predicted as j.
struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<std::size_t> counts;  // row-major
    std::vector<std::string> class_names;

    std::size_t& at(std::size_t true_class, std::size_t predicted) {
        return counts[true_class * n_classes + predicted];
    }
    std::size_t at(std::size_t true_class, std::size_t predicted) const {
        return counts[true_class * n_classes + predicted];
    }
    std::size_t total() const;
    std::size_t row_total(std::size_t true_class) const;  // class support
    std::size_t col_total(std::size_t predicted) const;
    std::size_t trace() const;
};

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t n_classes);

enum class Averaging { macro, weighted };

std::string averaging_name(Averaging avg);

struct PerClassMetrics {
    std::string class_name;
    std::size_t support = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Precision = TP/(TP+FP), Recall = TP/(TP+FN), F1 their harmonic mean; a
// zero denominator yields 0 for that class. macro = unweighted class mean
// over all K classes, weighted = support-weighted mean (weighted recall
// coincides with accuracy). Accuracy = trace/total.
struct EvalReport {
    Averaging averaging = Averaging::macro;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<PerClassMetrics> per_class;
    ConfusionMatrix confusion;
};

EvalReport evaluate(const ConfusionMatrix& cm, Averaging averaging);

}  // namespace aeids
