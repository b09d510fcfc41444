#include "aeids/metrics.hpp"

#include "aeids/error.hpp"
#include "aeids/matrix.hpp"

namespace aeids {

std::size_t ConfusionMatrix::total() const {
    std::size_t sum = 0;
    for (std::size_t c : counts) sum += c;
    return sum;
}

std::size_t ConfusionMatrix::row_total(std::size_t true_class) const {
    std::size_t sum = 0;
    for (std::size_t j = 0; j < n_classes; ++j) sum += at(true_class, j);
    return sum;
}

std::size_t ConfusionMatrix::col_total(std::size_t predicted) const {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n_classes; ++i) sum += at(i, predicted);
    return sum;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n_classes; ++i) sum += at(i, i);
    return sum;
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t n_classes) {
    require_shape(y_true.size() == y_pred.size(), "confusion: label vectors differ in length");
    ConfusionMatrix cm;
    cm.n_classes = n_classes;
    cm.counts.assign(n_classes * n_classes, 0);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        int t = y_true[i], p = y_pred[i];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= n_classes ||
            static_cast<std::size_t>(p) >= n_classes)
            throw DataError("confusion: class id out of range at sample " + std::to_string(i));
        cm.at(static_cast<std::size_t>(t), static_cast<std::size_t>(p)) += 1;
    }
    return cm;
}

std::string averaging_name(Averaging avg) {
    return avg == Averaging::macro ? "macro" : "weighted";
}

EvalReport evaluate(const ConfusionMatrix& cm, Averaging averaging) {
    const std::size_t total = cm.total();
    if (total == 0) throw DataError("evaluate: empty confusion matrix");

    EvalReport report;
    report.averaging = averaging;
    report.confusion = cm;
    report.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);

    const std::size_t k = cm.n_classes;
    report.per_class.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        PerClassMetrics& m = report.per_class[c];
        m.class_name = c < cm.class_names.size() ? cm.class_names[c] : "class " + std::to_string(c);
        m.support = cm.row_total(c);
        double tp = static_cast<double>(cm.at(c, c));
        double predicted = static_cast<double>(cm.col_total(c));
        double actual = static_cast<double>(m.support);
        m.precision = predicted > 0.0 ? tp / predicted : 0.0;
        m.recall = actual > 0.0 ? tp / actual : 0.0;
        double denom = m.precision + m.recall;
        m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
    }

    double p = 0.0, r = 0.0, f = 0.0;
    if (averaging == Averaging::macro) {
        for (const PerClassMetrics& m : report.per_class) {
            p += m.precision;
            r += m.recall;
            f += m.f1;
        }
        double kf = static_cast<double>(k);
        report.precision = p / kf;
        report.recall = r / kf;
        report.f1 = f / kf;
    } else {
        for (const PerClassMetrics& m : report.per_class) {
            double w = static_cast<double>(m.support);
            p += w * m.precision;
            r += w * m.recall;
            f += w * m.f1;
        }
        double tf = static_cast<double>(total);
        report.precision = p / tf;
        report.recall = r / tf;
        report.f1 = f / tf;
    }
    return report;
}

}  // namespace aeids
