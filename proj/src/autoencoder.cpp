#include "aeids/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "aeids/error.hpp"
#include "aeids/rng.hpp"

namespace aeids {

void AutoencoderConfig::validate() const {
    if (bottleneck_dim < 1 || bottleneck_dim >= input_dim)
        throw ConfigError("autoencoder: bottleneck_dim must satisfy 1 <= N < M, got N=" +
                          std::to_string(bottleneck_dim) + " M=" + std::to_string(input_dim));
    if (!(learning_rate > 0.0)) throw ConfigError("autoencoder: learning_rate must be > 0");
    if (batch_size < 1) throw ConfigError("autoencoder: batch_size must be >= 1");
    if (patience < 1 || patience > max_epochs)
        throw ConfigError("autoencoder: patience must satisfy 1 <= patience <= max_epochs");
}

std::size_t autoencoder_param_count(std::size_t input_dim, std::size_t bottleneck_dim) {
    return 41 * bottleneck_dim + 81 * input_dim + 1720;
}

Autoencoder Autoencoder::build(const AutoencoderConfig& config) {
    config.validate();
    Autoencoder model;
    model.config_ = config;

    const std::size_t m = config.input_dim;
    const std::size_t n = config.bottleneck_dim;
    struct Shape {
        std::size_t in, out;
        Activation act;
    };
    const Shape shapes[6] = {
        {m, kAeHidden1, Activation::tanh},  {kAeHidden1, kAeHidden2, Activation::tanh},
        {kAeHidden2, n, Activation::linear},  // bottleneck
        {n, kAeHidden2, Activation::tanh},  {kAeHidden2, kAeHidden1, Activation::tanh},
        {kAeHidden1, m, Activation::linear},  // reconstruction
    };
    for (std::size_t li = 0; li < 6; ++li) {
        SeededRng rng(derive_seed(config.seed, li));
        model.layers_.push_back(make_dense_layer(shapes[li].in, shapes[li].out, shapes[li].act, rng));
    }
    return model;
}

Autoencoder Autoencoder::from_parts(const AutoencoderConfig& config,
                                    std::vector<DenseLayer> layers) {
    config.validate();
    require_shape(layers.size() == 6, "autoencoder: expected 6 layers, got " +
                                          std::to_string(layers.size()));
    Autoencoder model;
    model.config_ = config;
    model.layers_ = std::move(layers);
    return model;
}

std::size_t Autoencoder::param_count() const { return stack_param_count(layers_); }

std::pair<Vector, Vector> Autoencoder::forward(const Vector& x) const {
    require_shape(x.size() == config_.input_dim, "autoencoder forward: input has " +
                                                     std::to_string(x.size()) +
                                                     " entries, model expects " +
                                                     std::to_string(config_.input_dim));
    Matrix row(1, x.size());
    row.data = x;
    Matrix latent = stack_forward(encoder_layers(), row);
    Matrix recon = stack_forward(decoder_layers(), latent);
    return {latent.data, recon.data};
}

Matrix Autoencoder::encode(const Matrix& x) const {
    require_shape(x.cols == config_.input_dim, "autoencoder encode: data has " +
                                                   std::to_string(x.cols) +
                                                   " columns, model expects " +
                                                   std::to_string(config_.input_dim));
    return stack_forward(encoder_layers(), x);
}

Matrix Autoencoder::reconstruct(const Matrix& x) const {
    return stack_forward(decoder_layers(), encode(x));
}

double mse_loss(const Matrix& x, const Matrix& y) {
    require_shape(x.rows == y.rows && x.cols == y.cols, "mse_loss: shapes differ");
    require_shape(x.rows >= 1, "mse_loss: empty batch");
    double total = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        double diff = x.data[i] - y.data[i];
        total += diff * diff;
    }
    return total / (2.0 * static_cast<double>(x.rows));
}

std::vector<LayerGrads> autoencoder_backward(const Autoencoder& model, const Matrix& batch) {
    require_shape(batch.rows >= 1, "autoencoder backward: empty batch");
    ForwardTrace trace;
    Matrix recon = stack_forward(model.layers(), batch, &trace);

    // d mse_loss / d recon = (recon - x) / T
    Matrix d_out(recon.rows, recon.cols);
    double inv_t = 1.0 / static_cast<double>(batch.rows);
    for (std::size_t i = 0; i < recon.data.size(); ++i)
        d_out.data[i] = (recon.data[i] - batch.data[i]) * inv_t;

    return stack_backward(model.layers(), trace, d_out);
}

namespace {

Matrix gather_rows(const Matrix& source, const std::vector<std::size_t>& idx, std::size_t begin,
                   std::size_t end) {
    Matrix out(end - begin, source.cols);
    for (std::size_t r = begin; r < end; ++r) {
        const double* src = source.row(idx[r]);
        std::copy(src, src + source.cols, out.row(r - begin));
    }
    return out;
}

}  // namespace

TrainReport train_autoencoder(Autoencoder& model, const Matrix& train, const Matrix& val) {
    const AutoencoderConfig& cfg = model.config();
    require_shape(train.cols == cfg.input_dim && val.cols == cfg.input_dim,
                  "train_autoencoder: data width does not match model input_dim");
    if (train.rows < cfg.batch_size)
        throw ConfigError("train_autoencoder: need at least batch_size (" +
                          std::to_string(cfg.batch_size) + ") training rows, got " +
                          std::to_string(train.rows));
    if (val.rows == 0) throw ConfigError("train_autoencoder: validation set is empty");

    TrainReport report;
    std::vector<DenseLayer> best_layers = model.mutable_layers();
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t epochs_since_best = 0;

    AdamConfig adam_cfg;
    adam_cfg.learning_rate = cfg.learning_rate;
    AdamState adam = AdamState::for_layers(model.layers(), adam_cfg);

    std::vector<std::size_t> order(train.rows);
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        // stream ids 0..5 are taken by layer init; epochs start at 0x100
        SeededRng shuffle_rng(derive_seed(cfg.seed, 0x100 + epoch));
        shuffle_rng.shuffle(order);

        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < train.rows; start += cfg.batch_size) {
            std::size_t stop = std::min(train.rows, start + cfg.batch_size);
            Matrix batch = gather_rows(train, order, start, stop);
            double batch_loss = mse_loss(batch, model.reconstruct(batch));
            if (!std::isfinite(batch_loss))
                throw TrainError("train_autoencoder: non-finite loss at epoch " +
                                 std::to_string(epoch + 1) + ", batch offset " +
                                 std::to_string(start));
            epoch_loss += batch_loss * 2.0 * static_cast<double>(batch.rows);

            std::vector<LayerGrads> grads = autoencoder_backward(model, batch);
            adam_step(model.mutable_layers(), grads, adam);
        }
        report.train_loss.push_back(epoch_loss / (2.0 * static_cast<double>(train.rows)));

        double val_loss = mse_loss(val, model.reconstruct(val));
        if (!std::isfinite(val_loss))
            throw TrainError("train_autoencoder: non-finite validation loss at epoch " +
                             std::to_string(epoch + 1));
        report.val_loss.push_back(val_loss);
        report.stopped_epoch = epoch + 1;

        if (val_loss < best_val) {
            best_val = val_loss;
            best_layers = model.mutable_layers();
            epochs_since_best = 0;
        } else {
            epochs_since_best += 1;
            if (epochs_since_best >= cfg.patience) break;
        }
    }

    model.mutable_layers() = std::move(best_layers);
    report.best_val_loss = best_val;
    return report;
}

}  // namespace aeids
