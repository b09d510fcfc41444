#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aeids/matrix.hpp"
#include "aeids/nn.hpp"

namespace aeids {

// The two hidden widths are part of the architecture, not tunables.
inline constexpr std::size_t kAeHidden1 = 40;
inline constexpr std::size_t kAeHidden2 = 20;

struct AutoencoderConfig {
    std::size_t input_dim = 54;      // M
    std::size_t bottleneck_dim = 4;  // N
    double learning_rate = 1e-3;
    std::size_t batch_size = 64;
    std::size_t max_epochs = 200;
    std::size_t patience = 10;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

// Closed form for the trainable parameter count of the architecture:
// 41N + 81M + 1720.
std::size_t autoencoder_param_count(std::size_t input_dim, std::size_t bottleneck_dim);

// Six dense layers: M -> 40 -> 20 -> N (encoder, tanh/tanh/linear) mirrored
// by N -> 20 -> 40 -> M. The bottleneck output is the extracted feature
// vector.
class Autoencoder {
 public:
    static Autoencoder build(const AutoencoderConfig& config);

    const AutoencoderConfig& config() const { return config_; }

    std::span<const DenseLayer> layers() const { return layers_; }
    std::span<const DenseLayer> encoder_layers() const {
        return std::span<const DenseLayer>(layers_).subspan(0, 3);
    }
    std::span<const DenseLayer> decoder_layers() const {
        return std::span<const DenseLayer>(layers_).subspan(3, 3);
    }
    std::vector<DenseLayer>& mutable_layers() { return layers_; }

    std::size_t param_count() const;

    // single sample: returns (latent, reconstruction)
    std::pair<Vector, Vector> forward(const Vector& x) const;

    // batch versions; rows are independent, so these parallelize across rows
    // without changing any result
    Matrix encode(const Matrix& x) const;
    Matrix reconstruct(const Matrix& x) const;

    // deserialization hook used by model_io
    static Autoencoder from_parts(const AutoencoderConfig& config, std::vector<DenseLayer> layers);

 private:
    AutoencoderConfig config_;
    std::vector<DenseLayer> layers_;
};

// (1 / 2T) * sum_j ||x_j - y_j||^2 over the T rows. The 1/2 factor is part
// of the objective and is kept so reported loss curves match ports.
double mse_loss(const Matrix& x, const Matrix& y);

// Gradient of mse_loss(batch, reconstruct(batch)) w.r.t. every weight and
// bias, in layer order.
std::vector<LayerGrads> autoencoder_backward(const Autoencoder& model, const Matrix& batch);

struct TrainReport {
    std::vector<double> train_loss;  // one entry per completed epoch
    std::vector<double> val_loss;
    std::size_t stopped_epoch = 0;
    double best_val_loss = 0.0;
};

// Mini-batch Adam with seeded shuffling and early stopping on the validation
// loss; the model holds the best-validation weights on return. Throws
// TrainError if the loss goes non-finite.
TrainReport train_autoencoder(Autoencoder& model, const Matrix& train, const Matrix& val);

}  // namespace aeids
