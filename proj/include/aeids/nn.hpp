#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aeids/kernels.hpp"
#include "aeids/matrix.hpp"
#include "aeids/rng.hpp"

namespace aeids {

enum class Activation { tanh, linear };

// Fully connected layer, weights stored out x in.
struct DenseLayer {
    Matrix weights;
    Vector bias;
    Activation activation = Activation::linear;

    std::size_t in_dim() const { return weights.cols; }
    std::size_t out_dim() const { return weights.rows; }
    std::size_t param_count() const { return weights.size() + bias.size(); }
};

// Gaussian weights with stddev 1/sqrt(fan_in), zero bias. Keeps tanh
// pre-activations in the linear regime at the start of training.
DenseLayer make_dense_layer(std::size_t in_dim, std::size_t out_dim, Activation act,
                            SeededRng& rng);

// Batch application: X is batch x in, result is batch x out.
Matrix layer_forward(const DenseLayer& layer, const Matrix& x);

// Per-layer outputs kept for backprop; activations[0] is the input batch,
// activations[i + 1] the output of layer i.
struct ForwardTrace {
    std::vector<Matrix> activations;
};

Matrix stack_forward(std::span<const DenseLayer> layers, const Matrix& x,
                     ForwardTrace* trace = nullptr);

struct LayerGrads {
    Matrix d_weights;
    Vector d_bias;
};

// Reverse-mode pass. d_output is dLoss/d(activations.back()); tanh layers use
// the 1 - tanh^2 derivative on their cached outputs.
std::vector<LayerGrads> stack_backward(std::span<const DenseLayer> layers,
                                       const ForwardTrace& trace, const Matrix& d_output);

std::size_t stack_param_count(std::span<const DenseLayer> layers);

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// First/second moment accumulators mirroring the layer parameter shapes.
struct AdamState {
    AdamConfig config;
    std::vector<Matrix> m_weights, v_weights;
    std::vector<Vector> m_bias, v_bias;
    long step = 0;

    static AdamState for_layers(std::span<const DenseLayer> layers, const AdamConfig& config);
};

// Standard Adam update with bias correction; increments state.step.
void adam_step(std::vector<DenseLayer>& layers, const std::vector<LayerGrads>& grads,
               AdamState& state);

// Softmax / cross-entropy head shared by classifier code.
Matrix softmax_rows(const Matrix& logits);
double cross_entropy(const Matrix& probs, const std::vector<int>& labels);
// dLoss/dlogits for mean cross-entropy over the batch: (probs - onehot) / batch
Matrix cross_entropy_d_logits(const Matrix& probs, const std::vector<int>& labels);

}  // namespace aeids
