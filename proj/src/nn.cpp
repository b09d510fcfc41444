#include "aeids/nn.hpp"

#include <cmath>

#include "aeids/error.hpp"

namespace aeids {

DenseLayer make_dense_layer(std::size_t in_dim, std::size_t out_dim, Activation act,
                            SeededRng& rng) {
    DenseLayer layer;
    layer.weights = gaussian_matrix(rng, out_dim, in_dim, 1.0 / std::sqrt(static_cast<double>(in_dim)));
    layer.bias.assign(out_dim, 0.0);
    layer.activation = act;
    return layer;
}

Matrix layer_forward(const DenseLayer& layer, const Matrix& x) {
    require_shape(x.cols == layer.in_dim(), "layer_forward: input has " + std::to_string(x.cols) +
                                                " columns, layer expects " +
                                                std::to_string(layer.in_dim()));
    // z = x * W^T + b
    Matrix z = matmul(x, transpose(layer.weights));
    for (std::size_t i = 0; i < z.rows; ++i) {
        double* row = z.row(i);
        for (std::size_t j = 0; j < z.cols; ++j) row[j] += layer.bias[j];
    }
    if (layer.activation == Activation::tanh) return tanh_matrix(z);
    return z;
}

Matrix stack_forward(std::span<const DenseLayer> layers, const Matrix& x, ForwardTrace* trace) {
    Matrix current = x;
    if (trace) {
        trace->activations.clear();
        trace->activations.push_back(current);
    }
    for (const DenseLayer& layer : layers) {
        current = layer_forward(layer, current);
        if (trace) trace->activations.push_back(current);
    }
    return current;
}

std::vector<LayerGrads> stack_backward(std::span<const DenseLayer> layers,
                                       const ForwardTrace& trace, const Matrix& d_output) {
    require_shape(trace.activations.size() == layers.size() + 1,
                  "stack_backward: trace does not match layer stack");
    std::vector<LayerGrads> grads(layers.size());
    Matrix d_act = d_output;  // dLoss/d(output of current layer)
    for (std::size_t li = layers.size(); li-- > 0;) {
        const DenseLayer& layer = layers[li];
        const Matrix& out = trace.activations[li + 1];
        const Matrix& in = trace.activations[li];

        // through the activation: tanh'(z) = 1 - tanh(z)^2 with out = tanh(z)
        Matrix d_z = d_act;
        if (layer.activation == Activation::tanh) {
            for (std::size_t i = 0; i < d_z.data.size(); ++i)
                d_z.data[i] *= 1.0 - out.data[i] * out.data[i];
        }

        LayerGrads& g = grads[li];
        g.d_weights = matmul(transpose(d_z), in);  // out x in
        g.d_bias.assign(layer.out_dim(), 0.0);
        for (std::size_t i = 0; i < d_z.rows; ++i) {
            const double* row = d_z.row(i);
            for (std::size_t j = 0; j < d_z.cols; ++j) g.d_bias[j] += row[j];
        }
        if (li > 0) d_act = matmul(d_z, layer.weights);  // batch x in
    }
    return grads;
}

std::size_t stack_param_count(std::span<const DenseLayer> layers) {
    std::size_t total = 0;
    for (const DenseLayer& layer : layers) total += layer.param_count();
    return total;
}

AdamState AdamState::for_layers(std::span<const DenseLayer> layers, const AdamConfig& config) {
    AdamState state;
    state.config = config;
    for (const DenseLayer& layer : layers) {
        state.m_weights.emplace_back(layer.out_dim(), layer.in_dim());
        state.v_weights.emplace_back(layer.out_dim(), layer.in_dim());
        state.m_bias.emplace_back(layer.out_dim(), 0.0);
        state.v_bias.emplace_back(layer.out_dim(), 0.0);
    }
    return state;
}

namespace {

void adam_update(double* param, double* m, double* v, const double* grad, std::size_t n,
                 const AdamConfig& cfg, double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
        double m_hat = m[i] / bc1;
        double v_hat = v[i] / bc2;
        param[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
}

}  // namespace

void adam_step(std::vector<DenseLayer>& layers, const std::vector<LayerGrads>& grads,
               AdamState& state) {
    require_shape(layers.size() == grads.size() && layers.size() == state.m_weights.size(),
                  "adam_step: layer/grad/state sizes differ");
    state.step += 1;
    const AdamConfig& cfg = state.config;
    double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t li = 0; li < layers.size(); ++li) {
        adam_update(layers[li].weights.data.data(), state.m_weights[li].data.data(),
                    state.v_weights[li].data.data(), grads[li].d_weights.data.data(),
                    layers[li].weights.size(), cfg, bc1, bc2);
        adam_update(layers[li].bias.data(), state.m_bias[li].data(), state.v_bias[li].data(),
                    grads[li].d_bias.data(), layers[li].bias.size(), cfg, bc1, bc2);
    }
}

Matrix softmax_rows(const Matrix& logits) {
    Matrix probs(logits.rows, logits.cols);
    for (std::size_t i = 0; i < logits.rows; ++i) {
        const double* in = logits.row(i);
        double* out = probs.row(i);
        double max_val = in[0];
        for (std::size_t j = 1; j < logits.cols; ++j) max_val = std::max(max_val, in[j]);
        double sum = 0.0;
        for (std::size_t j = 0; j < logits.cols; ++j) {
            out[j] = std::exp(in[j] - max_val);
            sum += out[j];
        }
        for (std::size_t j = 0; j < logits.cols; ++j) out[j] /= sum;
    }
    return probs;
}

double cross_entropy(const Matrix& probs, const std::vector<int>& labels) {
    require_shape(probs.rows == labels.size(), "cross_entropy: row/label count mismatch");
    double loss = 0.0;
    for (std::size_t i = 0; i < probs.rows; ++i) {
        double p = probs(i, static_cast<std::size_t>(labels[i]));
        loss -= std::log(std::max(p, 1e-300));
    }
    return loss / static_cast<double>(probs.rows);
}

Matrix cross_entropy_d_logits(const Matrix& probs, const std::vector<int>& labels) {
    Matrix d = probs;
    double scale = 1.0 / static_cast<double>(probs.rows);
    for (std::size_t i = 0; i < d.rows; ++i) {
        d(i, static_cast<std::size_t>(labels[i])) -= 1.0;
        double* row = d.row(i);
        for (std::size_t j = 0; j < d.cols; ++j) row[j] *= scale;
    }
    return d;
}

}  // namespace aeids
