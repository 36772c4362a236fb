#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "hiha/errors.hpp"
#include "hiha/grid.hpp"
#include "hiha/util.hpp"

namespace hiha {

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using RowX = Eigen::Matrix<S, 1, Eigen::Dynamic>;

/// Fully-connected MLP with sine activations. All layers except the last are
/// sine-activated; the last is linear (a one-layer net keeps its sine).
/// The first layer's pre-activation is scaled by omega_0, so effective input
/// frequencies are omega_0 * W * x.
template <typename S>
struct NetT {
    std::vector<int> widths;  // [in, hidden..., out]
    S omega0 = S(1);
    std::vector<MatX<S>> W;  // per layer, (out x in)
    std::vector<VecX<S>> b;

    int layer_count() const { return static_cast<int>(W.size()); }
    int input_dim() const { return widths.front(); }
    int output_dim() const { return widths.back(); }

    bool sine_layer(int layer) const {
        return layer_count() == 1 || layer < layer_count() - 1;
    }
    S layer_scale(int layer) const { return layer == 0 ? omega0 : S(1); }

    template <typename T>
    NetT<T> cast() const {
        NetT<T> out;
        out.widths = widths;
        out.omega0 = static_cast<T>(omega0);
        out.W.reserve(W.size());
        out.b.reserve(b.size());
        for (const auto& w : W) out.W.push_back(w.template cast<T>());
        for (const auto& v : b) out.b.push_back(v.template cast<T>());
        return out;
    }
};

using SirenNetwork = NetT<float>;

/// Sum over layers of (fan_in + 1) * fan_out; drives compression-ratio
/// accounting and must match the serialized parameter payload.
inline size_t parameter_count(const std::vector<int>& widths) {
    size_t n = 0;
    for (size_t l = 0; l + 1 < widths.size(); ++l) {
        n += (static_cast<size_t>(widths[l]) + 1) * static_cast<size_t>(widths[l + 1]);
    }
    return n;
}

/// Siren initialization: first layer W ~ U(-1/fan_in, 1/fan_in) (scaled by
/// omega_0 in the forward pass), deeper layers W ~ U(-sqrt(6/fan_in),
/// +sqrt(6/fan_in)). Biases start at zero. Deterministic per seed.
SirenNetwork siren_init(const std::vector<int>& widths, float omega0, uint64_t seed);

template <typename S>
struct GradientsT {
    std::vector<MatX<S>> dW;
    std::vector<VecX<S>> db;
};

/// Scratch buffers reusable across training steps.
template <typename S>
struct WorkspaceT {
    std::vector<MatX<S>> act;    // post-activation per layer
    std::vector<MatX<S>> pre;    // scaled pre-activation for sine layers
    MatX<S> delta_a, delta_b;    // ping-pong upstream gradients
    GradientsT<S> grads;
};

/// Forward pass over a (in_dim x N) coordinate batch; returns (out_dim x N).
template <typename S>
MatX<S> siren_forward(const NetT<S>& net, const Eigen::Ref<const MatX<S>>& coords) {
    if (coords.rows() != net.input_dim()) {
        throw ShapeError("siren_forward: coords have " + std::to_string(coords.rows()) +
                         " rows, network expects " + std::to_string(net.input_dim()));
    }
    MatX<S> a = coords;
    for (int l = 0; l < net.layer_count(); ++l) {
        MatX<S> z = (net.W[l] * a).colwise() + net.b[l];
        if (net.sine_layer(l)) {
            a = (z * net.layer_scale(l)).array().sin().matrix();
        } else {
            a = std::move(z);
        }
    }
    return a;
}

/// Analytic MSE gradients via cosine backprop. Returns the batch MSE computed
/// in 64-bit. Gradients land in ws.grads.
template <typename S>
double siren_gradient(const NetT<S>& net, const Eigen::Ref<const MatX<S>>& coords,
                      const Eigen::Ref<const MatX<S>>& targets, WorkspaceT<S>& ws) {
    const int layers = net.layer_count();
    const auto n = coords.cols();
    ws.act.resize(layers);
    ws.pre.resize(layers);
    if (ws.grads.dW.size() != static_cast<size_t>(layers)) {
        ws.grads.dW.resize(layers);
        ws.grads.db.resize(layers);
    }

    // Forward, keeping activations.
    for (int l = 0; l < layers; ++l) {
        const MatX<S>& input = l == 0 ? coords : ws.act[l - 1];
        MatX<S>& z = ws.pre[l];
        z.noalias() = net.W[l] * input;
        z.colwise() += net.b[l];
        if (net.sine_layer(l)) {
            const S scale = net.layer_scale(l);
            if (scale != S(1)) z *= scale;
            ws.act[l] = z.array().sin().matrix();
        } else {
            ws.act[l] = z;
        }
    }

    const MatX<S>& out = ws.act[layers - 1];
    double loss = 0.0;
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            const double d = static_cast<double>(out(r, c)) - static_cast<double>(targets(r, c));
            loss += d * d;
        }
    }
    const double count = static_cast<double>(out.size());
    loss /= count;

    // Backward. delta starts as dLoss/dOut.
    MatX<S>& delta = ws.delta_a;
    delta = (out - targets) * static_cast<S>(2.0 / count);
    for (int l = layers - 1; l >= 0; --l) {
        if (net.sine_layer(l)) {
            const S scale = net.layer_scale(l);
            delta.array() *= ws.pre[l].array().cos();
            if (scale != S(1)) delta *= scale;
        }
        const MatX<S>& input = l == 0 ? coords : ws.act[l - 1];
        ws.grads.dW[l].noalias() = delta * input.transpose();
        ws.grads.db[l] = delta.rowwise().sum();
        if (l > 0) {
            ws.delta_b.noalias() = net.W[l].transpose() * delta;
            delta.swap(ws.delta_b);
        }
    }
    return loss;
}

/// Convenience wrapper allocating its own workspace.
template <typename S>
std::pair<GradientsT<S>, double> siren_gradient(const NetT<S>& net,
                                                const Eigen::Ref<const MatX<S>>& coords,
                                                const Eigen::Ref<const MatX<S>>& targets) {
    WorkspaceT<S> ws;
    const double loss = siren_gradient(net, coords, targets, ws);
    return {std::move(ws.grads), loss};
}

struct TrainConfig {
    int max_steps = 1000;
    float lr_init = 1e-4f;
    double target_rmse = 0.0;  // 0 disables early stop
    uint64_t seed = 0;
    /// 1.0 = full batch. Falls to 0.25 automatically above 2^20 voxels.
    double batch_fraction = 1.0;
    int eval_every = 100;
};

struct TrainReport {
    int steps_run = 0;
    double final_rmse = 0.0;
    std::vector<std::pair<int, double>> loss_curve;  // (step, mse), subsampled
    double wall_time = 0.0;
    bool diverged = false;
};

/// Overfits a fresh Siren to the targets: Adam (beta1=0.9, beta2=0.999,
/// eps=1e-8) with cosine-annealed lr from lr_init down to lr_init/100 over
/// max_steps. Returns the best parameters seen (RMSE checkpointed every
/// eval_every steps).
std::pair<SirenNetwork, TrainReport> siren_fit(const Eigen::Ref<const MatX<float>>& coords,
                                               const Eigen::Ref<const MatX<float>>& targets,
                                               const std::vector<int>& widths, float omega0,
                                               const TrainConfig& cfg);

/// Same training loop but continues from an existing network (warm start).
TrainReport siren_fit_continue(SirenNetwork& net, const Eigen::Ref<const MatX<float>>& coords,
                               const Eigen::Ref<const MatX<float>>& targets,
                               const TrainConfig& cfg);

/// RMSE of the network prediction against targets, 64-bit accumulation.
double siren_eval_rmse(const SirenNetwork& net, const Eigen::Ref<const MatX<float>>& coords,
                       const Eigen::Ref<const MatX<float>>& targets);

/// Zero-copy 4xN view of a coordinate tensor.
inline Eigen::Map<const MatX<float>> coords_matrix(const CoordinateTensor& t) {
    return Eigen::Map<const MatX<float>>(t.xyzp.data(), 4,
                                         static_cast<Eigen::Index>(t.voxel_count()));
}

}  // namespace hiha
