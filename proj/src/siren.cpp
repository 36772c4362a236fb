#include "hiha/siren.hpp"

#include <cmath>

namespace hiha {

SirenNetwork siren_init(const std::vector<int>& widths, float omega0, uint64_t seed) {
    if (widths.size() < 2) throw ConfigError("siren_init: need at least input and output widths");
    for (int w : widths) {
        if (w < 1) throw ConfigError("siren_init: zero or negative layer width");
    }
    if (!(omega0 > 0.0f)) throw ConfigError("siren_init: omega_0 must be positive");

    SirenNetwork net;
    net.widths = widths;
    net.omega0 = omega0;
    Rng rng(seed);
    for (size_t l = 0; l + 1 < widths.size(); ++l) {
        const int fan_in = widths[l];
        const int fan_out = widths[l + 1];
        const float bound = l == 0 ? 1.0f / static_cast<float>(fan_in)
                                   : std::sqrt(6.0f / static_cast<float>(fan_in));
        MatX<float> w(fan_out, fan_in);
        // Column-major fill order pins the byte-for-byte determinism contract.
        for (int c = 0; c < fan_in; ++c) {
            for (int r = 0; r < fan_out; ++r) {
                w(r, c) = rng.next_uniform(-bound, bound);
            }
        }
        net.W.push_back(std::move(w));
        net.b.push_back(VecX<float>::Zero(fan_out));
    }
    return net;
}

double siren_eval_rmse(const SirenNetwork& net, const Eigen::Ref<const MatX<float>>& coords,
                       const Eigen::Ref<const MatX<float>>& targets) {
    const MatX<float> out = siren_forward<float>(net, coords);
    double acc = 0.0;
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            const double d = static_cast<double>(out(r, c)) - static_cast<double>(targets(r, c));
            acc += d * d;
        }
    }
    return std::sqrt(acc / static_cast<double>(out.size()));
}

namespace {

struct AdamState {
    std::vector<MatX<float>> mW, vW;
    std::vector<VecX<float>> mb, vb;
    int t = 0;

    explicit AdamState(const SirenNetwork& net) {
        for (const auto& w : net.W) {
            mW.push_back(MatX<float>::Zero(w.rows(), w.cols()));
            vW.push_back(MatX<float>::Zero(w.rows(), w.cols()));
        }
        for (const auto& v : net.b) {
            mb.push_back(VecX<float>::Zero(v.size()));
            vb.push_back(VecX<float>::Zero(v.size()));
        }
    }

    void update(SirenNetwork& net, const GradientsT<float>& g, float lr) {
        constexpr float beta1 = 0.9f, beta2 = 0.999f, eps = 1e-8f;
        ++t;
        const float bc1 = 1.0f - std::pow(beta1, static_cast<float>(t));
        const float bc2 = 1.0f - std::pow(beta2, static_cast<float>(t));
        const float alpha = lr / bc1;
        for (size_t l = 0; l < net.W.size(); ++l) {
            mW[l] = beta1 * mW[l] + (1.0f - beta1) * g.dW[l];
            vW[l] = beta2 * vW[l].array().matrix() +
                    (1.0f - beta2) * g.dW[l].array().square().matrix();
            net.W[l].array() -=
                alpha * mW[l].array() / ((vW[l].array() / bc2).sqrt() + eps);
            mb[l] = beta1 * mb[l] + (1.0f - beta1) * g.db[l];
            vb[l] = beta2 * vb[l].array().matrix() +
                    (1.0f - beta2) * g.db[l].array().square().matrix();
            net.b[l].array() -=
                alpha * mb[l].array() / ((vb[l].array() / bc2).sqrt() + eps);
        }
    }
};

float cosine_lr(float lr_init, int step, int max_steps) {
    const float lr_final = 0.01f * lr_init;
    if (max_steps <= 1) return lr_init;
    const double phase = 3.14159265358979323846 * static_cast<double>(step) /
                         static_cast<double>(max_steps - 1);
    return lr_final +
           0.5f * (lr_init - lr_final) * static_cast<float>(1.0 + std::cos(phase));
}

TrainReport fit_loop(SirenNetwork& net, const Eigen::Ref<const MatX<float>>& coords,
                     const Eigen::Ref<const MatX<float>>& targets, const TrainConfig& cfg) {
    Stopwatch clock;
    TrainReport report;
    const Eigen::Index n = coords.cols();

    double batch_fraction = cfg.batch_fraction;
    if (batch_fraction >= 1.0 && n > (Eigen::Index{1} << 20)) batch_fraction = 0.25;
    const bool full_batch = batch_fraction >= 1.0;
    const Eigen::Index batch_n =
        full_batch ? n : std::max<Eigen::Index>(1, static_cast<Eigen::Index>(n * batch_fraction));

    WorkspaceT<float> ws;
    AdamState adam(net);
    Rng rng(derive_seed(cfg.seed, 0x5a5a5a5aull));

    SirenNetwork best = net;
    double best_rmse = siren_eval_rmse(net, coords, targets);
    report.final_rmse = best_rmse;
    if (cfg.max_steps <= 0) {
        report.wall_time = clock.seconds();
        return report;
    }

    // Subsample scratch (only used when batching).
    std::vector<Eigen::Index> pool(full_batch ? 0 : static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(pool.size()); ++i) pool[i] = i;
    MatX<float> batch_x, batch_y;

    const int curve_stride = std::max(1, cfg.max_steps / 200);
    int step = 0;
    for (; step < cfg.max_steps; ++step) {
        double loss;
        if (full_batch) {
            loss = siren_gradient<float>(net, coords, targets, ws);
        } else {
            // Partial Fisher-Yates draw of batch_n distinct voxels.
            for (Eigen::Index i = 0; i < batch_n; ++i) {
                const auto j = i + static_cast<Eigen::Index>(rng.next_below(pool.size() - i));
                std::swap(pool[i], pool[j]);
            }
            batch_x.resize(coords.rows(), batch_n);
            batch_y.resize(targets.rows(), batch_n);
            for (Eigen::Index i = 0; i < batch_n; ++i) {
                batch_x.col(i) = coords.col(pool[i]);
                batch_y.col(i) = targets.col(pool[i]);
            }
            loss = siren_gradient<float>(net, batch_x, batch_y, ws);
        }

        if (!std::isfinite(loss)) {
            report.diverged = true;
            break;
        }
        if (step % curve_stride == 0) report.loss_curve.emplace_back(step, loss);

        // Checkpoint cadence; with a full batch sqrt(loss) is the exact RMSE
        // of the current parameters, so the early stop costs nothing extra.
        const double rmse_now = full_batch ? std::sqrt(loss) : -1.0;
        if (rmse_now >= 0.0 && rmse_now < best_rmse) {
            if (step % cfg.eval_every == 0 ||
                (cfg.target_rmse > 0.0 && rmse_now <= cfg.target_rmse)) {
                best = net;
                best_rmse = rmse_now;
            }
        } else if (!full_batch && step > 0 && step % cfg.eval_every == 0) {
            const double full_rmse = siren_eval_rmse(net, coords, targets);
            if (full_rmse < best_rmse) {
                best = net;
                best_rmse = full_rmse;
            }
        }
        if (cfg.target_rmse > 0.0 && best_rmse <= cfg.target_rmse) {
            ++step;
            break;
        }

        adam.update(net, ws.grads, cosine_lr(cfg.lr_init, step, cfg.max_steps));
    }

    // Final state may beat the last checkpoint.
    const double final_state_rmse = siren_eval_rmse(net, coords, targets);
    if (final_state_rmse < best_rmse) {
        best = net;
        best_rmse = final_state_rmse;
    }
    net = best;
    report.steps_run = step;
    report.final_rmse = siren_eval_rmse(net, coords, targets);
    report.loss_curve.emplace_back(step, report.final_rmse * report.final_rmse);
    report.wall_time = clock.seconds();
    return report;
}

}  // namespace

std::pair<SirenNetwork, TrainReport> siren_fit(const Eigen::Ref<const MatX<float>>& coords,
                                               const Eigen::Ref<const MatX<float>>& targets,
                                               const std::vector<int>& widths, float omega0,
                                               const TrainConfig& cfg) {
    SirenNetwork net = siren_init(widths, omega0, cfg.seed);
    TrainReport report = fit_loop(net, coords, targets, cfg);
    return {std::move(net), report};
}

TrainReport siren_fit_continue(SirenNetwork& net, const Eigen::Ref<const MatX<float>>& coords,
                               const Eigen::Ref<const MatX<float>>& targets,
                               const TrainConfig& cfg) {
    return fit_loop(net, coords, targets, cfg);
}

}  // namespace hiha
