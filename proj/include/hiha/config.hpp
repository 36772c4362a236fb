#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hiha/spectral.hpp"
#include "hiha/ssm.hpp"

namespace hiha {

/// Hidden widths and sinusoidal frequency for one pipeline stage. Input is
/// always the 4-vector (x, y, z, p_norm), output a scalar.
struct NetSpec {
    std::vector<int> hidden;
    float omega = 14.0f;

    std::vector<int> widths() const {
        std::vector<int> w{4};
        w.insert(w.end(), hidden.begin(), hidden.end());
        w.push_back(1);
        return w;
    }
};

/// Full codec configuration. Defaults follow the published hyperparameters:
/// band thresholds from (omega=14, n_c=256) and (22, 128) for re-decomposition,
/// the per-stage omega table {14, 15, 22, 15, 16}, lr 1e-4 with cosine
/// annealing, N_scale=27 (3 per axis), and a 0.999 outlier quantile.
struct CodecConfig {
    // Band thresholds.
    double omega = 14.0;
    int n_c = 256;
    double omega_redecomp = 22.0;
    int n_c_redecomp = 128;
    FreqUnit freq_unit = FreqUnit::ModeIndex;

    // Targets (normalized RMSE).
    double eps = 1e-3;
    double eps_retrain = 0.0;  // 0 -> same as eps

    // SSM.
    SparsifyPolicy ssm_policy = SparsifyPolicy::by_quantile(0.999);

    // MIM.
    int mim_downscale = 3;
    NetSpec mim_thumb{{256, 256, 256}, 14.0f};
    NetSpec mim_resid{{128, 128}, 15.0f};
    int mim_thumb_steps = 5000;
    int mim_resid_steps = 3000;
    /// Thumbnail/residual fits target eps * this factor, leaving error budget
    /// for the other bands.
    double mim_eps_factor = 0.5;

    // IDM.
    NetSpec idm_block{{128, 128, 128, 128}, 22.0f};
    int idm_budget = 2000;
    int idm_max_depth = 3;

    // TRC.
    NetSpec trc_resid_thumb{{256, 256, 256}, 15.0f};
    NetSpec trc_resid_block{{128, 128}, 16.0f};
    int trc_warm_steps = 500;
    int trc_thumb_steps = 1500;
    int trc_block_steps = 1000;

    // Training.
    float lr_init = 1e-4f;
    uint64_t seed = 0;
    int threads = 1;

    // Toggles.
    bool no_ssm = false;
    bool no_mim = false;
    bool no_idm = false;
    bool no_trc = false;
    bool quant16 = false;
    bool best_effort = false;

    /// Ablation fallback: a disabled band route degrades to one global Siren
    /// fit of that band with this net.
    NetSpec fallback_net{{48, 48}, 14.0f};
    int fallback_steps = 3000;

    BandThresholds thresholds() const {
        return BandThresholds::make(omega, n_c, freq_unit);
    }
    BandThresholds redecomp_thresholds() const {
        return BandThresholds::make(omega_redecomp, n_c_redecomp, freq_unit);
    }
    double retrain_eps() const { return eps_retrain > 0.0 ? eps_retrain : eps; }

    void validate() const;

    /// Narrow nets and shorter budgets sized for small grids, where the
    /// published widths would exceed the raw field size.
    static CodecConfig desk_profile();

    std::string to_json() const;
    static CodecConfig from_json(const std::string& text);
    /// Overlays every key present in the JSON onto this config.
    void merge_json(const std::string& text);
};

}  // namespace hiha
