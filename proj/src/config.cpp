#include "hiha/config.hpp"

#include <json.hpp>

namespace hiha {

using nlohmann::json;

void CodecConfig::validate() const {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive (an exact-match target is unreachable for a lossy codec)");
    if (eps_retrain < 0.0) throw ConfigError("eps_retrain must be nonnegative");
    if (!(omega > 0.0) || n_c < 1) throw ConfigError("band thresholds need omega > 0 and n_c >= 1");
    if (!(omega_redecomp > 0.0) || n_c_redecomp < 1) {
        throw ConfigError("re-decomposition thresholds need omega > 0 and n_c >= 1");
    }
    if (mim_downscale < 1) throw ConfigError("mim_downscale must be >= 1");
    if (idm_max_depth < 1) throw ConfigError("idm_max_depth must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (!(lr_init > 0.0f)) throw ConfigError("lr_init must be positive");
    for (const NetSpec* n : {&mim_thumb, &mim_resid, &idm_block, &trc_resid_thumb,
                             &trc_resid_block, &fallback_net}) {
        if (n->hidden.empty()) throw ConfigError("net specs need at least one hidden layer");
        for (int w : n->hidden) {
            if (w < 1) throw ConfigError("net hidden widths must be positive");
        }
        if (!(n->omega > 0.0f)) throw ConfigError("net omega must be positive");
    }
    if (ssm_policy.mode == SparsifyPolicy::Mode::Quantile &&
        !(ssm_policy.quantile >= 0.0 && ssm_policy.quantile <= 1.0)) {
        throw ConfigError("ssm quantile must lie in [0, 1]");
    }
}

CodecConfig CodecConfig::desk_profile() {
    CodecConfig c;
    c.mim_thumb = {{24, 24, 24}, 14.0f};
    c.mim_resid = {{16, 16}, 15.0f};
    c.idm_block = {{20, 20}, 22.0f};
    c.trc_resid_thumb = {{24, 24, 24}, 15.0f};
    c.trc_resid_block = {{16, 16}, 16.0f};
    c.mim_thumb_steps = 4000;
    c.mim_resid_steps = 2500;
    c.idm_budget = 2500;
    c.trc_thumb_steps = 2000;
    c.trc_block_steps = 1200;
    c.fallback_net = {{48, 48}, 14.0f};
    c.fallback_steps = 3000;
    c.quant16 = true;
    return c;
}

namespace {

json netspec_to_json(const NetSpec& n) {
    return {{"hidden", n.hidden}, {"omega", n.omega}};
}

void netspec_from_json(const json& j, NetSpec& n) {
    if (j.contains("hidden")) n.hidden = j.at("hidden").get<std::vector<int>>();
    if (j.contains("omega")) n.omega = j.at("omega").get<float>();
}

}  // namespace

std::string CodecConfig::to_json() const {
    json j;
    j["omega"] = omega;
    j["nc"] = n_c;
    j["omega_redecomp"] = omega_redecomp;
    j["nc_redecomp"] = n_c_redecomp;
    j["freq_unit"] = freq_unit == FreqUnit::Angular ? "angular" : "mode-index";
    j["eps"] = eps;
    j["eps_retrain"] = eps_retrain;
    j["ssm"] = {{"mode", ssm_policy.mode == SparsifyPolicy::Mode::Absolute ? "absolute" : "quantile"},
                {"quantile", ssm_policy.quantile},
                {"threshold", ssm_policy.threshold}};
    j["mim"] = {{"downscale", mim_downscale},
                {"thumb", netspec_to_json(mim_thumb)},
                {"resid", netspec_to_json(mim_resid)},
                {"thumb_steps", mim_thumb_steps},
                {"resid_steps", mim_resid_steps},
                {"eps_factor", mim_eps_factor}};
    j["idm"] = {{"block", netspec_to_json(idm_block)},
                {"budget", idm_budget},
                {"max_depth", idm_max_depth}};
    j["trc"] = {{"resid_thumb", netspec_to_json(trc_resid_thumb)},
                {"resid_block", netspec_to_json(trc_resid_block)},
                {"warm_steps", trc_warm_steps},
                {"thumb_steps", trc_thumb_steps},
                {"block_steps", trc_block_steps}};
    j["lr_init"] = lr_init;
    j["seed"] = seed;
    j["threads"] = threads;
    j["no_ssm"] = no_ssm;
    j["no_mim"] = no_mim;
    j["no_idm"] = no_idm;
    j["no_trc"] = no_trc;
    j["quant16"] = quant16;
    j["best_effort"] = best_effort;
    j["fallback"] = {{"net", netspec_to_json(fallback_net)}, {"steps", fallback_steps}};
    return j.dump(2);
}

void CodecConfig::merge_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    try {
        if (j.contains("omega")) omega = j["omega"].get<double>();
        if (j.contains("nc")) n_c = j["nc"].get<int>();
        if (j.contains("omega_redecomp")) omega_redecomp = j["omega_redecomp"].get<double>();
        if (j.contains("nc_redecomp")) n_c_redecomp = j["nc_redecomp"].get<int>();
        if (j.contains("freq_unit")) {
            const std::string u = j["freq_unit"].get<std::string>();
            if (u == "angular") freq_unit = FreqUnit::Angular;
            else if (u == "mode-index") freq_unit = FreqUnit::ModeIndex;
            else throw ConfigError("freq_unit must be 'mode-index' or 'angular'");
        }
        if (j.contains("eps")) eps = j["eps"].get<double>();
        if (j.contains("eps_retrain")) eps_retrain = j["eps_retrain"].get<double>();
        if (j.contains("ssm")) {
            const auto& s = j["ssm"];
            if (s.contains("mode")) {
                const std::string m = s["mode"].get<std::string>();
                if (m == "absolute") ssm_policy.mode = SparsifyPolicy::Mode::Absolute;
                else if (m == "quantile") ssm_policy.mode = SparsifyPolicy::Mode::Quantile;
                else throw ConfigError("ssm mode must be 'quantile' or 'absolute'");
            }
            if (s.contains("quantile")) ssm_policy.quantile = s["quantile"].get<double>();
            if (s.contains("threshold")) ssm_policy.threshold = s["threshold"].get<double>();
        }
        if (j.contains("mim")) {
            const auto& m = j["mim"];
            if (m.contains("downscale")) mim_downscale = m["downscale"].get<int>();
            if (m.contains("thumb")) netspec_from_json(m["thumb"], mim_thumb);
            if (m.contains("resid")) netspec_from_json(m["resid"], mim_resid);
            if (m.contains("thumb_steps")) mim_thumb_steps = m["thumb_steps"].get<int>();
            if (m.contains("resid_steps")) mim_resid_steps = m["resid_steps"].get<int>();
            if (m.contains("eps_factor")) mim_eps_factor = m["eps_factor"].get<double>();
        }
        if (j.contains("idm")) {
            const auto& m = j["idm"];
            if (m.contains("block")) netspec_from_json(m["block"], idm_block);
            if (m.contains("budget")) idm_budget = m["budget"].get<int>();
            if (m.contains("max_depth")) idm_max_depth = m["max_depth"].get<int>();
        }
        if (j.contains("trc")) {
            const auto& m = j["trc"];
            if (m.contains("resid_thumb")) netspec_from_json(m["resid_thumb"], trc_resid_thumb);
            if (m.contains("resid_block")) netspec_from_json(m["resid_block"], trc_resid_block);
            if (m.contains("warm_steps")) trc_warm_steps = m["warm_steps"].get<int>();
            if (m.contains("thumb_steps")) trc_thumb_steps = m["thumb_steps"].get<int>();
            if (m.contains("block_steps")) trc_block_steps = m["block_steps"].get<int>();
        }
        if (j.contains("lr_init")) lr_init = j["lr_init"].get<float>();
        if (j.contains("seed")) seed = j["seed"].get<uint64_t>();
        if (j.contains("threads")) threads = j["threads"].get<int>();
        if (j.contains("no_ssm")) no_ssm = j["no_ssm"].get<bool>();
        if (j.contains("no_mim")) no_mim = j["no_mim"].get<bool>();
        if (j.contains("no_idm")) no_idm = j["no_idm"].get<bool>();
        if (j.contains("no_trc")) no_trc = j["no_trc"].get<bool>();
        if (j.contains("quant16")) quant16 = j["quant16"].get<bool>();
        if (j.contains("best_effort")) best_effort = j["best_effort"].get<bool>();
        if (j.contains("fallback")) {
            const auto& f = j["fallback"];
            if (f.contains("net")) netspec_from_json(f["net"], fallback_net);
            if (f.contains("steps")) fallback_steps = f["steps"].get<int>();
        }
        if (j.contains("profile")) {
            const std::string p = j["profile"].get<std::string>();
            if (p != "paper" && p != "desk") throw ConfigError("profile must be 'paper' or 'desk'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

CodecConfig CodecConfig::from_json(const std::string& text) {
    // A "profile" key picks the base; explicit keys then override it.
    CodecConfig c;
    try {
        json j = json::parse(text);
        if (j.value("profile", "") == std::string("desk")) c = desk_profile();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    c.merge_json(text);
    return c;
}

}  // namespace hiha
