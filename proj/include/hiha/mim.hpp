#pragma once

#include <array>
#include <map>
#include <optional>

#include "hiha/blocks.hpp"
#include "hiha/config.hpp"
#include "hiha/grid.hpp"
#include "hiha/siren.hpp"

namespace hiha {

/// Low-band artifact: a thumbnail network plus per-block residual networks
/// (one pyramid level). Block ids index the block grid in C order.
struct MimArtifact {
    SirenNetwork thumbnail_net;
    std::array<int, 3> scale_per_axis{1, 1, 1};
    std::array<int, 3> block_grid{1, 1, 1};
    std::map<int, SirenNetwork> residual_blocks;
    std::vector<int> unmet_blocks;  // blocks still above target after refit
    double target_rmse = 0.0;
    GridShape full_shape;

    int block_count() const { return block_grid[0] * block_grid[1] * block_grid[2]; }
};

/// Box-mean pooling by per-axis factors; trailing partial boxes average their
/// actual membership.
GridField downscale(const GridField& field, const std::array<int, 3>& factors);

/// Default factors: 3 on each axis with extent >= 9, else 1 (<= 27 total).
std::array<int, 3> default_scale_factors(const GridShape& shape, int factor);

/// Trilinear interpolation from box centers back to the full grid; longitude
/// wraps periodically, latitude and level clamp at the ends.
GridField upscale_interp(const GridField& thumb, const GridShape& target_shape,
                         const std::array<int, 3>& factors);

/// Block partition of the full shape: per-axis `grid` cells with even
/// floor(b*n/g) boundaries (covers remainders exactly once).
IndexBox mim_block_bounds(const GridShape& shape, const std::array<int, 3>& grid, int block_id);
std::array<int, 3> mim_block_grid(const GridShape& shape);

struct MimStageSpec {
    NetSpec thumb_net;
    NetSpec resid_net;
    int thumb_steps = 0;
    int resid_steps = 0;
    float lr_init = 1e-4f;
    int threads = 1;
    int downscale_factor = 3;
};

/// Fits the thumbnail on the downscaled band, upscales the prediction, then
/// sifts residual blocks: every block whose residual RMSE exceeds eps gets
/// its own network, kept only when it improves that block.
MimArtifact compress_low(const GridField& low, const CoordinateTensor& coords, double eps,
                         const MimStageSpec& stage, uint64_t seed);

/// Upscaled thumbnail prediction plus residual-network contributions.
GridField reconstruct_low(const MimArtifact& artifact, const CoordinateTensor& coords,
                          const GridShape& target_shape);

/// Continue training an existing thumbnail net on a (downscaled) target;
/// used by the temporal warm-start path.
TrainReport warm_start_thumbnail(SirenNetwork& net, const GridField& downscaled_target,
                                 double eps, int max_steps, float lr_init, uint64_t seed);

}  // namespace hiha
