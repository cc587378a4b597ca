#include "ria/pipeline.hpp"

#include <stdexcept>

#include "ria/parallel.hpp"
#include "ria/rng.hpp"
#include "ria/wavelet.hpp"

namespace ria {

std::string to_string(Fusion f) { return f == Fusion::HardThreshold ? "hard" : "average"; }

Fusion parse_fusion(const std::string& name) {
  if (name == "hard" || name == "hard_threshold") return Fusion::HardThreshold;
  if (name == "average" || name == "avg") return Fusion::Average;
  throw std::invalid_argument("unknown fusion '" + name + "' (expected hard or average)");
}

void PipelineConfig::validate() const {
  if (rank == 0) throw std::invalid_argument("rank must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  if (tau.kind == TauRule::Kind::Fixed && !(tau.value >= 0.0)) {
    throw std::invalid_argument("tau must be >= 0");
  }
  if (mask_retry_limit == 0) throw std::invalid_argument("mask_retry_limit must be >= 1");
}

double tau_select(const Image& noisy, std::size_t rank) {
  const auto values = top_singular_values(noisy, rank + 1);
  return values.back() / 2.0;
}

namespace {

bool covers_all_lines(const IndexMask& m) { return !m.first_empty_row() && !m.first_empty_col(); }

}  // namespace

std::array<IndexMask, kSubimageCount> generate_masks(Dims dims, const PipelineConfig& cfg,
                                                     std::size_t* attempts) {
  if (cfg.full_masks) {
    if (attempts) *attempts = 0;
    const auto ones = IndexMask::all_ones(dims);
    return {ones, ones, ones, ones};
  }
  const Rng root(cfg.seed);
  std::size_t used = 0;

  auto draw = [&](auto&& make) {
    for (std::size_t attempt = 0; attempt < cfg.mask_retry_limit; ++attempt) {
      ++used;
      auto pair = make(attempt);
      if (covers_all_lines(pair.first) && covers_all_lines(pair.second)) return pair;
    }
    throw std::runtime_error("could not draw sampling masks without an empty row or column in " +
                             std::to_string(cfg.mask_retry_limit) + " attempts (image " +
                             std::to_string(dims.rows) + "x" + std::to_string(dims.cols) + ")");
  };

  auto [m0, m1] = draw([&](std::size_t attempt) {
    Rng rng = root.derive("masks-nonoverlap", attempt);
    return gen_nonoverlap_pair(dims, rng);
  });
  auto [m2, m3] = draw([&](std::size_t attempt) {
    Rng rng = root.derive("masks-overlap", attempt);
    return gen_overlap_pair(dims, cfg.eta, rng);
  });
  if (attempts) *attempts = used;
  return {std::move(m0), std::move(m1), std::move(m2), std::move(m3)};
}

Reconstructions reconstruct(const Image& noisy, const PipelineConfig& cfg) {
  cfg.validate();
  if (noisy.rows() < 2 || noisy.cols() < 2) {
    throw std::invalid_argument("denoise: image must be at least 2x2");
  }
  Reconstructions rec;
  rec.report.tau = cfg.tau.kind == TauRule::Kind::Fixed ? cfg.tau.value
                                                        : tau_select(noisy, cfg.rank);

  auto [extended, original] = extend_to_even(noisy);
  rec.original = original;
  const auto masks = generate_masks(extended.dims(), cfg, &rec.report.mask_attempts);

  const Rng root(cfg.seed);
  parallel_for(kSubimageCount, cfg.workers, [&](std::size_t l) {
    LrmfSettings settings = cfg.lrmf;
    settings.rank = cfg.rank;
    settings.init_seed = Rng::derive_seed(cfg.seed, "lrmf-init", cfg.shared_init_seed ? 0 : l);
    auto result = lrmf_am(apply_mask(extended, masks[l]), settings);
    rec.images[l] = std::move(result.reconstruction);
    auto& sub = rec.report.subimages[l];
    sub.trace = std::move(result.trace);
    sub.iterations = result.iterations;
    sub.converged = result.converged;
    sub.observed = masks[l].ones();
  });
  return rec;
}

Image fuse_reconstructions(const Reconstructions& rec, Fusion fusion, double tau) {
  Image fused;
  if (fusion == Fusion::Average) {
    const Image& first = rec.images.front();
    fused = Image(first.rows(), first.cols());
    auto dst = fused.pixels();
    for (std::size_t p = 0; p < dst.size(); ++p) {
      double sum = 0.0;
      for (const auto& img : rec.images) sum += img.pixels()[p];
      dst[p] = sum / static_cast<double>(kSubimageCount);
    }
  } else {
    std::vector<SubbandSet> bands;
    bands.reserve(kSubimageCount);
    for (const auto& img : rec.images) bands.push_back(dwt_haar(img));
    fused = idwt_haar(fuse(bands, tau));
  }
  return quantize(crop(fused, rec.original));
}

DenoiseResult denoise(const Image& noisy, const PipelineConfig& cfg) {
  auto rec = reconstruct(noisy, cfg);
  Image out = fuse_reconstructions(rec, cfg.fusion, rec.report.tau);
  return {std::move(out), std::move(rec.report)};
}

}  // namespace ria
