#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ria/image.hpp"
#include "ria/lrmf.hpp"
#include "ria/sampling.hpp"

namespace ria {

enum class Fusion { HardThreshold, Average };

std::string to_string(Fusion f);
Fusion parse_fusion(const std::string& name);

/// Threshold rule: a fixed value, or half of the (r+1)-th singular value of the noisy image.
struct TauRule {
  enum class Kind { Fixed, HalfLambda };
  Kind kind = Kind::Fixed;
  double value = 15.0;

  static TauRule fixed(double tau) { return {Kind::Fixed, tau}; }
  static TauRule half_lambda() { return {Kind::HalfLambda, 0.0}; }
};

inline constexpr std::size_t kSubimageCount = 4;

struct PipelineConfig {
  std::size_t rank = 10;
  double eta = 0.5;
  TauRule tau = TauRule::fixed(15.0);
  Fusion fusion = Fusion::HardThreshold;
  /// Iteration limits for each sub-image; rank and init_seed are overridden per run.
  LrmfSettings lrmf{};
  std::uint64_t seed = 0;
  std::size_t mask_retry_limit = 8;
  /// Threads for the four sub-image factorizations.
  std::size_t workers = 1;

  // Test hooks.
  bool full_masks = false;        ///< use all-ones masks for every sub-image
  bool shared_init_seed = false;  ///< same factor initialization for every sub-image

  void validate() const;
};

struct SubimageReport {
  std::vector<double> trace;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t observed = 0;
};

struct RunReport {
  double tau = 0.0;
  std::array<SubimageReport, kSubimageCount> subimages{};
  std::size_t mask_attempts = 0;
};

/// The four reconstructions of the even-extended image, before fusion.
struct Reconstructions {
  std::array<Image, kSubimageCount> images;
  Dims original;
  RunReport report;
};

struct DenoiseResult {
  Image output;
  RunReport report;
};

/// Half of the (r+1)-th largest singular value of the noisy image.
double tau_select(const Image& noisy, std::size_t rank);

/// The four sampling masks: complementary pair first, then the eta-overlapping pair.
/// Pairs containing an empty row or column are redrawn, up to cfg.mask_retry_limit attempts.
std::array<IndexMask, kSubimageCount> generate_masks(Dims dims, const PipelineConfig& cfg,
                                                     std::size_t* attempts = nullptr);

/// Steps up to fusion: extend, sample, factorize each sub-image. Also resolves tau.
Reconstructions reconstruct(const Image& noisy, const PipelineConfig& cfg);

/// Fuses reconstructions, crops to the original dims and clamps to [0, 255].
Image fuse_reconstructions(const Reconstructions& rec, Fusion fusion, double tau);

DenoiseResult denoise(const Image& noisy, const PipelineConfig& cfg);

}  // namespace ria
