#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ria/image.hpp"
#include "ria/noise.hpp"
#include "ria/pipeline.hpp"

namespace ria {

enum class SweepParameter { Eta, Rank, Tau, Rho, Sigma };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& name);

/// A one-parameter Monte Carlo study: for every grid value and trial the ground truth is
/// corrupted, denoised with both fusion variants, and scored.
struct SweepSpec {
  SweepParameter parameter = SweepParameter::Rank;
  std::vector<double> grid;
  std::size_t trials = 20;
  PipelineConfig base{};
  NoiseParams noise{};
  /// Concurrent trials; output is identical for any value.
  std::size_t workers = 1;

  void validate() const;
};

/// One scored image. variant is "noisy", "hard" or "average".
struct SweepRow {
  std::size_t trial = 0;
  double value = 0.0;
  std::string variant;
  double sigma = 0.0;
  double rho = 0.0;
  std::size_t rank = 0;
  double tau = 0.0;
  double eta = 0.0;
  double psnr_db = 0.0;
  double ssim = 0.0;
};

struct SweepResult {
  /// Ordered by grid value, then trial, then variant (noisy, hard, average).
  std::vector<SweepRow> rows;
  /// Set when some trial failed; rows then hold only the trials ordered before it.
  std::optional<std::string> error;
};

inline const std::vector<std::string> kSweepVariants = {"noisy", "hard", "average"};

/// Pipeline and noise settings for one grid value.
void apply_sweep_value(SweepParameter p, double value, PipelineConfig& cfg, NoiseParams& noise);

SweepResult run_sweep(const Image& truth, const SweepSpec& spec);

/// CSV layout (one header line):
///   kind,trial,parameter,value,sigma,rho,r,tau,eta,variant,psnr_db,ssim
/// kind is "trial" for data rows, "mean" for per-(value, variant) means (trial column holds
/// the trial count) and a final "status" row whose variant column is "ok" or "error: ...".
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result);

std::string format_number(double v);

}  // namespace ria
