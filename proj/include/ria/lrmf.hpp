#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ria/image.hpp"
#include "ria/sampling.hpp"

namespace ria {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Low-rank factors of an M x N image: a is M x r, b is r x N.
struct FactorPair {
  Matrix a;
  Matrix b;

  std::size_t rank() const { return static_cast<std::size_t>(a.cols()); }
};

struct LrmfSettings {
  std::size_t rank = 10;
  std::size_t max_iter = 100;
  /// Stop once the relative decrease of the masked objective over one full iteration
  /// falls below this.
  double tol = 1e-6;
  std::uint64_t init_seed = 0;
  /// Threads for the per-column and per-row solves; results do not depend on it.
  std::size_t workers = 1;

  void validate() const;
};

struct LrmfResult {
  Image reconstruction;  ///< a*b over every pixel, observed ones included
  FactorPair factors;
  /// Masked objective after each half-step: B-step, A-step, B-step, ...
  std::vector<double> trace;
  std::size_t iterations = 0;
  bool converged = false;
};

/// A mask row or column with no observed pixels.
class MaskCoverageError : public std::runtime_error {
 public:
  enum class Axis { Row, Column };
  MaskCoverageError(Axis axis, std::size_t index);
  Axis axis() const { return axis_; }
  std::size_t index() const { return index_; }

 private:
  Axis axis_;
  std::size_t index_;
};

/// Relative pivot tolerance below which directions are treated as null in ls_solve.
inline constexpr double kLsRankTolerance = 1e-10;

/// Minimum-norm least-squares solution of design * x = target, via a complete orthogonal
/// (column-pivoted QR) decomposition. Empty or all-zero designs give the zero vector.
Vector ls_solve(const Eigen::Ref<const Matrix>& design, const Eigen::Ref<const Vector>& target);

/// Sum of squared residuals of a*b against the observed pixels only.
double masked_objective(const FactorPair& pair, const MaskedImage& sub);

/// One B-step: each column of the result solves least squares over that column's observed rows.
Matrix update_columns(const Matrix& a, const MaskedImage& sub, std::size_t workers = 1);

/// One A-step: each row of the result solves least squares over that row's observed columns.
Matrix update_rows(const Matrix& b, const MaskedImage& sub, std::size_t workers = 1);

/// Alternating minimization of the masked factorization objective, starting from a
/// Gaussian a drawn from settings.init_seed.
LrmfResult lrmf_am(const MaskedImage& sub, const LrmfSettings& settings);

/// Leading singular values (descending) by power iteration on the Gram operator with
/// deflation against the already-found eigenvectors.
std::vector<double> top_singular_values(const Image& img, std::size_t count);

}  // namespace ria
