#include "ria/lrmf.hpp"

#include <cmath>
#include <limits>

#include "ria/parallel.hpp"
#include "ria/rng.hpp"

namespace ria {

namespace {

std::string coverage_message(MaskCoverageError::Axis axis, std::size_t index) {
  return std::string("mask has no observed pixel in ") +
         (axis == MaskCoverageError::Axis::Row ? "row " : "column ") + std::to_string(index);
}

// Observed indices per column (rows) and per row (columns).
struct ObservedSets {
  std::vector<std::vector<std::size_t>> by_col;
  std::vector<std::vector<std::size_t>> by_row;

  explicit ObservedSets(const IndexMask& mask)
      : by_col(mask.cols()), by_row(mask.rows()) {
    for (std::size_t i = 0; i < mask.rows(); ++i) {
      for (std::size_t j = 0; j < mask.cols(); ++j) {
        if (mask(i, j)) {
          by_col[j].push_back(i);
          by_row[i].push_back(j);
        }
      }
    }
  }
};


Matrix solve_columns(const Matrix& a, const MaskedImage& sub, const ObservedSets& sets,
                     std::size_t workers) {
  const auto r = a.cols();
  const auto ncols = static_cast<Eigen::Index>(sub.image.cols());
  Matrix b(r, ncols);
  parallel_for(static_cast<std::size_t>(ncols), workers, [&](std::size_t j) {
    const auto& rows = sets.by_col[j];
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix design(n, r);
    Vector target(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      design.row(k) = a.row(static_cast<Eigen::Index>(rows[k]));
      target(k) = sub.image(rows[k], j);
    }
    b.col(static_cast<Eigen::Index>(j)) = ls_solve(design, target);
  });
  return b;
}

Matrix solve_rows(const Matrix& b, const MaskedImage& sub, const ObservedSets& sets,
                  std::size_t workers) {
  const auto r = b.rows();
  const auto nrows = static_cast<Eigen::Index>(sub.image.rows());
  Matrix a(nrows, r);
  parallel_for(static_cast<std::size_t>(nrows), workers, [&](std::size_t i) {
    const auto& cols = sets.by_row[i];
    const auto n = static_cast<Eigen::Index>(cols.size());
    Matrix design(n, r);
    Vector target(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      design.row(k) = b.col(static_cast<Eigen::Index>(cols[k])).transpose();
      target(k) = sub.image(i, cols[k]);
    }
    a.row(static_cast<Eigen::Index>(i)) = ls_solve(design, target).transpose();
  });
  return a;
}

double objective(const Matrix& a, const Matrix& b, const MaskedImage& sub,
                 const ObservedSets& sets) {
  // Row-by-row in a fixed order so the value does not depend on threading.
  double total = 0.0;
  for (std::size_t i = 0; i < sets.by_row.size(); ++i) {
    const auto ai = a.row(static_cast<Eigen::Index>(i));
    for (std::size_t j : sets.by_row[i]) {
      const double resid = ai.dot(b.col(static_cast<Eigen::Index>(j))) - sub.image(i, j);
      total += resid * resid;
    }
  }
  return total;
}

void require_coverage(const IndexMask& mask) {
  if (auto i = mask.first_empty_row()) throw MaskCoverageError(MaskCoverageError::Axis::Row, *i);
  if (auto j = mask.first_empty_col()) {
    throw MaskCoverageError(MaskCoverageError::Axis::Column, *j);
  }
}

void require_same_dims(const MaskedImage& sub) {
  if (sub.image.dims() != sub.mask.dims()) {
    throw std::invalid_argument("masked image and mask dimensions differ");
  }
}

}  // namespace

MaskCoverageError::MaskCoverageError(Axis axis, std::size_t index)
    : std::runtime_error(coverage_message(axis, index)), axis_(axis), index_(index) {}

void LrmfSettings::validate() const {
  if (rank == 0) throw std::invalid_argument("lrmf: rank must be >= 1");
  if (max_iter == 0) throw std::invalid_argument("lrmf: max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("lrmf: tol must be > 0");
}

Vector ls_solve(const Eigen::Ref<const Matrix>& design, const Eigen::Ref<const Vector>& target) {
  if (design.rows() != target.size()) {
    throw std::invalid_argument("ls_solve: design has " + std::to_string(design.rows()) +
                                " rows but target has " + std::to_string(target.size()));
  }
  if (!design.allFinite() || !target.allFinite()) {
    throw std::invalid_argument("ls_solve: non-finite input");
  }
  const auto r = design.cols();
  if (design.rows() == 0 || design.isZero(0.0)) return Vector::Zero(r);

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(kLsRankTolerance);
  cod.compute(design);
  return cod.solve(target);
}

double masked_objective(const FactorPair& pair, const MaskedImage& sub) {
  require_same_dims(sub);
  const auto m = static_cast<Eigen::Index>(sub.image.rows());
  const auto n = static_cast<Eigen::Index>(sub.image.cols());
  if (pair.a.rows() != m || pair.b.cols() != n || pair.a.cols() != pair.b.rows()) {
    throw std::invalid_argument("masked_objective: factor shapes do not match the image");
  }
  return objective(pair.a, pair.b, sub, ObservedSets(sub.mask));
}

Matrix update_columns(const Matrix& a, const MaskedImage& sub, std::size_t workers) {
  require_same_dims(sub);
  if (a.rows() != static_cast<Eigen::Index>(sub.image.rows())) {
    throw std::invalid_argument("update_columns: factor rows do not match the image");
  }
  return solve_columns(a, sub, ObservedSets(sub.mask), workers);
}

Matrix update_rows(const Matrix& b, const MaskedImage& sub, std::size_t workers) {
  require_same_dims(sub);
  if (b.cols() != static_cast<Eigen::Index>(sub.image.cols())) {
    throw std::invalid_argument("update_rows: factor columns do not match the image");
  }
  return solve_rows(b, sub, ObservedSets(sub.mask), workers);
}

LrmfResult lrmf_am(const MaskedImage& sub, const LrmfSettings& settings) {
  settings.validate();
  require_same_dims(sub);
  const std::size_t m = sub.image.rows();
  const std::size_t n = sub.image.cols();
  if (settings.rank >= std::min(m, n)) {
    throw std::invalid_argument("lrmf: rank " + std::to_string(settings.rank) +
                                " must be below min(rows, cols) = " +
                                std::to_string(std::min(m, n)));
  }
  require_coverage(sub.mask);

  const ObservedSets sets(sub.mask);
  const auto r = static_cast<Eigen::Index>(settings.rank);

  Rng rng(settings.init_seed);
  Matrix a(static_cast<Eigen::Index>(m), r);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < r; ++k) a(i, k) = rng.gaussian();
  }
  Matrix b;

  LrmfResult result;
  result.trace.reserve(2 * settings.max_iter);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= settings.max_iter; ++t) {
    b = solve_columns(a, sub, sets, settings.workers);
    result.trace.push_back(objective(a, b, sub, sets));
    a = solve_rows(b, sub, sets, settings.workers);
    const double current = objective(a, b, sub, sets);
    result.trace.push_back(current);
    result.iterations = t;

    if (current == 0.0 || (std::isfinite(previous) && (previous - current) < settings.tol * previous)) {
      result.converged = true;
      break;
    }
    previous = current;
  }

  const Matrix full = a * b;
  std::vector<double> pixels(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pixels[i * n + j] = full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  result.reconstruction = Image(m, n, std::move(pixels));
  result.factors = {std::move(a), std::move(b)};
  return result;
}

}  // namespace ria
