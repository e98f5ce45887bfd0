#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "roadprior/geometry.hpp"

namespace roadprior {

// Dataset elements as columns of an N x L matrix, plus per-column class.
struct ElementMatrix {
  Eigen::MatrixXd columns;                // N x L
  std::vector<ElementClass> class_labels; // size L
  bool mean_removed = false;

  Eigen::Index ambient_dim() const { return columns.rows(); }
  Eigen::Index count() const { return columns.cols(); }
};

using Coefficients = Eigen::VectorXd;  // length M

// Orthonormal rank-M basis of the element matrix's left singular subspace.
// Maps elements (length N) to coefficient vectors (length M) and back.
class TemplateSpace {
 public:
  TemplateSpace() = default;
  TemplateSpace(Eigen::MatrixXd basis, Eigen::VectorXd singular_values,
                std::string source_fingerprint, bool mean_removed,
                std::optional<Eigen::VectorXd> mean = std::nullopt);

  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& singular_values() const { return singular_values_; }
  Eigen::Index rank_m() const { return basis_.cols(); }
  Eigen::Index ambient_dim() const { return basis_.rows(); }
  const std::string& source_fingerprint() const { return source_fingerprint_; }
  bool mean_removed() const { return mean_removed_; }
  const std::optional<Eigen::VectorXd>& mean() const { return mean_; }

  // Number of strictly positive singular values.
  Eigen::Index numerical_rank() const;

  // True when sigma_M / sigma_1 < 1e-12: directions past the numerical rank
  // were retained and are unreliable.
  bool rank_deficient() const;

 private:
  Eigen::MatrixXd basis_;           // N x M, orthonormal columns
  Eigen::VectorXd singular_values_; // full nonincreasing spectrum
  std::string source_fingerprint_;
  bool mean_removed_ = false;
  std::optional<Eigen::VectorXd> mean_;
};

namespace template_space {

struct FitOptions {
  bool mean_center = false;
  // Columns beyond this count switch the solver from a direct SVD to an
  // eigendecomposition of the N x N Gram matrix, which stays memory-flat for
  // arbitrarily large L.
  Eigen::Index gram_path_threshold = 128;
};

// FNV-1a over the matrix bytes; recorded so downstream files can be traced
// back to the dataset they were fit on.
std::string fingerprint(const ElementMatrix& matrix);

TemplateSpace fit(const ElementMatrix& matrix, Eigen::Index m, const FitOptions& opts = {});

Coefficients project(const TemplateSpace& space, const ElementVector& r);

ElementVector reconstruct(const TemplateSpace& space, const Coefficients& c);

// Retained-energy fraction sum_{i<=m_prime} sigma_i^2 / sum_{i<=r} sigma_i^2.
double explained_variance(const TemplateSpace& space, Eigen::Index m_prime);

// L1 distance between the two coefficient vectors |U_M^T p - U_M^T t|_1.
double shape_space_loss(const TemplateSpace& space, const ElementVector& predicted,
                        const ElementVector& target);

// Versioned JSON serialization. Loading validates basis orthonormality.
void save(const TemplateSpace& space, const std::string& path);
TemplateSpace load(const std::string& path);

std::string to_json_string(const TemplateSpace& space);
TemplateSpace from_json_string(const std::string& text);

}  // namespace template_space
}  // namespace roadprior
