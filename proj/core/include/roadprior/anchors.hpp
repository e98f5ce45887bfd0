#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "roadprior/geometry.hpp"
#include "roadprior/template_space.hpp"

namespace roadprior {

struct ClusterConfig {
  Eigen::Index n_anchors = 50;
  int max_iterations = 300;
  double tolerance = 1e-4;
  std::uint64_t rng_seed = 0;
  bool kmeanspp_init = false;  // plain random distinct samples by default
};

// Prior anchors: medoid-snapped cluster representatives in coefficient space,
// mapped back to full-dimensional element vectors.
struct AnchorSet {
  Eigen::MatrixXd anchors;       // N x N_P, anchors.col(k) == basis * coefficients.col(k)
  Eigen::MatrixXd coefficients;  // M x N_P, each column a projected dataset element
  std::vector<Eigen::Index> cluster_sizes;
  std::vector<ElementClass> dominant_classes;  // majority member class per anchor
  std::vector<double> inertia_history;
  int iterations_run = 0;
  bool converged = false;

  Eigen::Index count() const { return anchors.cols(); }
};

namespace anchors {

// Plain Lloyd iteration over the columns of `points`. Initial centers are
// n_clusters distinct random samples; termination when the summed center
// movement drops to cfg.tolerance or cfg.max_iterations is hit. Empty
// clusters are repaired by stealing the point farthest from its assigned
// center (lowest index on ties), which keeps the run deterministic.
struct KMeansResult {
  Eigen::MatrixXd centers;  // dim x k
  std::vector<Eigen::Index> labels;
  std::vector<double> inertia_history;
  int iterations_run = 0;
  bool converged = false;
};

KMeansResult kmeans(const Eigen::MatrixXd& points, const ClusterConfig& cfg);

// Algorithm: project the dataset into template space (C_A = U_M^T A), run
// seeded K-means on the coefficient columns, snap each center to the nearest
// member coefficient vector, and map the snapped centers back with U_M.
AnchorSet select_prior_anchors(const ElementMatrix& matrix, const TemplateSpace& space,
                               const ClusterConfig& cfg);

// Baseline for comparison: n elements whose P points are i.i.d. uniform over
// the perception box. Cluster metadata is zeroed; coefficients hold the
// projections of the random vectors.
AnchorSet random_anchor_baseline(const TemplateSpace& space, Eigen::Index n,
                                 const PerceptionRange& range, std::uint64_t rng_seed);

// Versioned JSON serialization, mirroring the template-space format.
void save(const AnchorSet& set, const std::string& path);
AnchorSet load(const std::string& path);

std::string to_json_string(const AnchorSet& set);
AnchorSet from_json_string(const std::string& text);

}  // namespace anchors
}  // namespace roadprior
