#include "roadprior/template_space.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "roadprior/errors.hpp"

namespace roadprior {

TemplateSpace::TemplateSpace(Eigen::MatrixXd basis, Eigen::VectorXd singular_values,
                             std::string source_fingerprint, bool mean_removed,
                             std::optional<Eigen::VectorXd> mean)
    : basis_(std::move(basis)),
      singular_values_(std::move(singular_values)),
      source_fingerprint_(std::move(source_fingerprint)),
      mean_removed_(mean_removed),
      mean_(std::move(mean)) {
  if (mean_removed_ && (!mean_ || mean_->size() != basis_.rows())) {
    throw DimensionMismatch("mean_removed template space requires a mean vector of length N");
  }
}

Eigen::Index TemplateSpace::numerical_rank() const {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < singular_values_.size(); ++i) {
    if (singular_values_(i) > 0.0) ++r;
  }
  return r;
}

bool TemplateSpace::rank_deficient() const {
  if (singular_values_.size() == 0 || basis_.cols() == 0) return false;
  const Eigen::Index m = basis_.cols();
  if (m > singular_values_.size()) return true;
  return singular_values_(m - 1) < 1e-12 * singular_values_(0);
}

namespace template_space {

namespace {

constexpr int kSchemaVersion = 1;

// Largest-magnitude entry of each column made positive; lowest index wins
// ties. Removes the per-column sign ambiguity of the SVD.
void apply_sign_convention(Eigen::MatrixXd& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      const double a = std::abs(basis(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (basis(arg, j) < 0.0) basis.col(j) = -basis.col(j);
  }
}

void check_compatible(const TemplateSpace& space, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != space.ambient_dim()) {
    throw DimensionMismatch(std::string(what) + ": expected length " +
                            std::to_string(space.ambient_dim()) + ", got " +
                            std::to_string(v.size()));
  }
}

}  // namespace

std::string fingerprint(const ElementMatrix& matrix) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const unsigned char* bytes, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {matrix.columns.rows(), matrix.columns.cols()};
  mix(reinterpret_cast<const unsigned char*>(dims), sizeof(dims));
  mix(reinterpret_cast<const unsigned char*>(matrix.columns.data()),
      sizeof(double) * static_cast<std::size_t>(matrix.columns.size()));
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

TemplateSpace fit(const ElementMatrix& matrix, Eigen::Index m, const FitOptions& opts) {
  const Eigen::Index n = matrix.columns.rows();
  const Eigen::Index l = matrix.columns.cols();
  if (l < 1) throw OutOfRange("fit: element matrix is empty");
  if (m < 1 || m > std::min(n, l)) {
    throw OutOfRange("fit: M must satisfy 1 <= M <= min(N, L) = " +
                     std::to_string(std::min(n, l)) + ", got " + std::to_string(m));
  }

  Eigen::MatrixXd a = matrix.columns;
  std::optional<Eigen::VectorXd> mean;
  if (opts.mean_center) {
    mean = a.rowwise().mean();
    a.colwise() -= *mean;
  }

  const Eigen::Index spectrum_len = std::min(n, l);
  Eigen::MatrixXd basis;
  Eigen::VectorXd sigma(spectrum_len);

  if (l > opts.gram_path_threshold) {
    // Gram path: eigendecompose the N x N matrix A A^T. Cost is independent
    // of L beyond the single accumulation pass.
    Eigen::MatrixXd gram = a * a.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) {
      throw InternalError("fit: eigendecomposition of the Gram matrix failed");
    }
    // Eigen returns eigenvalues ascending; flip to nonincreasing.
    for (Eigen::Index i = 0; i < spectrum_len; ++i) {
      const double lam = es.eigenvalues()(n - 1 - i);
      sigma(i) = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    basis = Eigen::MatrixXd(n, m);
    for (Eigen::Index j = 0; j < m; ++j) basis.col(j) = es.eigenvectors().col(n - 1 - j);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
    sigma = svd.singularValues().head(spectrum_len);
    basis = svd.matrixU().leftCols(m);
  }

  apply_sign_convention(basis);

  TemplateSpace space(std::move(basis), std::move(sigma), fingerprint(matrix), opts.mean_center,
                      std::move(mean));
  if (space.rank_deficient()) {
    std::fprintf(stderr,
                 "warning: rank-deficient template space (sigma_M/sigma_1 < 1e-12); "
                 "basis directions beyond the numerical rank are unreliable\n");
  }
  return space;
}

Coefficients project(const TemplateSpace& space, const ElementVector& r) {
  check_compatible(space, r, "project");
  if (space.mean_removed()) {
    return space.basis().transpose() * (r - *space.mean());
  }
  return space.basis().transpose() * r;
}

ElementVector reconstruct(const TemplateSpace& space, const Coefficients& c) {
  if (c.size() != space.rank_m()) {
    throw DimensionMismatch("reconstruct: expected " + std::to_string(space.rank_m()) +
                            " coefficients, got " + std::to_string(c.size()));
  }
  if (space.mean_removed()) {
    return space.basis() * c + *space.mean();
  }
  return space.basis() * c;
}

double explained_variance(const TemplateSpace& space, Eigen::Index m_prime) {
  const Eigen::Index r = space.numerical_rank();
  if (m_prime < 1 || m_prime > r) {
    throw OutOfRange("explained_variance: M' must be in [1, rank=" + std::to_string(r) + "]");
  }
  const Eigen::VectorXd& s = space.singular_values();
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    const double sq = s(i) * s(i);
    den += sq;
    if (i < m_prime) num += sq;
  }
  return num / den;
}

double shape_space_loss(const TemplateSpace& space, const ElementVector& predicted,
                        const ElementVector& target) {
  check_compatible(space, predicted, "shape_space_loss");
  check_compatible(space, target, "shape_space_loss");
  const Coefficients cp = space.basis().transpose() * predicted;
  const Coefficients ct = space.basis().transpose() * target;
  return (cp - ct).lpNorm<1>();
}

std::string to_json_string(const TemplateSpace& space) {
  nlohmann::json j;
  j["version"] = kSchemaVersion;
  j["N"] = space.ambient_dim();
  j["M"] = space.rank_m();
  std::vector<double> basis_rm;
  basis_rm.reserve(static_cast<std::size_t>(space.basis().size()));
  for (Eigen::Index i = 0; i < space.basis().rows(); ++i) {
    for (Eigen::Index jj = 0; jj < space.basis().cols(); ++jj) {
      basis_rm.push_back(space.basis()(i, jj));
    }
  }
  j["basis"] = basis_rm;
  j["singular_values"] = std::vector<double>(
      space.singular_values().data(), space.singular_values().data() + space.singular_values().size());
  j["source_fingerprint"] = space.source_fingerprint();
  j["mean_removed"] = space.mean_removed();
  if (space.mean_removed()) {
    j["mean"] = std::vector<double>(space.mean()->data(), space.mean()->data() + space.mean()->size());
  }
  return j.dump();
}

TemplateSpace from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("template space file: ") + e.what());
  }
  if (!j.contains("version") || j["version"].get<int>() != kSchemaVersion) {
    throw SchemaVersionMismatch("template space file: expected version " +
                                std::to_string(kSchemaVersion));
  }
  const auto n = j.at("N").get<Eigen::Index>();
  const auto m = j.at("M").get<Eigen::Index>();
  const auto basis_rm = j.at("basis").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(basis_rm.size()) != n * m) {
    throw ParseError("template space file: basis size does not match N*M");
  }
  Eigen::MatrixXd basis(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index jj = 0; jj < m; ++jj) {
      basis(i, jj) = basis_rm[static_cast<std::size_t>(i * m + jj)];
    }
  }
  const auto sv = j.at("singular_values").get<std::vector<double>>();
  Eigen::VectorXd sigma = Eigen::Map<const Eigen::VectorXd>(sv.data(), static_cast<Eigen::Index>(sv.size()));
  const bool mean_removed = j.at("mean_removed").get<bool>();
  std::optional<Eigen::VectorXd> mean;
  if (mean_removed) {
    const auto mv = j.at("mean").get<std::vector<double>>();
    mean = Eigen::Map<const Eigen::VectorXd>(mv.data(), static_cast<Eigen::Index>(mv.size()));
  }

  const double ortho_err =
      (basis.transpose() * basis - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (ortho_err > 1e-10) {
    throw DataError("template space file: basis columns are not orthonormal (max deviation " +
                    std::to_string(ortho_err) + ")");
  }
  return TemplateSpace(std::move(basis), std::move(sigma),
                       j.at("source_fingerprint").get<std::string>(), mean_removed,
                       std::move(mean));
}

void save(const TemplateSpace& space, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << to_json_string(space) << '\n';
}

TemplateSpace load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

}  // namespace template_space
}  // namespace roadprior
