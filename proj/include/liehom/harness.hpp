#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "liehom/operators.hpp"

namespace liehom::harness {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class PointOffManifold : public Error {
 public:
  explicit PointOffManifold(const std::string& what) : Error("PointOffManifold", what) {}
};

class SectionSingular : public Error {
 public:
  explicit SectionSingular(const std::string& what) : Error("SectionSingular", what) {}
};

class StepTooSmall : public Error {
 public:
  explicit StepTooSmall(double h) : Error("StepTooSmall", message(h)), step(h) {}
  double step;

 private:
  static std::string message(double h) {
    std::ostringstream os;
    os << "finite-difference step " << h << " below 1e-8";
    return os.str();
  }
};

class UnsupportedModel : public Error {
 public:
  explicit UnsupportedModel(const std::string& what) : Error("UnsupportedModel", what) {}
};

inline constexpr double kMinStep = 1e-8;
inline constexpr double kSphereTolerance = 1e-9;
inline constexpr double kSingularCap = 1e-6;
inline constexpr double kSamplingCap = 1e-3;

enum class ModelKind { SphereOrbit, FullGroup };

std::string to_string(ModelKind kind);

/// A vector field on the ambient space of a model.
using Field = std::function<VectorXd(const VectorXd&)>;

/// Floating-point realization of G/K on which points and tangent vectors live
/// in an ambient R^N: the orbit of p0 = (0,0,1) under a 3x3 skew matrix
/// algebra (N = 3), or the matrix group itself with K trivial (N = n^2,
/// column-major).
class MatrixModel {
 public:
  static MatrixModel sphere(const HomogeneousPair& pair);
  static MatrixModel full_group(const HomogeneousPair& pair);
  /// Picks whichever of the two shapes the pair supports.
  static MatrixModel for_pair(const HomogeneousPair& pair);

  [[nodiscard]] ModelKind kind() const { return kind_; }
  [[nodiscard]] const LieAlgebraPtr& alg() const { return alg_; }
  [[nodiscard]] Index matrix_size() const { return n_; }
  [[nodiscard]] Index ambient_dim() const { return kind_ == ModelKind::SphereOrbit ? n_ : n_ * n_; }
  [[nodiscard]] const std::vector<MatrixXd>& generators() const { return generators_; }
  [[nodiscard]] VectorXd base_point() const;
  [[nodiscard]] double table_error() const { return table_error_; }

  /// sum_k c_k G_k.
  [[nodiscard]] MatrixXd element(const VectorXd& coords) const;
  /// Least-squares coordinates of a matrix in the generator basis.
  [[nodiscard]] VectorXd coordinates(const MatrixXd& x) const;
  /// Sphere: minimal-norm xi with xi p0 = u.
  [[nodiscard]] VectorXd pole_preimage(const VectorXd& u) const { return orbit_solver_.solve(u); }
  /// Ad_g v = g v g^{-1} in algebra coordinates.
  [[nodiscard]] VectorXd adjoint(const MatrixXd& g, const VectorXd& v) const;

  /// Group action on ambient points: g p (sphere) or g X (full group).
  [[nodiscard]] VectorXd act(const MatrixXd& g, const VectorXd& p) const;
  /// g with g . p0 = p: Rodrigues rotation about p0 x p, or p itself.
  [[nodiscard]] MatrixXd section(const VectorXd& p) const;
  /// Nearest manifold point (radial projection on the sphere).
  [[nodiscard]] VectorXd retract(const VectorXd& z) const;
  void require_on_manifold(const VectorXd& p) const;

  /// Random group element exp(sum_k c_k G_k) with c_k ~ N(0, scale^2).
  MatrixXd random_group_element(std::mt19937_64& rng, double scale) const;
  /// Random point g . p0 outside the sampling cap around -p0.
  VectorXd random_point(std::mt19937_64& rng) const;

 private:
  MatrixModel(ModelKind kind, LieAlgebraPtr alg, std::vector<MatrixXd> generators);

  ModelKind kind_;
  LieAlgebraPtr alg_;
  Index n_ = 0;
  std::vector<MatrixXd> generators_;
  MatrixXd flat_generators_;  // columns: vec(G_k)
  MatrixXd orbit_map_;        // sphere: columns G_k p0
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> flat_solver_;
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> orbit_solver_;
  double table_error_ = 0.0;
};

MatrixXd matrix_exp(const MatrixXd& x);

/// Projected field of v: v p on the sphere, v g on the group.
VectorXd projected_field(const MatrixModel& model, const VectorXd& v, const VectorXd& p);

/// N_p z using the representative g of p: g (I xi) p0 where xi p0 = g^{-1} z.
VectorXd bundle_map_with(const MatrixModel& model, const MatrixXd& op, const MatrixXd& g, const VectorXd& z);
/// N_p z using the model's section at p.
VectorXd bundle_map(const MatrixModel& model, const MatrixXd& op, const VectorXd& p, const VectorXd& z);

/// [X, Y]_p = DY(p) X(p) - DX(p) Y(p) with central-difference Jacobians in R^N.
VectorXd fd_bracket(const Field& x, const Field& y, const VectorXd& p, double h);
/// Same, for manifold fields extended to the ambient space by retraction.
VectorXd fd_bracket(const MatrixModel& model, const Field& x, const Field& y, const VectorXd& p, double h);

struct FieldSample {
  VectorXd point;
  VectorXd v;
  VectorXd w;
  double step = 0.0;
  VectorXd numerical;
  VectorXd predicted;
  double deviation = 0.0;
};

/// Torsion of the induced bundle map on the projected fields of v and w at p,
/// by finite differences, next to the algebraic value g beta(Ad_g^-1 v, Ad_g^-1 w) p0.
FieldSample numerical_torsion(const MatrixModel& model, const LinearOperator& op, const VectorXd& v,
                              const VectorXd& w, const VectorXd& p, double h);

/// Vectors from the two worked sphere demonstrations.
struct SphereDemo {
  VectorXd pushed_field;    // g X^v(p0)
  VectorXd field_at_image;  // X^v(g p0)
};
SphereDemo nonrelatedness_demo(const MatrixModel& model, const VectorXd& v, const MatrixXd& g);

struct MismatchDemo {
  VectorXd bundle_of_field;  // (N X^v)(g p0)
  VectorXd field_of_image;   // X^{Iv}(g p0)
};
MismatchDemo bundle_mismatch_demo(const MatrixModel& model, const LinearOperator& op, const VectorXd& v,
                                  const MatrixXd& g);

/// Rotation by theta about the first coordinate axis.
MatrixXd rotation_x(double theta);

struct RelationReport {
  double alpha_relatedness_residual = 0.0;
  double representative_residual = 0.0;
  double projected_bracket_residual = 0.0;
  std::size_t samples = 0;
  /// Sphere only: v with v p0 = (1,0,0) and g = diag(1,-1,-1).
  std::optional<SphereDemo> nonrelated;
  /// Sphere only: v with v p0 = (0,1,0) and g the theta-rotation about the first axis.
  std::optional<MismatchDemo> mismatch;
};

/// h X^v(h^-1 p) = X^{Ad_h v}(p), N independent of the representative g vs g k,
/// and [X^v, X^w] = -X^{[v,w]} at random points; on the sphere also the two
/// demonstrations that pushed fields and bundle images are not projected fields.
RelationReport relation_checks(const MatrixModel& model, const LinearOperator& op, const HomogeneousPair& pair,
                               std::size_t samples, std::uint64_t seed, double h, double theta = 1.0);

struct HarnessConfig {
  std::size_t samples = 20;
  double step = 1e-4;
  std::uint64_t seed = 20240501;
  double theta = 1.0;
  double torsion_tolerance = 1e-5;
  double relation_tolerance = 1e-10;
  double bracket_tolerance = 1e-6;
};

struct HarnessReport {
  ModelKind kind = ModelKind::SphereOrbit;
  HarnessConfig config;
  std::vector<FieldSample> samples;
  double max_deviation = 0.0;
  double max_numerical = 0.0;
  bool exactly_nijenhuis = false;
  RelationReport relations;
  bool passed = false;
};

/// Samples points away from the section singularity and compares numerical
/// and algebraic torsion. Throws NotAdmissible for non-admissible operators.
HarnessReport run_harness(const MatrixModel& model, const HomogeneousPair& pair, const LinearOperator& op,
                          const HarnessConfig& config);

/// One row per sample: index, step, deviation, |numerical|, |predicted|, then point coordinates.
void write_samples_csv(const HarnessReport& report, std::ostream& os);

/// deviation(h) / deviation(h/2) for the finite-difference bracket of a fixed
/// pair of non-linear fields on R^3 with a closed-form bracket.
double convergence_ratio(double h);
double nonlinear_bracket_deviation(double h);

}  // namespace liehom::harness
