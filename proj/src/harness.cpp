#include "liehom/harness.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "liehom/nijenhuis.hpp"

namespace liehom::harness {

std::string to_string(ModelKind kind) { return kind == ModelKind::SphereOrbit ? "sphere-orbit" : "full-group"; }

namespace {

MatrixXd to_double(const MatrixQ& m) {
  return m.unaryExpr([](const Rational& x) { return x.to_double(); });
}

const MatrixRealization& real_realization(const LieAlgebra& alg) {
  if (!alg.realization()) throw UnsupportedModel("algebra '" + alg.name() + "' has no matrix realization");
  if (!alg.realization()->is_real()) throw UnsupportedModel("algebra '" + alg.name() + "' is not realized by real matrices");
  return *alg.realization();
}

std::vector<MatrixXd> float_generators(const MatrixRealization& r) {
  std::vector<MatrixXd> out;
  for (const MatrixQi& g : r.generators)
    out.push_back(g.unaryExpr([](const GaussianRational& x) { return x.re().to_double(); }));
  return out;
}

VectorXd flatten(const MatrixXd& m) { return Eigen::Map<const VectorXd>(m.data(), m.size()); }

MatrixXd unflatten(const VectorXd& v, Index n) { return Eigen::Map<const MatrixXd>(v.data(), n, n); }

double max_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

VectorXd random_coords(std::mt19937_64& rng, Index n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  VectorXd out(n);
  for (Index i = 0; i < n; ++i) out[i] = normal(rng);
  return out;
}

}  // namespace

MatrixXd matrix_exp(const MatrixXd& x) { return x.exp(); }

MatrixXd rotation_x(double theta) {
  MatrixXd r = MatrixXd::Identity(3, 3);
  r(1, 1) = std::cos(theta);
  r(1, 2) = -std::sin(theta);
  r(2, 1) = std::sin(theta);
  r(2, 2) = std::cos(theta);
  return r;
}

MatrixModel::MatrixModel(ModelKind kind, LieAlgebraPtr alg, std::vector<MatrixXd> generators)
    : kind_(kind), alg_(std::move(alg)), generators_(std::move(generators)) {
  n_ = generators_.empty() ? 0 : generators_.front().rows();
  const Index dim = alg_->dim();
  flat_generators_.resize(n_ * n_, dim);
  for (Index k = 0; k < dim; ++k) flat_generators_.col(k) = flatten(generators_[static_cast<std::size_t>(k)]);
  flat_solver_.compute(flat_generators_);
  if (kind_ == ModelKind::SphereOrbit) {
    orbit_map_.resize(n_, dim);
    for (Index k = 0; k < dim; ++k) orbit_map_.col(k) = generators_[static_cast<std::size_t>(k)] * base_point();
    orbit_solver_.compute(orbit_map_);
  }

  const StructureConstants& c = alg_->structure_constants();
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      const MatrixXd& gi = generators_[static_cast<std::size_t>(i)];
      const MatrixXd& gj = generators_[static_cast<std::size_t>(j)];
      const MatrixXd comm = gi * gj - gj * gi;
      MatrixXd expected = MatrixXd::Zero(n_, n_);
      for (Index k = 0; k < dim; ++k) expected += c(i, j, k).to_double() * generators_[static_cast<std::size_t>(k)];
      const double scale = std::max(1.0, comm.cwiseAbs().maxCoeff());
      table_error_ = std::max(table_error_, (comm - expected).cwiseAbs().maxCoeff() / scale);
    }
  if (table_error_ > 1e-12)
    throw UnsupportedModel("float generators disagree with the structure constants (relative error " +
                           std::to_string(table_error_) + ")");
}

MatrixModel MatrixModel::sphere(const HomogeneousPair& pair) {
  const LieAlgebra& alg = *pair.alg();
  const MatrixRealization& r = real_realization(alg);
  if (r.size != 3) throw UnsupportedModel("sphere-orbit models need 3x3 generators");
  MatrixQ orbit(3, alg.dim());
  for (Index k = 0; k < alg.dim(); ++k) {
    const MatrixQi& g = r.generators[static_cast<std::size_t>(k)];
    if (g != MatrixQi(-g.transpose()))
      throw UnsupportedModel("generator '" + alg.labels()[static_cast<std::size_t>(k)] + "' is not skew-symmetric");
    for (Index row = 0; row < 3; ++row) orbit(row, k) = g(row, 2).re();
  }
  if (kernel_basis(orbit) != pair.k_space())
    throw UnsupportedModel("k is not the stabilizer of the pole (0,0,1)");
  if (rank(orbit) != 2) throw UnsupportedModel("the orbit of the pole is not two-dimensional");
  return MatrixModel(ModelKind::SphereOrbit, pair.alg(), float_generators(r));
}

MatrixModel MatrixModel::full_group(const HomogeneousPair& pair) {
  const MatrixRealization& r = real_realization(*pair.alg());
  if (pair.k().dim() != 0) throw UnsupportedModel("full-group models need k = 0");
  return MatrixModel(ModelKind::FullGroup, pair.alg(), float_generators(r));
}

MatrixModel MatrixModel::for_pair(const HomogeneousPair& pair) {
  if (pair.k().dim() == 0) return full_group(pair);
  return sphere(pair);
}

VectorXd MatrixModel::base_point() const {
  if (kind_ == ModelKind::SphereOrbit) return VectorXd::Unit(3, 2);
  return flatten(MatrixXd::Identity(n_, n_));
}

MatrixXd MatrixModel::element(const VectorXd& coords) const {
  require_dim("algebra element", alg_->dim(), coords.size());
  return unflatten(flat_generators_ * coords, n_);
}

VectorXd MatrixModel::coordinates(const MatrixXd& x) const { return flat_solver_.solve(flatten(x)); }

VectorXd MatrixModel::adjoint(const MatrixXd& g, const VectorXd& v) const {
  return coordinates(g * element(v) * g.inverse());
}

VectorXd MatrixModel::act(const MatrixXd& g, const VectorXd& p) const {
  if (kind_ == ModelKind::SphereOrbit) return g * p;
  return flatten(g * unflatten(p, n_));
}

MatrixXd MatrixModel::section(const VectorXd& p) const {
  require_on_manifold(p);
  if (kind_ == ModelKind::FullGroup) return unflatten(p, n_);
  const Eigen::Vector3d a(0.0, 0.0, 1.0);
  const Eigen::Vector3d b = p;
  if ((a + b).norm() < kSingularCap) throw SectionSingular("point is within 1e-6 of the antipode of the pole");
  const Eigen::Vector3d axis = a.cross(b);
  Eigen::Matrix3d k;
  k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
  return Eigen::Matrix3d::Identity() + k + k * k / (1.0 + a.dot(b));
}

VectorXd MatrixModel::retract(const VectorXd& z) const {
  if (kind_ == ModelKind::SphereOrbit) return z / z.norm();
  return z;
}

void MatrixModel::require_on_manifold(const VectorXd& p) const {
  require_dim("point", ambient_dim(), p.size());
  if (kind_ == ModelKind::SphereOrbit) {
    if (std::abs(p.norm() - 1.0) > kSphereTolerance) throw PointOffManifold("point is not on the unit sphere");
  } else if (std::abs(unflatten(p, n_).determinant()) < 1e-12) {
    throw PointOffManifold("point is not an invertible matrix");
  }
}

MatrixXd MatrixModel::random_group_element(std::mt19937_64& rng, double scale) const {
  return matrix_exp(element(random_coords(rng, alg_->dim(), scale)));
}

VectorXd MatrixModel::random_point(std::mt19937_64& rng) const {
  if (kind_ == ModelKind::FullGroup) return flatten(random_group_element(rng, 0.3));
  for (;;) {
    const VectorXd p = retract(random_group_element(rng, 1.0) * base_point());
    if ((p + base_point()).norm() >= kSamplingCap) return p;
  }
}

VectorXd projected_field(const MatrixModel& model, const VectorXd& v, const VectorXd& p) {
  model.require_on_manifold(p);
  return model.act(model.element(v), p);
}

VectorXd bundle_map_with(const MatrixModel& model, const MatrixXd& op, const MatrixXd& g, const VectorXd& z) {
  require_dim("tangent vector", model.ambient_dim(), z.size());
  const auto lu = g.partialPivLu();
  if (model.kind() == ModelKind::SphereOrbit) {
    const VectorXd u = lu.solve(z);
    const VectorXd xi = model.pole_preimage(u);
    return g * (model.element(op * xi) * model.base_point());
  }
  const Index n = model.matrix_size();
  const MatrixXd u = lu.solve(unflatten(z, n));
  return flatten(g * model.element(op * model.coordinates(u)));
}

VectorXd bundle_map(const MatrixModel& model, const MatrixXd& op, const VectorXd& p, const VectorXd& z) {
  return bundle_map_with(model, op, model.section(p), z);
}

VectorXd fd_bracket(const Field& x, const Field& y, const VectorXd& p, double h) {
  if (h < kMinStep) throw StepTooSmall(h);
  const Index n = p.size();
  const VectorXd xp = x(p);
  const VectorXd yp = y(p);
  VectorXd out = VectorXd::Zero(n);
  for (Index k = 0; k < n; ++k) {
    VectorXd plus = p;
    VectorXd minus = p;
    plus[k] += h;
    minus[k] -= h;
    const VectorXd dy = (y(plus) - y(minus)) / (2.0 * h);
    const VectorXd dx = (x(plus) - x(minus)) / (2.0 * h);
    out += dy * xp[k] - dx * yp[k];
  }
  return out;
}

VectorXd fd_bracket(const MatrixModel& model, const Field& x, const Field& y, const VectorXd& p, double h) {
  if (h < kMinStep) throw StepTooSmall(h);
  model.require_on_manifold(p);
  auto extend = [&model](const Field& f) { return Field([&model, f](const VectorXd& z) { return f(model.retract(z)); }); };
  return fd_bracket(extend(x), extend(y), p, h);
}

FieldSample numerical_torsion(const MatrixModel& model, const LinearOperator& op, const VectorXd& v,
                              const VectorXd& w, const VectorXd& p, double h) {
  if (h < kMinStep) throw StepTooSmall(h);
  model.require_on_manifold(p);
  const MatrixXd op_f = to_double(op.matrix());
  const Field xv = [&](const VectorXd& q) { return projected_field(model, v, q); };
  const Field xw = [&](const VectorXd& q) { return projected_field(model, w, q); };
  const Field nxv = [&](const VectorXd& q) { return bundle_map(model, op_f, q, xv(q)); };
  const Field nxw = [&](const VectorXd& q) { return bundle_map(model, op_f, q, xw(q)); };
  auto n_at_p = [&](const VectorXd& z) { return bundle_map(model, op_f, p, z); };

  FieldSample sample;
  sample.point = p;
  sample.v = v;
  sample.w = w;
  sample.step = h;
  const VectorXd mixed = fd_bracket(model, nxv, xw, p, h) + fd_bracket(model, xv, nxw, p, h);
  sample.numerical = n_at_p(mixed) - fd_bracket(model, nxv, nxw, p, h) - n_at_p(n_at_p(fd_bracket(model, xv, xw, p, h)));

  const MatrixXd g = model.section(p);
  const MatrixXd g_inv = g.inverse();
  const VectorXd beta =
      torsion_form(*model.alg(), op_f, model.adjoint(g_inv, v), model.adjoint(g_inv, w));
  sample.predicted = model.act(g, model.kind() == ModelKind::SphereOrbit
                                      ? VectorXd(model.element(beta) * model.base_point())
                                      : flatten(model.element(beta)));
  sample.deviation = max_norm(sample.numerical - sample.predicted);
  return sample;
}

SphereDemo nonrelatedness_demo(const MatrixModel& model, const VectorXd& v, const MatrixXd& g) {
  const VectorXd p0 = model.base_point();
  return {model.act(g, projected_field(model, v, p0)), projected_field(model, v, model.retract(model.act(g, p0)))};
}

MismatchDemo bundle_mismatch_demo(const MatrixModel& model, const LinearOperator& op, const VectorXd& v,
                                  const MatrixXd& g) {
  const MatrixXd op_f = to_double(op.matrix());
  const VectorXd p = model.retract(model.act(g, model.base_point()));
  return {bundle_map(model, op_f, p, projected_field(model, v, p)), projected_field(model, op_f * v, p)};
}

RelationReport relation_checks(const MatrixModel& model, const LinearOperator& op, const HomogeneousPair& pair,
                               std::size_t samples, std::uint64_t seed, double h, double theta) {
  std::mt19937_64 rng(seed);
  const Index dim = model.alg()->dim();
  const MatrixXd op_f = to_double(op.matrix());
  const MatrixXd k_basis = to_double(pair.k_space().basis());
  RelationReport report;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const MatrixXd hg = model.random_group_element(rng, 0.5);
    const VectorXd p = model.random_point(rng);
    const VectorXd v = random_coords(rng, dim, 1.0);
    const VectorXd w = random_coords(rng, dim, 1.0);

    const VectorXd moved = model.retract(model.act(hg.inverse(), p));
    const VectorXd lhs = model.act(hg, projected_field(model, v, moved));
    const VectorXd rhs = projected_field(model, model.adjoint(hg, v), p);
    report.alpha_relatedness_residual = std::max(report.alpha_relatedness_residual, max_norm(lhs - rhs));

    MatrixXd k = MatrixXd::Identity(model.matrix_size(), model.matrix_size());
    if (k_basis.rows() > 0) {
      const VectorXd z = k_basis.transpose() * random_coords(rng, k_basis.rows(), 1.0);
      k = matrix_exp(model.element(z));
    }
    const MatrixXd g = model.section(p);
    const VectorXd tangent = projected_field(model, w, p);
    report.representative_residual =
        std::max(report.representative_residual,
                 max_norm(bundle_map_with(model, op_f, g, tangent) - bundle_map_with(model, op_f, g * k, tangent)));

    const Field xv = [&](const VectorXd& q) { return projected_field(model, v, q); };
    const Field xw = [&](const VectorXd& q) { return projected_field(model, w, q); };
    const VectorXd expected = -projected_field(model, model.alg()->bracket(v, w), p);
    report.projected_bracket_residual =
        std::max(report.projected_bracket_residual, max_norm(fd_bracket(model, xv, xw, p, h) - expected));
  }

  if (model.kind() == ModelKind::SphereOrbit) {
    const VectorXd first = model.pole_preimage(VectorXd::Unit(3, 0));
    const VectorXd second = model.pole_preimage(VectorXd::Unit(3, 1));
    report.nonrelated = nonrelatedness_demo(model, first, Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal().toDenseMatrix());
    report.mismatch = bundle_mismatch_demo(model, op, second, rotation_x(theta));
  }
  return report;
}

HarnessReport run_harness(const MatrixModel& model, const HomogeneousPair& pair, const LinearOperator& op,
                          const HarnessConfig& config) {
  if (config.step < kMinStep) throw StepTooSmall(config.step);
  const VerdictReport admissible = check_admissible(pair, op);
  if (!admissible.holds) throw NotAdmissible(admissible, "operator is not admissible for the pair");

  HarnessReport report;
  report.kind = model.kind();
  report.config = config;
  report.exactly_nijenhuis = check_nijenhuis(pair, op).holds;

  std::mt19937_64 rng(config.seed);
  const Index dim = model.alg()->dim();
  for (std::size_t s = 0; s < config.samples; ++s) {
    const VectorXd p = model.random_point(rng);
    const VectorXd v = random_coords(rng, dim, 1.0);
    const VectorXd w = random_coords(rng, dim, 1.0);
    FieldSample sample = numerical_torsion(model, op, v, w, p, config.step);
    report.max_deviation = std::max(report.max_deviation, sample.deviation);
    report.max_numerical = std::max(report.max_numerical, max_norm(sample.numerical));
    report.samples.push_back(std::move(sample));
  }
  report.relations = relation_checks(model, op, pair, config.samples, config.seed + 1, config.step, config.theta);

  const RelationReport& rel = report.relations;
  report.passed = report.max_deviation <= config.torsion_tolerance &&
                  (!report.exactly_nijenhuis || report.max_numerical <= config.torsion_tolerance) &&
                  rel.alpha_relatedness_residual <= config.relation_tolerance &&
                  rel.representative_residual <= config.relation_tolerance &&
                  rel.projected_bracket_residual <= config.bracket_tolerance;
  return report;
}

namespace {

// X = (sin y, x^2, x z), Y = (z^2, cos x, x y) on R^3.
VectorXd nonlinear_x(const VectorXd& q) { return Eigen::Vector3d(std::sin(q[1]), q[0] * q[0], q[0] * q[2]); }
VectorXd nonlinear_y(const VectorXd& q) { return Eigen::Vector3d(q[2] * q[2], std::cos(q[0]), q[0] * q[1]); }

VectorXd nonlinear_bracket(const VectorXd& q) {
  Eigen::Matrix3d dx;
  dx << 0, std::cos(q[1]), 0, 2 * q[0], 0, 0, q[2], 0, q[0];
  Eigen::Matrix3d dy;
  dy << 0, 0, 2 * q[2], -std::sin(q[0]), 0, 0, q[1], q[0], 0;
  return dy * nonlinear_x(q) - dx * nonlinear_y(q);
}

}  // namespace

double nonlinear_bracket_deviation(double h) {
  const VectorXd q = Eigen::Vector3d(0.7, -0.4, 1.3);
  return max_norm(fd_bracket(nonlinear_x, nonlinear_y, q, h) - nonlinear_bracket(q));
}

void write_samples_csv(const HarnessReport& report, std::ostream& os) {
  const Index n = report.samples.empty() ? 0 : report.samples.front().point.size();
  os << "sample,step,deviation,numerical_norm,predicted_norm";
  for (Index k = 0; k < n; ++k) os << ",p" << k;
  os << '\n' << std::setprecision(17);
  for (std::size_t s = 0; s < report.samples.size(); ++s) {
    const FieldSample& f = report.samples[s];
    os << s << ',' << f.step << ',' << f.deviation << ',' << f.numerical.norm() << ',' << f.predicted.norm();
    for (Index k = 0; k < f.point.size(); ++k) os << ',' << f.point[k];
    os << '\n';
  }
}

double convergence_ratio(double h) { return nonlinear_bracket_deviation(h) / nonlinear_bracket_deviation(h / 2.0); }

}  // namespace liehom::harness
