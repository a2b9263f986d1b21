#include "autovmd/stencils.hpp"

#include "autovmd/error.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace autovmd {

std::array<double, 5> unit_stencil(int order)
{
  switch (order) {
  case 1: return {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  case 2: return {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  case 3: return {-0.5, 1.0, 0.0, -1.0, 0.5};
  case 4: return {1.0, -4.0, 6.0, -4.0, 1.0};
  default: raise(ErrorCode::OrderOutOfRange, "derivative order must be 1..4, got " + std::to_string(order));
  }
}

const FivePointOperator& StencilSet::op(int order) const
{
  require(order >= 1 && order <= 4, ErrorCode::OrderOutOfRange,
          "derivative order must be 1..4, got " + std::to_string(order));
  return ops[order - 1];
}

StencilSet build_stencils(std::size_t grid_count, double h)
{
  require(grid_count >= 8, ErrorCode::GridTooSmall,
          "stencils need at least 8 nodes, got " + std::to_string(grid_count));
  require(h > 0 && std::isfinite(h), ErrorCode::BadConfig, "grid spacing must be positive");

  StencilSet s;
  s.grid_count = grid_count;
  s.h = h;
  for (int k = 1; k <= 4; ++k) {
    auto c = unit_stencil(k);
    const double scale = std::pow(h, -k);
    for (auto& v : c)
      v *= scale;
    s.ops[k - 1] = {k, c};
  }
  const std::size_t n = grid_count - 1;
  s.boundary[0] = {{{{0, 1.0}, {0, 0.0}}}, 1};
  s.boundary[1] = {{{{n, 1.0}, {0, 0.0}}}, 1};
  s.boundary[2] = {{{{0, -1.0}, {1, 1.0}}}, 2};
  s.boundary[3] = {{{{n - 1, -1.0}, {n, 1.0}}}, 2};
  return s;
}

std::vector<double> apply_derivative(const StencilSet& stencils, int order,
                                     std::span<const double> v)
{
  const auto& op = stencils.op(order);
  require(v.size() == stencils.grid_count, ErrorCode::LengthMismatch,
          "vector length " + std::to_string(v.size()) + " != grid count " +
            std::to_string(stencils.grid_count));
  std::vector<double> out(stencils.interior_rows());
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 5; ++j)
      acc += op.coeffs[j] * v[r + j];
    out[r] = acc;
  }
  return out;
}

Eigen::MatrixXd conversion_matrix(std::size_t grid_count, int order)
{
  require(grid_count >= 8, ErrorCode::GridTooSmall, "grid too small");
  const auto c = unit_stencil(order);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(grid_count - 4, grid_count);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index j = 0; j < 5; ++j)
      m(r, r + j) = c[j];
  return m;
}

Eigen::MatrixXd boundary_matrix(const StencilSet& stencils)
{
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, stencils.grid_count);
  for (Eigen::Index r = 0; r < 4; ++r) {
    const auto& row = stencils.boundary[r];
    for (std::size_t e = 0; e < row.nnz; ++e)
      b(r, row.entries[e].first) += row.entries[e].second;
  }
  return b;
}

Eigen::MatrixXd broadcast_hadamard(std::span<const double> v, const Eigen::MatrixXd& m)
{
  require(static_cast<Eigen::Index>(v.size()) == m.rows(), ErrorCode::LengthMismatch,
          "broadcast vector length does not match matrix rows");
  Eigen::Map<const Eigen::VectorXd> vv(v.data(), static_cast<Eigen::Index>(v.size()));
  return (m.array().colwise() * vv.array()).matrix();
}

namespace {

void check_inputs(const StencilSet& stencils, std::span<const double> alpha)
{
  require(alpha.size() == stencils.grid_count, ErrorCode::LengthMismatch,
          "alpha length does not match grid");
  for (double a : alpha)
    require(a > 0 && std::isfinite(a), ErrorCode::NonPositiveAlpha,
            "curvature weight must be strictly positive");
}

// Weights of interior row r (node r + 2) on nodes r .. r + 4, unscaled.
std::array<double, 5> interior_row(std::span<const double> alpha, std::size_t r)
{
  static const auto s1 = unit_stencil(1);
  static const auto s2 = unit_stencil(2);
  static const auto s3 = unit_stencil(3);
  static const auto s4 = unit_stencil(4);
  double a1 = 0.0, a2 = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    a1 += s1[j] * alpha[r + j];
    a2 += s2[j] * alpha[r + j];
  }
  const double a0 = alpha[r + 2];
  std::array<double, 5> w{};
  for (std::size_t j = 0; j < 5; ++j)
    w[j] = 2.0 * a2 * s2[j] + 4.0 * a1 * s3[j] + 2.0 * a0 * s4[j];
  return w;
}

} // namespace

std::vector<double> assemble_rhs(const StencilSet& stencils, std::span<const double> rhs_interior,
                                 std::span<const double> f)
{
  const std::size_t n1 = stencils.grid_count;
  require(rhs_interior.size() == n1 && f.size() == n1, ErrorCode::LengthMismatch,
          "rhs and f must have grid_count entries");
  const std::size_t m = stencils.interior_rows();
  const double h4 = std::pow(stencils.h, 4);
  std::vector<double> rhs(n1);
  for (std::size_t r = 0; r < m; ++r)
    rhs[r] = h4 * rhs_interior[r + 2];
  const std::size_t n = n1 - 1;
  rhs[m] = f[0];
  rhs[m + 1] = f[n];
  rhs[m + 2] = f[1] - f[0];
  rhs[m + 3] = f[n] - f[n - 1];
  return rhs;
}

BvpSystem assemble_system(const StencilSet& stencils, std::span<const double> alpha,
                          std::span<const double> rhs_interior, std::span<const double> f)
{
  check_inputs(stencils, alpha);
  const std::size_t n1 = stencils.grid_count;
  const std::size_t m = stencils.interior_rows();

  BvpSystem sys;
  sys.h = stencils.h;
  sys.rhs = assemble_rhs(stencils, rhs_interior, f);
  sys.matrix = Eigen::MatrixXd::Zero(n1, n1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto w = interior_row(alpha, r);
    for (std::size_t j = 0; j < 5; ++j)
      sys.matrix(r, r + j) = w[j];
  }
  sys.matrix.bottomRows(4) = boundary_matrix(stencils);
  return sys;
}

Eigen::MatrixXd assemble_matrix_dense(const StencilSet& stencils, std::span<const double> alpha)
{
  check_inputs(stencils, alpha);
  const std::size_t n1 = stencils.grid_count;
  const std::size_t m = stencils.interior_rows();
  Eigen::Map<const Eigen::VectorXd> a(alpha.data(), static_cast<Eigen::Index>(n1));

  const Eigen::MatrixXd g1 = conversion_matrix(n1, 1);
  const Eigen::MatrixXd g2 = conversion_matrix(n1, 2);
  const Eigen::MatrixXd g3 = conversion_matrix(n1, 3);
  const Eigen::MatrixXd g4 = conversion_matrix(n1, 4);

  const Eigen::VectorXd a2 = 2.0 * (g2 * a);
  const Eigen::VectorXd a1 = 4.0 * (g1 * a);
  const Eigen::VectorXd a0 = 2.0 * a.segment(2, static_cast<Eigen::Index>(m));

  Eigen::MatrixXd out(n1, n1);
  out.topRows(static_cast<Eigen::Index>(m)) =
    broadcast_hadamard({a2.data(), m}, g2) + broadcast_hadamard({a1.data(), m}, g3) +
    broadcast_hadamard({a0.data(), m}, g4);
  out.bottomRows(4) = boundary_matrix(stencils);
  return out;
}

// The system is pentadiagonal once each equation is moved next to the node
// it constrains: interior row r -> node r + 2, g_0 -> 0, slope-left -> 1,
// slope-right -> N - 1, g_N -> N.
BvpFactorization::BvpFactorization(const Eigen::MatrixXd& matrix, SolverKind kind)
  : kind_(kind), n_(static_cast<std::size_t>(matrix.rows()))
{
  require(matrix.rows() == matrix.cols() && n_ >= 8, ErrorCode::ShapeMismatch,
          "system matrix must be square with at least 8 rows");
  if (kind == SolverKind::DenseLU) {
    dense_.compute(matrix);
    const Eigen::VectorXd piv = dense_.matrixLU().diagonal();
    require(piv.allFinite() && (piv.array() != 0.0).all(), ErrorCode::SingularSystem,
            "dense LU: singular system");
    return;
  }
  const std::size_t m = n_ - 4;
  row_order_.assign(n_, 0);
  for (std::size_t r = 0; r < m; ++r)
    row_order_[r + 2] = r;
  row_order_[0] = m;
  row_order_[n_ - 1] = m + 1;
  row_order_[1] = m + 2;
  row_order_[n_ - 2] = m + 3;

  BandedMatrix band(n_, 2, 2);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto src = static_cast<Eigen::Index>(row_order_[i]);
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = matrix(src, static_cast<Eigen::Index>(j));
      if (v == 0.0)
        continue;
      require(band.in_band(i, j), ErrorCode::ShapeMismatch,
              "system matrix is not pentadiagonal after reordering");
      band.at(i, j) = v;
    }
  }
  banded_.emplace(std::move(band));
}

std::vector<double> BvpFactorization::solve(std::span<const double> rhs) const
{
  require(rhs.size() == n_, ErrorCode::LengthMismatch, "rhs length does not match system");
  if (kind_ == SolverKind::DenseLU) {
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n_));
    Eigen::VectorXd x = dense_.solve(b);
    return {x.data(), x.data() + x.size()};
  }
  std::vector<double> b(n_);
  for (std::size_t i = 0; i < n_; ++i)
    b[i] = rhs[row_order_[i]];
  return banded_->solve(b);
}

std::vector<double> solve(const BvpSystem& system, SolverKind kind)
{
  return BvpFactorization(system.matrix, kind).solve(system.rhs);
}

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m)
{
  const auto old = out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j)
        out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

} // namespace autovmd
