#pragma once

#include "autovmd/banded.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace autovmd {

//! Five-point central difference for one derivative order. Row r of the
//! operator evaluates node r + 2 from nodes r .. r + 4.
struct FivePointOperator
{
  int order = 0;
  std::array<double, 5> coeffs{}; // includes the 1/h^order factor
};

//! Boundary row: sum of coeff * g[col] over its entries.
struct BoundaryRow
{
  std::array<std::pair<std::size_t, double>, 2> entries;
  std::size_t nnz = 0;
};

//! Derivative operators of orders 1..4 on a uniform grid with
//! grid_count = N + 1 nodes, plus the four-row boundary block
//! {g_0, g_N, g_1 - g_0, g_N - g_{N-1}}.
struct StencilSet
{
  std::size_t grid_count = 0;
  double h = 0.0;
  std::array<FivePointOperator, 4> ops; // ops[k - 1] is order k
  std::array<BoundaryRow, 4> boundary;

  //! N - 3: nodes 2 .. N - 2.
  std::size_t interior_rows() const { return grid_count - 4; }
  const FivePointOperator& op(int order) const;
};

//! Unscaled stencil weights, i.e. h^k times the order-k derivative.
std::array<double, 5> unit_stencil(int order);

//! Throws GridTooSmall (grid_count < 8) or BadConfig (h <= 0).
StencilSet build_stencils(std::size_t grid_count, double h);

//! Interior derivative estimates, length N - 3.
std::vector<double> apply_derivative(const StencilSet& stencils, int order,
                                     std::span<const double> v);

//! Dense (N - 3) x (N + 1) conversion matrix of unscaled weights for `order`.
Eigen::MatrixXd conversion_matrix(std::size_t grid_count, int order);

//! Dense 4 x (N + 1) boundary block.
Eigen::MatrixXd boundary_matrix(const StencilSet& stencils);

//! (v ⊙ M)(i, j) = v_i M(i, j): v broadcast across the columns of M.
Eigen::MatrixXd broadcast_hadamard(std::span<const double> v, const Eigen::MatrixXd& m);

//! Linear system for the fourth-order boundary value problem. Rows
//! 0 .. N - 4 are the h^4-scaled interior equations, rows N - 3 .. N the
//! boundary conditions pinned to f.
struct BvpSystem
{
  Eigen::MatrixXd matrix;
  std::vector<double> rhs;
  double h = 0.0;
};

//! Interior rows encode (2 A2 a) ⊙ G2 + (4 A1 a) ⊙ G3 + 2 a ⊙ G4, built row
//! by row. `rhs_interior` holds the ODE right-hand side at every node; only
//! nodes 2 .. N - 2 are used.
BvpSystem assemble_system(const StencilSet& stencils, std::span<const double> alpha,
                          std::span<const double> rhs_interior, std::span<const double> f);

//! Same matrix, built literally from dense conversion matrices and broadcast
//! Hadamard products. Used to cross-check the row-wise assembly.
Eigen::MatrixXd assemble_matrix_dense(const StencilSet& stencils, std::span<const double> alpha);

//! Right-hand side for the given interior values and boundary data.
std::vector<double> assemble_rhs(const StencilSet& stencils, std::span<const double> rhs_interior,
                                 std::span<const double> f);

enum class SolverKind
{
  Banded,
  DenseLU
};

//! Factorization of a BvpSystem matrix, reusable across right-hand sides.
class BvpFactorization
{
public:
  explicit BvpFactorization(const Eigen::MatrixXd& matrix, SolverKind kind = SolverKind::Banded);

  std::vector<double> solve(std::span<const double> rhs) const;
  SolverKind kind() const { return kind_; }

private:
  SolverKind kind_;
  std::size_t n_;
  std::vector<std::size_t> row_order_; // banded row -> system row
  std::optional<BandedLU> banded_;
  Eigen::PartialPivLU<Eigen::MatrixXd> dense_;
};

std::vector<double> solve(const BvpSystem& system, SolverKind kind = SolverKind::Banded);

//! One row per line, space-separated.
void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m);

} // namespace autovmd
