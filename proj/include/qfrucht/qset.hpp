#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace qfrucht {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Thrown for malformed user input (bad block sizes, mismatched spaces,
/// invalid tables, non-projections). Maps to CLI exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kDefaultTol = 1e-9;

/// A finite quantum set: the multi-matrix algebra ⊕_k M_{n_k} carrying its
/// unique tracial 1-form psi = ⊕ n_k Tr (the normalization making mm* = id).
///
/// The basis consists of unnormalized matrix units.  For a QSet built with
/// the primary constructor the order is block-major, then row-major inside
/// each block; tensor-product sets keep Kronecker order instead, so every
/// basis index carries an explicit (block,row,col) descriptor.
class QSet {
 public:
  struct Unit {
    int block;
    int row;
    int col;
  };

  explicit QSet(std::vector<int> block_sizes);

  /// Classical n-point set: n blocks of size 1 (counting measure).
  static QSet classical(int n);

  /// Tensor product with Kronecker-ordered basis: index a*b.dim()+c
  /// corresponds to e_a ⊗ e_c.
  static QSet tensor(const QSet& a, const QSet& b);

  int dim() const { return static_cast<int>(units_.size()); }
  const std::vector<int>& blocks() const { return blocks_; }
  const Unit& unit(int idx) const { return units_[idx]; }
  double weight(int idx) const { return weights_[idx]; }
  const Eigen::VectorXd& weights() const { return weights_; }
  int index_of(int block, int row, int col) const;
  bool is_classical() const;
  bool same_as(const QSet& other) const;

  /// Unit of the algebra as an ℓ² vector (eta).
  Vec unit_vector() const;

  /// psi(x) = sum_k n_k Tr(X_k).
  Cplx psi(const Vec& x) const;

  /// Weighted inner product <x,y> = psi(x* y).
  Cplx inner(const Vec& x, const Vec& y) const;
  double norm(const Vec& x) const;

  /// Involution x -> x* on algebra elements.
  Vec star(const Vec& x) const;

  /// Algebra product, computed blockwise.
  Vec product(const Vec& x, const Vec& y) const;

  /// View a coefficient vector as per-block dense matrices and back.
  std::vector<Mat> to_blocks(const Vec& x) const;
  Vec from_blocks(const std::vector<Mat>& bs) const;

  /// Multiplication map m : ℓ²(X)⊗ℓ²(X) -> ℓ²(X) as a dense matrix in
  /// Kronecker order, and its adjoint w.r.t. the weighted inner products.
  Mat mult_matrix() const;
  Mat mult_adjoint_matrix() const;

 private:
  QSet() = default;
  void build_lookup();

  std::vector<int> blocks_;
  std::vector<Unit> units_;
  Eigen::VectorXd weights_;
  std::vector<std::vector<int>> lookup_;  // per block: row*n+col -> basis idx
};

using QSetPtr = std::shared_ptr<const QSet>;

/// An operator between the ℓ² spaces of two quantum sets, stored densely in
/// the matrix-unit basis.  Adjoints are always taken with respect to the
/// weighted inner products.
struct LinOp {
  QSetPtr domain;
  QSetPtr codomain;
  Mat mat;

  LinOp() = default;
  LinOp(QSetPtr dom, QSetPtr cod, Mat m);
  static LinOp identity(QSetPtr space);
  static LinOp zero(QSetPtr space);

  bool is_endo() const { return domain->same_as(*codomain); }
  Vec apply(const Vec& x) const { return mat * x; }
};

LinOp adjoint(const LinOp& a);
LinOp conjugate_op(const LinOp& a);
LinOp schur_product(const LinOp& a, const LinOp& b);
LinOp operator+(const LinOp& a, const LinOp& b);
LinOp operator-(const LinOp& a, const LinOp& b);
LinOp operator*(const LinOp& a, const LinOp& b);
LinOp operator*(Cplx c, const LinOp& a);

/// Complete quantum graph without loops: f -> psi(f) eta - f.
LinOp complete_graph_op(QSetPtr space);

/// Frobenius norm of the coefficient matrix relative to max(1, |A|).
double rel_residual(const Mat& diff, const Mat& ref);

struct GraphFlags {
  bool schur_idempotent = false;
  bool real = false;
  bool undirected = false;
  bool loopless = false;
  bool regular = false;
  Cplx degree{0.0, 0.0};

  double schur_residual = 0.0;
  double real_residual = 0.0;
  double undirected_residual = 0.0;
  double loop_residual = 0.0;
  double regular_residual = 0.0;

  bool is_quantum_graph() const { return schur_idempotent && real; }
};

struct QuantumGraph {
  QSetPtr space;
  LinOp adjacency;
  GraphFlags flags;
};

GraphFlags verify_quantum_graph(const LinOp& a, double tol = kDefaultTol);
QuantumGraph make_quantum_graph(const LinOp& a, double tol = kDefaultTol);

struct DegreeInfo {
  LinOp in_degree;   // D_A  = m(A eta ⊗ I), left multiplication by A eta
  LinOp out_degree;  // D^A = m(A* eta ⊗ I)
  bool is_regular = false;
  Cplx degree{0.0, 0.0};
  double residual = 0.0;
};

DegreeInfo degree_operators(const LinOp& a, double tol = kDefaultTol);

struct SpectralProjection {
  Cplx eigenvalue;
  LinOp projection;
  int rank = 0;
};

/// Spectral decomposition of a normal operator (normal w.r.t. the weighted
/// inner product).  Eigenvalues within cluster_tol of each other are merged
/// by union-find after sorting by (re, im).
std::vector<SpectralProjection> spectral_projections(const LinOp& n,
                                                     double cluster_tol = 1e-7,
                                                     double tol = kDefaultTol);

}  // namespace qfrucht
