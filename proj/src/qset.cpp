#include "qfrucht/qset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qfrucht {

QSet::QSet(std::vector<int> block_sizes) : blocks_(std::move(block_sizes)) {
  if (blocks_.empty()) throw input_error("QSet: empty block list");
  for (int n : blocks_)
    if (n < 1) throw input_error("QSet: block sizes must be >= 1");
  for (int b = 0; b < static_cast<int>(blocks_.size()); ++b) {
    int n = blocks_[b];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) units_.push_back({b, i, j});
  }
  weights_.resize(units_.size());
  for (size_t k = 0; k < units_.size(); ++k)
    weights_[static_cast<Eigen::Index>(k)] = blocks_[units_[k].block];
  build_lookup();
}

QSet QSet::classical(int n) { return QSet(std::vector<int>(n, 1)); }

QSet QSet::tensor(const QSet& a, const QSet& b) {
  QSet t;
  const int nb = static_cast<int>(b.blocks_.size());
  for (int ka = 0; ka < static_cast<int>(a.blocks_.size()); ++ka)
    for (int kb = 0; kb < nb; ++kb)
      t.blocks_.push_back(a.blocks_[ka] * b.blocks_[kb]);
  t.units_.resize(static_cast<size_t>(a.dim()) * b.dim());
  for (int ia = 0; ia < a.dim(); ++ia) {
    const Unit& ua = a.units_[ia];
    for (int ib = 0; ib < b.dim(); ++ib) {
      const Unit& ub = b.units_[ib];
      int nB = b.blocks_[ub.block];
      t.units_[static_cast<size_t>(ia) * b.dim() + ib] = {
          ua.block * nb + ub.block, ua.row * nB + ub.row, ua.col * nB + ub.col};
    }
  }
  t.weights_.resize(t.units_.size());
  for (size_t k = 0; k < t.units_.size(); ++k)
    t.weights_[static_cast<Eigen::Index>(k)] = t.blocks_[t.units_[k].block];
  t.build_lookup();
  return t;
}

void QSet::build_lookup() {
  lookup_.resize(blocks_.size());
  for (size_t b = 0; b < blocks_.size(); ++b)
    lookup_[b].assign(static_cast<size_t>(blocks_[b]) * blocks_[b], -1);
  for (size_t k = 0; k < units_.size(); ++k) {
    const Unit& u = units_[k];
    lookup_[u.block][static_cast<size_t>(u.row) * blocks_[u.block] + u.col] =
        static_cast<int>(k);
  }
}

int QSet::index_of(int block, int row, int col) const {
  return lookup_[block][static_cast<size_t>(row) * blocks_[block] + col];
}

bool QSet::is_classical() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](int n) { return n == 1; });
}

bool QSet::same_as(const QSet& other) const {
  if (blocks_ != other.blocks_ || units_.size() != other.units_.size())
    return false;
  for (size_t k = 0; k < units_.size(); ++k) {
    const Unit &u = units_[k], &v = other.units_[k];
    if (u.block != v.block || u.row != v.row || u.col != v.col) return false;
  }
  return true;
}

Vec QSet::unit_vector() const {
  Vec eta = Vec::Zero(dim());
  for (int k = 0; k < dim(); ++k)
    if (units_[k].row == units_[k].col) eta[k] = 1.0;
  return eta;
}

Cplx QSet::psi(const Vec& x) const {
  Cplx s = 0.0;
  for (int k = 0; k < dim(); ++k)
    if (units_[k].row == units_[k].col) s += weights_[k] * x[k];
  return s;
}

Cplx QSet::inner(const Vec& x, const Vec& y) const {
  Cplx s = 0.0;
  for (int k = 0; k < dim(); ++k) s += weights_[k] * std::conj(x[k]) * y[k];
  return s;
}

double QSet::norm(const Vec& x) const { return std::sqrt(std::real(inner(x, x))); }

Vec QSet::star(const Vec& x) const {
  Vec y(dim());
  for (int k = 0; k < dim(); ++k) {
    const Unit& u = units_[k];
    y[index_of(u.block, u.col, u.row)] = std::conj(x[k]);
  }
  return y;
}

std::vector<Mat> QSet::to_blocks(const Vec& x) const {
  std::vector<Mat> bs(blocks_.size());
  for (size_t b = 0; b < blocks_.size(); ++b)
    bs[b] = Mat::Zero(blocks_[b], blocks_[b]);
  for (int k = 0; k < dim(); ++k) {
    const Unit& u = units_[k];
    bs[u.block](u.row, u.col) = x[k];
  }
  return bs;
}

Vec QSet::from_blocks(const std::vector<Mat>& bs) const {
  Vec x(dim());
  for (int k = 0; k < dim(); ++k) {
    const Unit& u = units_[k];
    x[k] = bs[u.block](u.row, u.col);
  }
  return x;
}

Vec QSet::product(const Vec& x, const Vec& y) const {
  std::vector<Mat> xb = to_blocks(x), yb = to_blocks(y);
  for (size_t b = 0; b < xb.size(); ++b) xb[b] = xb[b] * yb[b];
  return from_blocks(xb);
}

Mat QSet::mult_matrix() const {
  const int d = dim();
  Mat m = Mat::Zero(d, static_cast<Eigen::Index>(d) * d);
  for (int a = 0; a < d; ++a) {
    const Unit& u = units_[a];
    for (int b = 0; b < d; ++b) {
      const Unit& v = units_[b];
      if (u.block == v.block && u.col == v.row)
        m(index_of(u.block, u.row, v.col), static_cast<Eigen::Index>(a) * d + b) +=
            1.0;
    }
  }
  return m;
}

Mat QSet::mult_adjoint_matrix() const {
  // m*(e^k_{iq}) = (1/n_k) sum_j e^k_{ij} ⊗ e^k_{jq}
  const int d = dim();
  Mat ms = Mat::Zero(static_cast<Eigen::Index>(d) * d, d);
  for (int c = 0; c < d; ++c) {
    const Unit& u = units_[c];
    int n = blocks_[u.block];
    for (int j = 0; j < n; ++j) {
      int a = index_of(u.block, u.row, j);
      int b = index_of(u.block, j, u.col);
      ms(static_cast<Eigen::Index>(a) * d + b, c) += 1.0 / n;
    }
  }
  return ms;
}

LinOp::LinOp(QSetPtr dom, QSetPtr cod, Mat m)
    : domain(std::move(dom)), codomain(std::move(cod)), mat(std::move(m)) {
  if (mat.rows() != codomain->dim() || mat.cols() != domain->dim())
    throw input_error("LinOp: matrix shape does not match spaces");
}

LinOp LinOp::identity(QSetPtr space) {
  Mat m = Mat::Identity(space->dim(), space->dim());
  return LinOp(space, space, std::move(m));
}

LinOp LinOp::zero(QSetPtr space) {
  Mat m = Mat::Zero(space->dim(), space->dim());
  return LinOp(space, space, std::move(m));
}

LinOp adjoint(const LinOp& a) {
  // <A* x, y>_D = <x, A y>_C  =>  A* = W_D^{-1} A^H W_C
  Mat m = a.domain->weights().cwiseInverse().asDiagonal() * a.mat.adjoint() *
          a.codomain->weights().asDiagonal();
  return LinOp(a.codomain, a.domain, std::move(m));
}

LinOp conjugate_op(const LinOp& a) {
  if (!a.is_endo()) throw input_error("conjugate_op: endomorphism required");
  const QSet& x = *a.domain;
  Mat m(x.dim(), x.dim());
  for (int c = 0; c < x.dim(); ++c) {
    const QSet::Unit& u = x.unit(c);
    Vec col = a.mat.col(x.index_of(u.block, u.col, u.row));
    m.col(c) = x.star(col);
  }
  return LinOp(a.domain, a.codomain, std::move(m));
}

LinOp schur_product(const LinOp& a, const LinOp& b) {
  if (!a.is_endo() || !b.is_endo() || !a.domain->same_as(*b.domain))
    throw input_error("schur_product: operators must share one quantum set");
  const QSet& x = *a.domain;
  // m(A⊗B)m* column by column, using the sparse form of m*.
  Mat m = Mat::Zero(x.dim(), x.dim());
  for (int c = 0; c < x.dim(); ++c) {
    const QSet::Unit& u = x.unit(c);
    int n = x.blocks()[u.block];
    Vec acc = Vec::Zero(x.dim());
    for (int j = 0; j < n; ++j) {
      Vec av = a.mat.col(x.index_of(u.block, u.row, j));
      Vec bv = b.mat.col(x.index_of(u.block, j, u.col));
      acc += x.product(av, bv);
    }
    m.col(c) = acc / static_cast<double>(n);
  }
  return LinOp(a.domain, a.codomain, std::move(m));
}

LinOp operator+(const LinOp& a, const LinOp& b) {
  return LinOp(a.domain, a.codomain, a.mat + b.mat);
}
LinOp operator-(const LinOp& a, const LinOp& b) {
  return LinOp(a.domain, a.codomain, a.mat - b.mat);
}
LinOp operator*(const LinOp& a, const LinOp& b) {
  return LinOp(b.domain, a.codomain, a.mat * b.mat);
}
LinOp operator*(Cplx c, const LinOp& a) {
  return LinOp(a.domain, a.codomain, c * a.mat);
}

LinOp complete_graph_op(QSetPtr space) {
  const QSet& x = *space;
  Mat m = -Mat::Identity(x.dim(), x.dim());
  Vec eta = x.unit_vector();
  for (int c = 0; c < x.dim(); ++c) {
    const QSet::Unit& u = x.unit(c);
    if (u.row == u.col) m.col(c) += static_cast<double>(x.blocks()[u.block]) * eta;
  }
  return LinOp(space, space, std::move(m));
}

double rel_residual(const Mat& diff, const Mat& ref) {
  return diff.norm() / std::max(1.0, ref.norm());
}

GraphFlags verify_quantum_graph(const LinOp& a, double tol) {
  if (!a.is_endo()) throw input_error("verify_quantum_graph: endomorphism required");
  GraphFlags f;
  LinOp id = LinOp::identity(a.domain);
  f.schur_residual = rel_residual(schur_product(a, a).mat - a.mat, a.mat);
  f.real_residual = rel_residual(a.mat - conjugate_op(a).mat, a.mat);
  f.undirected_residual = rel_residual(a.mat - adjoint(a).mat, a.mat);
  f.loop_residual = rel_residual(schur_product(a, id).mat, a.mat);
  f.schur_idempotent = f.schur_residual <= tol;
  f.real = f.real_residual <= tol;
  f.undirected = f.undirected_residual <= tol;
  f.loopless = f.loop_residual <= tol;
  DegreeInfo d = degree_operators(a, tol);
  f.regular = d.is_regular;
  f.degree = d.degree;
  f.regular_residual = d.residual;
  return f;
}

QuantumGraph make_quantum_graph(const LinOp& a, double tol) {
  return QuantumGraph{a.domain, a, verify_quantum_graph(a, tol)};
}

namespace {
LinOp left_mult_op(QSetPtr space, const Vec& v) {
  const QSet& x = *space;
  Mat m(x.dim(), x.dim());
  for (int c = 0; c < x.dim(); ++c) {
    Vec e = Vec::Zero(x.dim());
    e[c] = 1.0;
    m.col(c) = x.product(v, e);
  }
  return LinOp(space, space, std::move(m));
}
}  // namespace

DegreeInfo degree_operators(const LinOp& a, double tol) {
  if (!a.is_endo()) throw input_error("degree_operators: endomorphism required");
  const QSet& x = *a.domain;
  Vec eta = x.unit_vector();
  DegreeInfo d;
  d.in_degree = left_mult_op(a.domain, a.apply(eta));
  d.out_degree = left_mult_op(a.domain, adjoint(a).apply(eta));
  // d-regular iff A eta = A* eta = d eta.
  Cplx deg = x.inner(eta, a.apply(eta)) / x.inner(eta, eta);
  double r1 = x.norm(a.apply(eta) - deg * eta);
  double r2 = x.norm(adjoint(a).apply(eta) - deg * eta);
  d.degree = deg;
  d.residual = std::max(r1, r2) / std::max(1.0, x.norm(a.apply(eta)));
  d.is_regular = d.residual <= tol;
  return d;
}

std::vector<SpectralProjection> spectral_projections(const LinOp& nop,
                                                     double cluster_tol,
                                                     double tol) {
  if (!nop.is_endo())
    throw input_error("spectral_projections: endomorphism required");
  const QSet& x = *nop.domain;
  // Orthonormalize the basis: Atilde = W^{1/2} A W^{-1/2}.
  Eigen::VectorXd ws = x.weights().cwiseSqrt();
  Mat at = ws.asDiagonal() * nop.mat * ws.cwiseInverse().asDiagonal();
  double nrm = rel_residual(at * at.adjoint() - at.adjoint() * at, at);
  if (nrm > std::max(tol, 1e-8))
    throw input_error("spectral_projections: operator is not normal, residual " +
                      std::to_string(nrm));
  Eigen::ComplexEigenSolver<Mat> es(at);
  Vec evs = es.eigenvalues();
  Mat vecs = es.eigenvectors();

  const int d = x.dim();
  // Union-find clustering on |lambda_i - lambda_j| <= cluster_tol.
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(evs[i] - evs[j]) <= cluster_tol) parent[find(i)] = find(j);

  std::vector<std::vector<int>> clusters;
  std::unordered_map<int, int> root_to_cluster;
  for (int i = 0; i < d; ++i) {
    int r = find(i);
    auto it = root_to_cluster.find(r);
    if (it == root_to_cluster.end()) {
      root_to_cluster[r] = static_cast<int>(clusters.size());
      clusters.push_back({i});
    } else {
      clusters[it->second].push_back(i);
    }
  }

  std::vector<SpectralProjection> out;
  for (const auto& cl : clusters) {
    Mat cols(d, cl.size());
    Cplx mean = 0.0;
    for (size_t c = 0; c < cl.size(); ++c) {
      cols.col(c) = vecs.col(cl[c]);
      mean += evs[cl[c]];
    }
    mean /= static_cast<double>(cl.size());
    // Orthonormalize within the cluster (eigenvectors of a normal matrix
    // across clusters are already orthogonal).
    Eigen::HouseholderQR<Mat> qr(cols);
    Mat q = qr.householderQ() * Mat::Identity(d, cols.cols());
    Mat pt = q * q.adjoint();
    Mat p = ws.cwiseInverse().asDiagonal() * pt * ws.asDiagonal();
    out.push_back({mean, LinOp(nop.domain, nop.domain, std::move(p)),
                   static_cast<int>(cl.size())});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (std::real(a.eigenvalue) != std::real(b.eigenvalue))
      return std::real(a.eigenvalue) < std::real(b.eigenvalue);
    return std::imag(a.eigenvalue) < std::imag(b.eigenvalue);
  });
  return out;
}

}  // namespace qfrucht
