#include "qfrucht/qgroup.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace qfrucht {

namespace {

// Inverse of the Fourier matrix (columns lambda_g): row g is <lambda_g, .>/N.
Mat fourier_inverse(const QGroupData& q) {
  const double n = static_cast<double>(q.group->order);
  return (1.0 / n) * q.lambda.adjoint() * q.space->weights().asDiagonal();
}

}  // namespace

QGroupData dual_group(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
  int sq = 0;
  for (const Irrep& ir : irreps) sq += ir.dim * ir.dim;
  if (sq != g.order)
    throw input_error("dual_group: incomplete irrep set (sum of squares " +
                      std::to_string(sq) + " != " + std::to_string(g.order) + ")");
  QGroupData q;
  q.provenance = "dual_of_group";
  q.group = std::make_shared<const FiniteGroup>(g);
  q.irreps = std::make_shared<const std::vector<Irrep>>(irreps);
  // Blocks sorted by descending irrep dimension (stable).
  std::vector<int> order(irreps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return irreps[a].dim > irreps[b].dim;
  });
  q.block_irrep = order;
  std::vector<int> blocks;
  for (int idx : order) blocks.push_back(irreps[idx].dim);
  auto space = std::make_shared<const QSet>(blocks);
  q.space = space;

  const int n = g.order;
  q.lambda = Mat(n, n);
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < n; ++k) {
      const QSet::Unit& u = space->unit(k);
      q.lambda(k, x) = irreps[order[u.block]].matrices[x](u.row, u.col);
    }
  Mat finv = fourier_inverse(q);

  Mat lam2(static_cast<Eigen::Index>(n) * n, n);
  for (int x = 0; x < n; ++x)
    lam2.col(x) =
        Eigen::kroneckerProduct(q.lambda.col(x), q.lambda.col(x)).eval();
  q.delta = lam2 * finv;
  q.counit = finv.transpose() * Vec::Ones(n);
  Mat pinv = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x) pinv(g.inverse(x), x) = 1.0;
  q.antipode = q.lambda * pinv * finv;
  return q;
}

QGroupData function_algebra(const FiniteGroup& g) {
  QGroupData q;
  q.provenance = "function_algebra";
  q.group = std::make_shared<const FiniteGroup>(g);
  const int n = g.order;
  q.space = std::make_shared<const QSet>(QSet::classical(n));
  q.delta = Mat::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      q.delta(static_cast<Eigen::Index>(a) * n + b, g.multiply(a, b)) = 1.0;
  q.counit = Vec::Zero(n);
  q.counit[0] = 1.0;
  q.antipode = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) q.antipode(g.inverse(a), a) = 1.0;
  return q;
}

double HopfReport::max_residual() const {
  return std::max({hom_residual, coassoc_residual, counit_residual,
                   antipode_residual, haar_residual});
}

HopfReport verify_hopf(const QGroupData& q, double /*tol*/) {
  const QSet& x = *q.space;
  const int d = x.dim();
  auto tensor = std::make_shared<const QSet>(QSet::tensor(x, x));
  HopfReport r;
  const double scale = std::max(1.0, q.delta.norm());

  // Delta is a unital *-homomorphism.
  {
    Vec eta = x.unit_vector();
    Vec eta_t = tensor->unit_vector();
    r.hom_residual = (q.delta * eta - eta_t).norm() / scale;
    for (int a = 0; a < d; ++a) {
      Vec da = q.delta.col(a);
      Vec star_lhs = q.delta * x.star(Vec::Unit(d, a));
      r.hom_residual =
          std::max(r.hom_residual, (star_lhs - tensor->star(da)).norm() / scale);
      for (int b = 0; b < d; ++b) {
        Vec prod = x.product(Vec::Unit(d, a), Vec::Unit(d, b));
        Vec lhs = q.delta * prod;
        Vec rhs = tensor->product(da, q.delta.col(b));
        r.hom_residual = std::max(r.hom_residual, (lhs - rhs).norm() / scale);
      }
    }
  }

  // Coassociativity, counit, antipode and Haar laws, column by column.
  Vec eta = x.unit_vector();
  Vec weights_psi(d);
  for (int i = 0; i < d; ++i) weights_psi[i] = x.psi(Vec::Unit(d, i));
  for (int a = 0; a < d; ++a) {
    Mat m(d, d);  // Delta e_a = sum_ij m(i,j) e_i ⊗ e_j
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m(i, j) = q.delta(static_cast<Eigen::Index>(i) * d + j, a);

    // (Delta⊗id) vs (id⊗Delta), evaluated without forming dim^3 matrices:
    // u[(p,q),j] = sum_i Delta[(p,q),i] m(i,j); v[i,(p,q)] = sum_j m(i,j) Delta[(p,q),j]
    Mat u = q.delta * m;              // (d^2) x d, index ((p,q), j)
    Mat v = m * q.delta.transpose();  // d x (d^2), index (i, (p,q))
    // As tensors over (i1,i2,i3): lhs = u(i1*d+i2, i3), rhs = v(i1, i2*d+i3).
    double diff = 0.0;
    for (int i1 = 0; i1 < d; ++i1)
      for (int i2 = 0; i2 < d; ++i2)
        for (int i3 = 0; i3 < d; ++i3)
          diff += std::norm(u(static_cast<Eigen::Index>(i1) * d + i2, i3) -
                            v(i1, static_cast<Eigen::Index>(i2) * d + i3));
    r.coassoc_residual =
        std::max(r.coassoc_residual, std::sqrt(diff) / scale);

    // Counit law: (eps⊗id)Delta = id = (id⊗eps)Delta.
    Vec left = m.transpose() * q.counit;   // sum_i eps(e_i) m(i,:)
    Vec right = m * q.counit;              // sum_j m(:,j) eps(e_j)
    Vec ea = Vec::Unit(d, a);
    r.counit_residual = std::max(
        {r.counit_residual, (left - ea).norm(), (right - ea).norm()});

    // Antipode law: m(S⊗id)Delta = eta eps = m(id⊗S)Delta.
    Vec anti_l = Vec::Zero(d), anti_r = Vec::Zero(d);
    for (int j = 0; j < d; ++j)
      anti_l += x.product(q.antipode * m.col(j), Vec::Unit(d, j));
    for (int i = 0; i < d; ++i)
      anti_r += x.product(Vec::Unit(d, i), q.antipode * m.row(i).transpose());
    Vec target = q.eps(ea) * eta;
    r.antipode_residual = std::max(
        {r.antipode_residual, (anti_l - target).norm(), (anti_r - target).norm()});

    // Haar bi-invariance: (psi⊗id)Delta = psi(.)1 = (id⊗psi)Delta.
    Vec haar_l = m.transpose() * weights_psi;
    Vec haar_r = m * weights_psi;
    Vec haar_target = x.psi(ea) * eta;
    double hscale = std::max(1.0, std::abs(x.psi(eta)));
    r.haar_residual = std::max({r.haar_residual,
                                (haar_l - haar_target).norm() / hscale,
                                (haar_r - haar_target).norm() / hscale});
  }
  return r;
}

Vec convolve(const QGroupData& q, const Vec& x, const Vec& y) {
  const QSet& s = *q.space;
  QSet tensor = QSet::tensor(s, s);
  Mat dstar = s.weights().cwiseInverse().asDiagonal() * q.delta.adjoint() *
              tensor.weights().asDiagonal();
  return dstar * Eigen::kroneckerProduct(x, y).eval();
}

LinOp convolution_operator(const QGroupData& q, const Vec& p) {
  const QSet& s = *q.space;
  const int d = s.dim();
  QSet tensor = QSet::tensor(s, s);
  Mat dstar = s.weights().cwiseInverse().asDiagonal() * q.delta.adjoint() *
              tensor.weights().asDiagonal();
  Mat a(d, d);
  for (int b = 0; b < d; ++b) {
    // Delta*(p ⊗ e_b): kron(p, e_b) picks columns i*d+b of Delta*.
    Vec col = Vec::Zero(d);
    for (int i = 0; i < d; ++i)
      col += p[i] * dstar.col(static_cast<Eigen::Index>(i) * d + b);
    a.col(b) = col;
  }
  return LinOp(q.space, q.space, std::move(a));
}

CayleyReport cayley_graph(const QGroupData& q, const Vec& p, double tol) {
  const QSet& s = *q.space;
  double pscale = std::max(1.0, p.norm());
  double idem = (s.product(p, p) - p).norm() / pscale;
  double star = (s.star(p) - p).norm() / pscale;
  if (idem > std::max(tol, 1e-8) || star > std::max(tol, 1e-8))
    throw input_error(
        "cayley_graph: input is not a projection (idempotency residual " +
        std::to_string(idem) + ", self-adjointness residual " +
        std::to_string(star) + ")");
  CayleyReport r;
  r.proj_idem_residual = idem;
  r.proj_star_residual = star;
  LinOp a = convolution_operator(q, p);
  r.graph = make_quantum_graph(a, tol);
  r.counit_value = q.eps(p);
  r.loopless_from_counit = std::abs(r.counit_value) <= std::max(tol, 1e-8);
  r.antipode_sym_residual = (q.antipode * p - p).norm() / pscale;
  bool sp_symmetric = r.antipode_sym_residual <= std::max(tol, 1e-8);
  r.convention_disagreement = sp_symmetric != r.graph.flags.undirected;
  return r;
}

Multiplier fourier_multiplier(const QGroupData& dual, const Vec& p) {
  if (dual.lambda.size() == 0)
    throw input_error("fourier_multiplier: requires a dual-of-group algebra");
  const int n = dual.group->order;
  Vec t = fourier_inverse(dual) * p;
  // Consistency: the convolution operator is diagonal on the lambda basis
  // with eigenvalues N*T(g).
  LinOp a = convolution_operator(dual, p);
  double scale = std::max(1.0, p.norm());
  for (int g = 0; g < n; ++g) {
    Vec lg = dual.lambda.col(g);
    if ((a.mat * lg - static_cast<double>(n) * t[g] * lg).norm() /
            (scale * lg.norm()) >
        1e-6)
      throw input_error(
          "fourier_multiplier: convolution operator not diagonal on the "
          "lambda basis");
  }
  return Multiplier{dual.group, std::move(t)};
}

std::vector<Mat> fourier_blocks(const QGroupData& dual, const Vec& x) {
  if (dual.lambda.size() == 0)
    throw input_error("fourier_blocks: requires a dual-of-group algebra");
  std::vector<Mat> blocks = dual.space->to_blocks(x);
  std::vector<Mat> per_irrep(dual.irreps->size());
  for (size_t b = 0; b < blocks.size(); ++b)
    per_irrep[dual.block_irrep[b]] = blocks[b];
  return per_irrep;
}

Vec inv_fourier_rank_one(const QGroupData& dual, int irrep_index, const Vec& xi,
                         const Vec& eta) {
  if (dual.lambda.size() == 0)
    throw input_error("inv_fourier_rank_one: requires a dual-of-group algebra");
  if (xi.norm() == 0.0 || eta.norm() == 0.0)
    throw input_error("inv_fourier_rank_one: zero vector");
  int block = -1;
  for (size_t b = 0; b < dual.block_irrep.size(); ++b)
    if (dual.block_irrep[b] == irrep_index) block = static_cast<int>(b);
  if (block < 0) throw input_error("inv_fourier_rank_one: bad irrep index");
  const int n = (*dual.irreps)[irrep_index].dim;
  if (xi.size() != n || eta.size() != n)
    throw input_error("inv_fourier_rank_one: vector size mismatch");
  std::vector<Mat> blocks(dual.space->blocks().size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    int nb = dual.space->blocks()[b];
    blocks[b] = Mat::Zero(nb, nb);
  }
  blocks[block] = xi * eta.adjoint();
  return dual.space->from_blocks(blocks);
}

Vec central_projection(const QGroupData& dual,
                       const std::vector<int>& irrep_subset) {
  if (dual.lambda.size() == 0)
    throw input_error("central_projection: requires a dual-of-group algebra");
  const int n = dual.group->order;
  Vec p = Vec::Zero(n);
  for (int idx : irrep_subset) {
    if (idx < 0 || idx >= static_cast<int>(dual.irreps->size()))
      throw input_error("central_projection: bad irrep index");
    const Irrep& ir = (*dual.irreps)[idx];
    for (int g = 0; g < n; ++g)
      p += (static_cast<double>(ir.dim) / n) * std::conj(ir.character[g]) *
           dual.lambda.col(g);
  }
  const QSet& s = *dual.space;
  if ((s.product(p, p) - p).norm() > 1e-8 * std::max(1.0, p.norm()))
    throw input_error("central_projection: idempotency check failed");
  for (int a = 0; a < s.dim(); ++a) {
    Vec ea = Vec::Unit(s.dim(), a);
    if ((s.product(p, ea) - s.product(ea, p)).norm() > 1e-8)
      throw input_error("central_projection: centrality check failed");
  }
  return p;
}

Vec lambda_element(const QGroupData& dual, int g) {
  if (dual.lambda.size() == 0)
    throw input_error("lambda_element: requires a dual-of-group algebra");
  return dual.lambda.col(g);
}

}  // namespace qfrucht
