#include "qfrucht/corresp.hpp"

#include <algorithm>
#include <random>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace qfrucht {

Vec edge_inner_product(const LinOp& a, const Vec& va, const Vec& vb,
                       const Vec& vc, const Vec& vd) {
  const QSet& x = *a.domain;
  Vec inner = a.apply(x.product(x.star(va), vc));
  return x.product(x.product(x.star(vb), inner), vd);
}

Vec edge_inner_product(const LinOp& a, const TensorList& xi,
                       const TensorList& eta) {
  const QSet& x = *a.domain;
  Vec out = Vec::Zero(x.dim());
  for (const auto& [ai, bi] : xi)
    for (const auto& [cj, dj] : eta)
      out += edge_inner_product(a, ai, bi, cj, dj);
  return out;
}

Vec vergnioux_inner_product(const QGroupData& q, const Vec& xi,
                            const Vec& eta) {
  const QSet& s = *q.space;
  const int d = s.dim();
  QSet tensor = QSet::tensor(s, s);
  Vec z = tensor.product(tensor.star(xi), eta);
  Vec out = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    Cplx w = s.psi(Vec::Unit(d, i));
    if (w == Cplx(0.0)) continue;
    out += w * z.segment(static_cast<Eigen::Index>(i) * d, d);
  }
  return out;
}

Vec phi(const QGroupData& q, const Vec& ps, const Vec& a, const Vec& b) {
  const QSet& s = *q.space;
  QSet tensor = QSet::tensor(s, s);
  Vec eta = s.unit_vector();
  Vec t = q.delta * a;
  t = tensor.product(t, Eigen::kroneckerProduct(eta, b).eval());
  t = tensor.product(t, Eigen::kroneckerProduct(ps, eta).eval());
  return t;
}

namespace {

bool subset_symmetric(const QGroupData& dual, const std::vector<int>& subset) {
  const auto& irreps = *dual.irreps;
  for (int p : subset) {
    Vec conj_char = irreps[p].character.conjugate();
    int partner = -1;
    for (size_t r = 0; r < irreps.size(); ++r)
      if ((irreps[r].character - conj_char).norm() <= 1e-6)
        partner = static_cast<int>(r);
    if (partner < 0 ||
        std::find(subset.begin(), subset.end(), partner) == subset.end())
      return false;
  }
  return true;
}

bool subset_generating(const QGroupData& dual, const std::vector<int>& subset) {
  const auto& irreps = *dual.irreps;
  const FiniteGroup& g = *dual.group;
  std::vector<bool> reached(irreps.size(), false);
  for (size_t p = 0; p < irreps.size(); ++p)
    if (irreps[p].dim == 1 &&
        (irreps[p].character - Vec::Ones(g.order)).norm() <= 1e-6)
      reached[p] = true;  // trivial rep: the empty tensor product
  for (int p : subset) reached[p] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t b = 0; b < irreps.size(); ++b) {
      if (!reached[b]) continue;
      for (int c : subset) {
        std::vector<int> mult =
            tensor_multiplicities(g, irreps, static_cast<int>(b), c);
        for (size_t a = 0; a < irreps.size(); ++a)
          if (mult[a] > 0 && !reached[a]) {
            reached[a] = true;
            grew = true;
          }
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
}

}  // namespace

IsometryReport isometry_check(const QGroupData& dual,
                              const std::vector<int>& irrep_subset,
                              int samples, std::uint64_t seed, double tol) {
  if (dual.lambda.size() == 0)
    throw input_error("isometry_check: requires a dual-of-group algebra");
  const QSet& s = *dual.space;
  const int d = s.dim();
  Vec ps = irrep_subset.empty() ? Vec::Zero(d).eval()
                                : central_projection(dual, irrep_subset);
  LinOp a = convolution_operator(dual, ps);

  IsometryReport rep;
  rep.samples = samples;
  rep.subset_symmetric = subset_symmetric(dual, irrep_subset);
  rep.subset_generating = subset_generating(dual, irrep_subset);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_vec = [&]() {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
    return v;
  };
  for (int sample = 0; sample < samples; ++sample) {
    TensorList xi;
    for (int term = 0; term < 3; ++term)
      xi.emplace_back(random_vec(), random_vec());
    Vec rhs = edge_inner_product(a, xi, xi);
    Vec phixi = Vec::Zero(static_cast<Eigen::Index>(d) * d);
    for (const auto& [ai, bi] : xi) phixi += phi(dual, ps, ai, bi);
    Vec lhs = vergnioux_inner_product(dual, phixi, phixi);
    double dev = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  rep.pass = rep.max_deviation <= tol;

  // Surjectivity witness: rank of Phi on the basis grid.
  Mat grid(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      grid.col(static_cast<Eigen::Index>(i) * d + j) =
          phi(dual, ps, Vec::Unit(d, i), Vec::Unit(d, j));
  Eigen::JacobiSVD<Mat> svd(grid);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  rep.phi_rank = static_cast<int>(
      (svd.singularValues().array() > 1e-8 * std::max(1.0, smax)).count());
  int psdim = 0;
  for (int p : irrep_subset)
    psdim += (*dual.irreps)[p].dim * (*dual.irreps)[p].dim;
  rep.expected_rank = psdim * d;
  return rep;
}

}  // namespace qfrucht
