#include "qfrucht/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace qfrucht {

namespace {

using RepMats = std::vector<Mat>;

Mat random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = Cplx(gauss(rng), gauss(rng));
  return 0.5 * (h + h.adjoint()).eval();
}

Vec character_of(const RepMats& rep) {
  Vec chi(static_cast<Eigen::Index>(rep.size()));
  for (size_t g = 0; g < rep.size(); ++g) chi[static_cast<Eigen::Index>(g)] = rep[g].trace();
  return chi;
}

bool is_irreducible(const RepMats& rep, double tol) {
  double s = 0.0;
  for (const Mat& m : rep) s += std::norm(m.trace());
  return std::abs(s / static_cast<double>(rep.size()) - 1.0) <= tol;
}

// Recursively split a unitary representation along eigenspaces of a random
// equivariant average.  Appends irreducible pieces to `out`.
void split_rep(const RepMats& rep, std::mt19937_64& rng, std::vector<RepMats>& out,
               int depth) {
  const int d = static_cast<int>(rep[0].rows());
  if (d == 1 || is_irreducible(rep, 1e-6)) {
    out.push_back(rep);
    return;
  }
  if (depth > 32) throw input_error("decompose_regular: recursion depth exceeded");
  const double n = static_cast<double>(rep.size());
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat h = random_hermitian(d, rng);
    Mat avg = Mat::Zero(d, d);
    for (const Mat& u : rep) avg += u * h * u.adjoint();
    avg /= n;
    avg = 0.5 * (avg + avg.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(avg);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, std::max(std::abs(ev[0]), std::abs(ev[d - 1])));
    // Conservative clustering: a wrong merge is re-split on recursion, a
    // wrong split would be fatal.
    const double gap_tol = 1e-8 * scale;
    std::vector<std::pair<int, int>> ranges;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || ev[i] - ev[i - 1] > gap_tol) {
        ranges.emplace_back(begin, i);
        begin = i;
      }
    }
    if (ranges.size() < 2) continue;  // averaging degenerate, redraw
    for (const auto& [b, e] : ranges) {
      Mat q = es.eigenvectors().middleCols(b, e - b);
      RepMats sub(rep.size());
      for (size_t g = 0; g < rep.size(); ++g) sub[g] = q.adjoint() * rep[g] * q;
      split_rep(sub, rng, out, depth + 1);
    }
    return;
  }
  throw input_error("decompose_regular: failed to split a reducible piece");
}

bool char_less(const Vec& a, const Vec& b, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::real(a[i]) < std::real(b[i]) - tol) return true;
    if (std::real(a[i]) > std::real(b[i]) + tol) return false;
    if (std::imag(a[i]) < std::imag(b[i]) - tol) return true;
    if (std::imag(a[i]) > std::imag(b[i]) + tol) return false;
  }
  return false;
}

std::vector<Irrep> try_decompose(const FiniteGroup& g, std::uint64_t seed) {
  const int n = g.order;
  std::mt19937_64 rng(seed);
  RepMats reg(n);
  for (int a = 0; a < n; ++a) {
    Mat r = Mat::Zero(n, n);
    for (int h = 0; h < n; ++h) r(g.multiply(a, h), h) = 1.0;
    reg[a] = std::move(r);
  }
  std::vector<RepMats> pieces;
  split_rep(reg, rng, pieces, 0);

  std::vector<Irrep> irreps;
  for (const RepMats& p : pieces) {
    Vec chi = character_of(p);
    bool dup = false;
    for (const Irrep& known : irreps)
      if ((known.character - chi).norm() <= 1e-6) {
        dup = true;
        break;
      }
    if (!dup)
      irreps.push_back(
          {static_cast<int>(p[0].rows()), p, std::move(chi)});
  }
  std::sort(irreps.begin(), irreps.end(), [](const Irrep& a, const Irrep& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    // Descending lexicographic characters, so the trivial representation
    // always leads the one-dimensional block.
    return char_less(b.character, a.character, 1e-7);
  });

  int sq = 0;
  for (const Irrep& ir : irreps) sq += ir.dim * ir.dim;
  if (sq != n) throw input_error("decompose_regular: incomplete irrep set");
  int trivial = 0;
  for (const Irrep& ir : irreps)
    if (ir.dim == 1 && (ir.character - Vec::Ones(n)).norm() <= 1e-6) ++trivial;
  if (trivial != 1)
    throw input_error("decompose_regular: trivial representation count != 1");
  for (const Irrep& ir : irreps) {
    for (int a = 0; a < n; ++a) {
      if ((ir.matrices[a] * ir.matrices[a].adjoint() -
           Mat::Identity(ir.dim, ir.dim))
              .norm() > 1e-8)
        throw input_error("decompose_regular: non-unitary irrep matrix");
      for (int b = 0; b < n; ++b)
        if ((ir.matrices[a] * ir.matrices[b] - ir.matrices[g.multiply(a, b)])
                .norm() > 1e-8)
          throw input_error("decompose_regular: homomorphism residual too large");
    }
  }
  if (schur_orthogonality_residual(g, irreps) > 1e-8)
    throw input_error("decompose_regular: Schur orthogonality failed");
  return irreps;
}

}  // namespace

std::vector<Irrep> decompose_regular(const FiniteGroup& g, std::uint64_t seed,
                                     double /*tol*/, int max_retries) {
  std::string last;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
    try {
      return try_decompose(g, s);
    } catch (const input_error& e) {
      last = e.what();
    }
  }
  throw input_error("decompose_regular: all retries failed, last error: " + last);
}

Vec matrix_coefficient(const Irrep& pi, int i, int j) {
  Vec v(static_cast<Eigen::Index>(pi.matrices.size()));
  for (size_t gidx = 0; gidx < pi.matrices.size(); ++gidx)
    v[static_cast<Eigen::Index>(gidx)] = pi.matrices[gidx](i, j);
  return v;
}

double schur_orthogonality_residual(const FiniteGroup& g,
                                    const std::vector<Irrep>& irreps) {
  const double n = g.order;
  double worst = 0.0;
  for (size_t p = 0; p < irreps.size(); ++p)
    for (size_t q = p; q < irreps.size(); ++q)
      for (int i = 0; i < irreps[p].dim; ++i)
        for (int j = 0; j < irreps[p].dim; ++j)
          for (int k = 0; k < irreps[q].dim; ++k)
            for (int l = 0; l < irreps[q].dim; ++l) {
              Cplx s = 0.0;
              for (int a = 0; a < g.order; ++a)
                s += irreps[p].matrices[a](i, j) *
                     std::conj(irreps[q].matrices[a](k, l));
              s /= n;
              Cplx expect =
                  (p == q && i == k && j == l) ? Cplx(1.0 / irreps[p].dim) : Cplx(0.0);
              worst = std::max(worst, std::abs(s - expect));
            }
  return worst;
}

std::vector<int> tensor_multiplicities(const FiniteGroup& g,
                                       const std::vector<Irrep>& irreps,
                                       int beta, int gamma) {
  std::vector<int> mult(irreps.size(), 0);
  for (size_t a = 0; a < irreps.size(); ++a) {
    Cplx s = 0.0;
    for (int x = 0; x < g.order; ++x)
      s += std::conj(irreps[a].character[x]) * irreps[beta].character[x] *
           irreps[gamma].character[x];
    double m = std::real(s) / g.order;
    long r = std::lround(m);
    if (std::abs(m - r) > 1e-6 || std::abs(std::imag(s)) / g.order > 1e-6)
      throw input_error("tensor_multiplicities: non-integer multiplicity");
    mult[a] = static_cast<int>(r);
  }
  return mult;
}

std::vector<IntertwinerSet> tensor_decompose(const FiniteGroup& g,
                                             const std::vector<Irrep>& irreps,
                                             int beta, int gamma, double tol) {
  std::vector<int> mult = tensor_multiplicities(g, irreps, beta, gamma);
  const int nb = irreps[beta].dim, ng = irreps[gamma].dim;
  std::vector<IntertwinerSet> out;
  int dim_check = 0;
  for (size_t a = 0; a < irreps.size(); ++a) {
    if (mult[a] == 0) continue;
    const int na = irreps[a].dim;
    const int nv = nb * ng * na;
    // Normal equations of the stacked equivariance system
    // (beta⊗gamma)(x) V - V alpha(x) = 0 over all x, unknown vec(V).
    Mat gram = Mat::Zero(nv, nv);
    Mat ia = Mat::Identity(na, na), ibg = Mat::Identity(nb * ng, nb * ng);
    for (int x = 0; x < g.order; ++x) {
      Mat c = Eigen::kroneckerProduct(irreps[beta].matrices[x],
                                      irreps[gamma].matrices[x]);
      Mat d = Eigen::kroneckerProduct(ia, c) -
              Eigen::kroneckerProduct(irreps[a].matrices[x].transpose(), ibg);
      gram += d.adjoint() * d;
    }
    gram = 0.5 * (gram + gram.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    const Eigen::VectorXd ev = es.eigenvalues();
    // The Gram eigenvalues are squared residuals; null directions sit at
    // machine precision relative to the largest eigenvalue.
    double thresh = 1e-10 * std::max(ev[nv - 1], 1.0);
    std::vector<Mat> basis;
    for (int i = 0; i < nv; ++i) {
      if (ev[i] > thresh) continue;
      Mat w(nb * ng, na);
      for (int col = 0; col < na; ++col)
        w.col(col) = es.eigenvectors().col(i).segment(
            static_cast<Eigen::Index>(col) * nb * ng, nb * ng);
      basis.push_back(std::move(w));
    }
    if (static_cast<int>(basis.size()) != mult[a])
      throw input_error(
          "tensor_decompose: intertwiner space dimension mismatch");
    // By Schur's lemma W_i* W_j is scalar; orthonormalize via the scalar Gram.
    const int m = mult[a];
    Mat gram_s(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        gram_s(i, j) = (basis[i].adjoint() * basis[j]).trace() / static_cast<double>(na);
    Eigen::LLT<Mat> llt(gram_s);
    if (llt.info() != Eigen::Success)
      throw input_error("tensor_decompose: intertwiner Gram not positive");
    Mat xinv = llt.matrixL()
                   .adjoint()
                   .toDenseMatrix()
                   .inverse();  // (L^H)^{-1}, m x m
    IntertwinerSet set;
    set.alpha = static_cast<int>(a);
    set.multiplicity = m;
    for (int k = 0; k < m; ++k) {
      Mat v = Mat::Zero(nb * ng, na);
      for (int i = 0; i < m; ++i) v += basis[i] * xinv(i, k);
      set.isometries.push_back(std::move(v));
    }
    // Sanity: isometry and equivariance residuals.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Mat expect = (i == j) ? Mat(Mat::Identity(na, na)) : Mat(Mat::Zero(na, na));
        if ((set.isometries[i].adjoint() * set.isometries[j] - expect).norm() >
            std::max(tol, 1e-7))
          throw input_error("tensor_decompose: isometry residual too large");
      }
    out.push_back(std::move(set));
    dim_check += m * na;
  }
  if (dim_check != nb * ng)
    throw input_error("tensor_decompose: dimension bookkeeping failed");
  return out;
}

std::vector<CoeffTerm> coefficient_product_expand(
    const FiniteGroup& g, const std::vector<Irrep>& irreps, int beta, int b,
    int bp, int gamma, int c, int cp, double tol) {
  std::vector<IntertwinerSet> dec = tensor_decompose(g, irreps, beta, gamma, tol);
  const int ng = irreps[gamma].dim;
  std::vector<CoeffTerm> terms;
  for (const IntertwinerSet& set : dec) {
    const int na = irreps[set.alpha].dim;
    for (int a = 0; a < na; ++a)
      for (int ap = 0; ap < na; ++ap) {
        Cplx coeff = 0.0;
        for (const Mat& v : set.isometries)
          coeff += v(b * ng + c, a) * std::conj(v(bp * ng + cp, ap));
        if (std::abs(coeff) > 1e-14)
          terms.push_back({set.alpha, a, ap, coeff});
      }
  }
  return terms;
}

std::vector<int> irrep_kernel(const Irrep& pi, double tol) {
  std::vector<int> ker;
  Mat id = Mat::Identity(pi.dim, pi.dim);
  for (size_t a = 0; a < pi.matrices.size(); ++a)
    if ((pi.matrices[a] - id).norm() <= tol * pi.dim)
      ker.push_back(static_cast<int>(a));
  return ker;
}

}  // namespace qfrucht
