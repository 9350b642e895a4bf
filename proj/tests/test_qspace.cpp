#include <doctest.h>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qfrucht/qset.hpp"
#include "test_helpers.hpp"

using namespace qfrucht;
using qfrucht::testing::random_mat;
using qfrucht::testing::random_vec;

namespace {

QSetPtr make_space(std::vector<int> blocks) {
  return std::make_shared<const QSet>(std::move(blocks));
}

LinOp random_op(QSetPtr s, std::mt19937_64& rng) {
  return LinOp(s, s, random_mat(s->dim(), s->dim(), rng));
}

// Weighted-inner-product adjoint residual: <A* x, y> - <x, A y>.
double adjoint_residual(const LinOp& a, std::mt19937_64& rng) {
  LinOp astar = adjoint(a);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    Vec x = random_vec(a.codomain->dim(), rng);
    Vec y = random_vec(a.domain->dim(), rng);
    Cplx lhs = a.codomain->inner(x, a.apply(y));
    Cplx rhs = a.domain->inner(astar.apply(x), y);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace

TEST_CASE("multi-matrix algebra basics") {
  QSetPtr s = make_space({2, 1, 3});
  CHECK(s->dim() == 4 + 1 + 9);
  CHECK_FALSE(s->is_classical());
  CHECK(make_space({1, 1, 1})->is_classical());

  // psi(1) = sum of squares of the block sizes.
  CHECK(std::abs(s->psi(s->unit_vector()) - Cplx(14.0)) < 1e-12);

  std::mt19937_64 rng(7);
  Vec x = random_vec(s->dim(), rng), y = random_vec(s->dim(), rng),
      z = random_vec(s->dim(), rng);

  SUBCASE("product is associative and unital") {
    CHECK((s->product(s->product(x, y), z) - s->product(x, s->product(y, z)))
              .norm() < 1e-10);
    CHECK((s->product(s->unit_vector(), x) - x).norm() < 1e-12);
    CHECK((s->product(x, s->unit_vector()) - x).norm() < 1e-12);
  }

  SUBCASE("involution") {
    CHECK((s->star(s->star(x)) - x).norm() < 1e-12);
    CHECK((s->star(s->product(x, y)) - s->product(s->star(y), s->star(x)))
              .norm() < 1e-10);
  }

  SUBCASE("inner product matches blockwise trace form") {
    std::vector<Mat> bx = s->to_blocks(x), by = s->to_blocks(y);
    Cplx expect = 0.0;
    for (size_t k = 0; k < bx.size(); ++k)
      expect += double(bx[k].rows()) * (bx[k].adjoint() * by[k]).trace();
    CHECK(std::abs(s->inner(x, y) - expect) < 1e-10);
  }

  SUBCASE("block round trip") {
    CHECK((s->from_blocks(s->to_blocks(x)) - x).norm() == 0.0);
  }
}

TEST_CASE("multiplication map and its adjoint") {
  for (auto blocks : {std::vector<int>{2, 1}, {3}, {1, 1, 2}}) {
    QSetPtr s = make_space(blocks);
    const int d = s->dim();
    Mat m = s->mult_matrix();
    Mat mstar = s->mult_adjoint_matrix();

    // The delta-form normalization: m m* = id.
    CHECK((m * mstar - Mat::Identity(d, d)).norm() < 1e-12);

    // m agrees with the algebra product on a basis grid.
    QSet t = QSet::tensor(*s, *s);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
      Vec x = random_vec(d, rng), y = random_vec(d, rng);
      CHECK((m * Eigen::kroneckerProduct(x, y).eval() - s->product(x, y))
                .norm() < 1e-10);
    }

    // m* is the adjoint in the weighted inner products.
    for (int trial = 0; trial < 5; ++trial) {
      Vec x = random_vec(d, rng);
      Vec u = random_vec(d * d, rng);
      Cplx lhs = t.inner(mstar * x, u);
      Cplx rhs = s->inner(x, m * u);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("Schur product against the dense oracle") {
  QSetPtr s = make_space({2, 1});
  std::mt19937_64 rng(3);
  Mat m = s->mult_matrix(), mstar = s->mult_adjoint_matrix();
  for (int trial = 0; trial < 5; ++trial) {
    LinOp a = random_op(s, rng), b = random_op(s, rng);
    Mat oracle = m * Eigen::kroneckerProduct(a.mat, b.mat) * mstar;
    CHECK((schur_product(a, b).mat - oracle).norm() < 1e-10);
  }
}

TEST_CASE("Schur product is associative with unit I") {
  QSetPtr s = make_space({2, 1, 2});
  std::mt19937_64 rng(5);
  LinOp a = random_op(s, rng), b = random_op(s, rng), c = random_op(s, rng);
  CHECK((schur_product(schur_product(a, b), c).mat -
         schur_product(a, schur_product(b, c)).mat)
            .norm() < 1e-8);
  // Rank-one eta eta* psi(.) acts as the Schur unit.
  Vec eta = s->unit_vector();
  Mat j(s->dim(), s->dim());
  for (int i = 0; i < s->dim(); ++i)
    j.col(i) = eta * s->psi(Vec::Unit(s->dim(), i));
  LinOp unit(s, s, j);
  CHECK((schur_product(unit, a).mat - a.mat).norm() < 1e-10);
}

TEST_CASE("conjugation and adjoints") {
  QSetPtr s = make_space({2, 2, 1});
  std::mt19937_64 rng(9);
  LinOp a = random_op(s, rng), b = random_op(s, rng);

  CHECK((conjugate_op(conjugate_op(a)).mat - a.mat).norm() < 1e-12);
  CHECK((conjugate_op(a * b).mat - (conjugate_op(a) * conjugate_op(b)).mat)
            .norm() < 1e-10);
  CHECK(adjoint_residual(a, rng) < 1e-9);
  // Conjugation is antimultiplicative for the Schur product (it is built
  // from the involution, which reverses algebra products).
  CHECK((conjugate_op(schur_product(a, b)).mat -
         schur_product(conjugate_op(b), conjugate_op(a)).mat)
            .norm() < 1e-8);
}

TEST_CASE("classical sets reduce to entrywise operations") {
  QSetPtr s = make_space({1, 1, 1, 1});
  std::mt19937_64 rng(13);
  LinOp a = random_op(s, rng), b = random_op(s, rng);
  CHECK((schur_product(a, b).mat - a.mat.cwiseProduct(b.mat)).norm() < 1e-12);
  CHECK((conjugate_op(a).mat - a.mat.conjugate()).norm() < 1e-12);
  CHECK((adjoint(a).mat - a.mat.adjoint()).norm() < 1e-12);
}

TEST_CASE("complete graph without loops") {
  for (auto blocks : {std::vector<int>{1, 1, 1}, {2, 1}}) {
    QSetPtr s = make_space(blocks);
    LinOp k = complete_graph_op(s);
    GraphFlags f = verify_quantum_graph(k);
    CHECK(f.schur_idempotent);
    CHECK(f.real);
    CHECK(f.undirected);
    CHECK(f.loopless);
    CHECK(f.regular);
    Cplx total = s->psi(s->unit_vector());
    CHECK(std::abs(f.degree - (total - Cplx(1.0))) < 1e-10);
  }
}

TEST_CASE("non-idempotent operators fail verification") {
  QSetPtr s = make_space({2, 1});
  std::mt19937_64 rng(17);
  LinOp a = random_op(s, rng);
  GraphFlags f = verify_quantum_graph(a);
  CHECK_FALSE(f.schur_idempotent);
  CHECK_FALSE(f.is_quantum_graph());
}

TEST_CASE("degree operators of the complete graph") {
  QSetPtr s = make_space({2, 1});
  LinOp k = complete_graph_op(s);
  DegreeInfo d = degree_operators(k);
  CHECK(d.is_regular);
  CHECK(std::abs(d.degree - Cplx(4.0)) < 1e-10);  // psi(1) - 1 = 5 - 1
  // Degree operators are left multiplication by A eta.
  std::mt19937_64 rng(19);
  Vec x = random_vec(s->dim(), rng);
  CHECK((d.in_degree.apply(x) - s->product(k.apply(s->unit_vector()), x))
            .norm() < 1e-10);
}

TEST_CASE("spectral projections of a normal operator") {
  QSetPtr s = make_space({2, 1, 1});
  std::mt19937_64 rng(23);
  LinOp a = random_op(s, rng);
  LinOp h = Cplx(0.5) * (a + adjoint(a));  // self-adjoint => normal
  auto projs = spectral_projections(h);

  Mat sum = Mat::Zero(s->dim(), s->dim());
  Mat recon = Mat::Zero(s->dim(), s->dim());
  int total_rank = 0;
  for (const auto& p : projs) {
    sum += p.projection.mat;
    recon += p.eigenvalue * p.projection.mat;
    total_rank += p.rank;
    // Idempotent and self-adjoint in the weighted inner product.
    CHECK((p.projection.mat * p.projection.mat - p.projection.mat).norm() <
          1e-8);
    CHECK((adjoint(p.projection).mat - p.projection.mat).norm() < 1e-8);
  }
  CHECK((sum - Mat::Identity(s->dim(), s->dim())).norm() < 1e-8);
  CHECK((recon - h.mat).norm() < 1e-7);
  CHECK(total_rank == s->dim());
  // Eigenvalues sorted by (re, im).
  for (size_t i = 1; i < projs.size(); ++i)
    CHECK(std::real(projs[i - 1].eigenvalue) <=
          std::real(projs[i].eigenvalue) + 1e-12);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(QSet({0}), input_error);
  CHECK_THROWS_AS(QSet({2, -1}), input_error);
  CHECK_THROWS_AS(QSet(std::vector<int>{}), input_error);
  QSetPtr a = make_space({2}), b = make_space({1, 1});
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(LinOp(a, a, random_mat(3, 3, rng)), input_error);
}
