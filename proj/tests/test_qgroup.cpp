#include <doctest.h>

#include <random>

#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

#include "qfrucht/qgroup.hpp"
#include "test_helpers.hpp"

using namespace qfrucht;
using namespace qfrucht::testing;

namespace {

QGroupData dual_of(const FiniteGroup& g) {
  return dual_group(g, decompose_regular(g));
}

// Random algebra projection: an orthogonal projection in each block.
Vec random_projection(const QSet& s, std::mt19937_64& rng) {
  std::vector<Mat> blocks;
  for (int n : s.blocks()) {
    int k = static_cast<int>(rng() % (n + 1));
    Mat q = Eigen::HouseholderQR<Mat>(random_mat(n, n, rng)).householderQ();
    blocks.push_back(q.leftCols(k) * q.leftCols(k).adjoint());
  }
  return s.from_blocks(blocks);
}

}  // namespace

TEST_CASE("dual of Z2") {
  FiniteGroup z2 = cyclic_group(2);
  QGroupData q = dual_of(z2);
  CHECK(q.space->blocks() == std::vector<int>{1, 1});
  Vec le = lambda_element(q, 0), ls = lambda_element(q, 1);
  CHECK(std::abs(q.space->psi(le) - Cplx(2.0)) < 1e-12);
  CHECK(std::abs(q.space->inner(le, ls)) < 1e-12);
  CHECK(std::abs(q.space->inner(ls, ls) - Cplx(2.0)) < 1e-12);
}

TEST_CASE("group-element relations in the dual") {
  FiniteGroup s3 = symmetric_group_s3();
  QGroupData q = dual_of(s3);
  CHECK(q.space->blocks() == std::vector<int>{2, 1, 1});

  for (int g = 0; g < 6; ++g) {
    Vec lg = lambda_element(q, g);
    // counit, antipode, Haar weight on the group-like basis.
    CHECK(std::abs(q.eps(lg) - Cplx(1.0)) < 1e-10);
    CHECK((q.antipode * lg - lambda_element(q, s3.inverse(g))).norm() < 1e-10);
    Cplx haar = q.space->psi(lg);
    CHECK(std::abs(haar - (g == 0 ? Cplx(6.0) : Cplx(0.0))) < 1e-10);
    // Delta lambda_g = lambda_g (x) lambda_g.
    CHECK((q.delta * lg - Eigen::kroneckerProduct(lg, lg).eval()).norm() <
          1e-10);
    // lambda_g lambda_h = lambda_{gh} in the algebra.
    for (int h = 0; h < 6; ++h)
      CHECK((q.space->product(lg, lambda_element(q, h)) -
             lambda_element(q, s3.multiply(g, h)))
                .norm() < 1e-10);
  }

  SUBCASE("cocommutativity") {
    const int d = q.space->dim();
    std::mt19937_64 rng(4);
    Vec x = random_vec(d, rng);
    Vec dx = q.delta * x;
    Vec flipped(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        flipped[static_cast<Eigen::Index>(j) * d + i] =
            dx[static_cast<Eigen::Index>(i) * d + j];
    CHECK((dx - flipped).norm() < 1e-10);
  }
}

TEST_CASE("Hopf axioms") {
  SUBCASE("dual of S3") {
    HopfReport r = verify_hopf(dual_of(symmetric_group_s3()));
    CHECK(r.max_residual() < 1e-10);
  }
  SUBCASE("function algebra of Z4") {
    HopfReport r = verify_hopf(function_algebra(cyclic_group(4)));
    CHECK(r.max_residual() < 1e-10);
  }
  SUBCASE("duals and function algebras up to order 24") {
    for (const FiniteGroup& g :
         {cyclic_group(2), make_d4(), make_q8(), make_a4(), make_s4()}) {
      CHECK(verify_hopf(dual_of(g)).max_residual() < 1e-10);
      CHECK(verify_hopf(function_algebra(g)).max_residual() < 1e-10);
    }
  }
  SUBCASE("a corrupted coproduct fails coassociativity") {
    QGroupData q = dual_of(cyclic_group(3));
    q.delta(0, 0) += 0.1;
    HopfReport r = verify_hopf(q);
    CHECK(r.coassoc_residual > 1e-3);
  }
}

TEST_CASE("convolution") {
  SUBCASE("lambda_g * lambda_h = N delta_gh lambda_g") {
    FiniteGroup s3 = symmetric_group_s3();
    QGroupData q = dual_of(s3);
    for (int g = 0; g < 6; ++g)
      for (int h = 0; h < 6; ++h) {
        Vec expect = (g == h) ? (Cplx(6.0) * lambda_element(q, g)).eval()
                              : Vec::Zero(q.space->dim()).eval();
        CHECK((convolve(q, lambda_element(q, g), lambda_element(q, h)) -
               expect)
                  .norm() < 1e-9);
      }
  }
  SUBCASE("point masses on the function algebra") {
    FiniteGroup z3 = cyclic_group(3);
    QGroupData q = function_algebra(z3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Vec conv = convolve(q, Vec::Unit(3, a), Vec::Unit(3, b));
        // Supported exactly on the product element.
        for (int c = 0; c < 3; ++c)
          if (c != z3.multiply(a, b)) CHECK(std::abs(conv[c]) < 1e-10);
      }
  }
  SUBCASE("convolution operator matches convolve") {
    QGroupData q = dual_of(make_d4());
    std::mt19937_64 rng(8);
    Vec p = random_vec(q.space->dim(), rng), x = random_vec(q.space->dim(), rng);
    CHECK((convolution_operator(q, p).apply(x) - convolve(q, p, x)).norm() <
          1e-9);
  }
}

TEST_CASE("quantum Cayley graphs") {
  SUBCASE("dual Z2 sign projection") {
    FiniteGroup z2 = cyclic_group(2);
    QGroupData q = dual_of(z2);
    Vec p = 0.5 * (lambda_element(q, 0) - lambda_element(q, 1));
    CayleyReport r = cayley_graph(q, p);
    CHECK(r.graph.flags.is_quantum_graph());
    CHECK(r.graph.flags.loopless);
    CHECK(std::abs(r.counit_value) < 1e-10);
    // A acts diagonally on the lambda basis with eigenvalues N*T(g).
    Multiplier t = fourier_multiplier(q, p);
    for (int g = 0; g < 2; ++g)
      CHECK((r.graph.adjacency.apply(lambda_element(q, g)) -
             Cplx(2.0) * t.values[g] * lambda_element(q, g))
                .norm() < 1e-9);
    CHECK(std::abs(t.values[0] - Cplx(0.5)) < 1e-10);
    CHECK(std::abs(t.values[1] - Cplx(-0.5)) < 1e-10);
  }
  SUBCASE("the counit-support projection has loops") {
    QGroupData q = dual_of(symmetric_group_s3());
    Vec peps = central_projection(q, {0});
    CayleyReport r = cayley_graph(q, peps);
    CHECK(std::abs(r.counit_value - Cplx(1.0)) < 1e-10);
    CHECK_FALSE(r.graph.flags.loopless);
    CHECK(r.graph.flags.schur_idempotent);
  }
  SUBCASE("P = 1 is a projection with loops") {
    QGroupData q = dual_of(cyclic_group(2));
    CayleyReport r = cayley_graph(q, q.space->unit_vector());
    CHECK(r.graph.flags.schur_idempotent);
    CHECK_FALSE(r.graph.flags.loopless);
  }
  SUBCASE("non-projections are rejected") {
    QGroupData q = dual_of(cyclic_group(2));
    std::mt19937_64 rng(10);
    CHECK_THROWS_AS(cayley_graph(q, random_vec(q.space->dim(), rng)),
                    input_error);
  }
  SUBCASE("loopless iff the counit vanishes, over random projections") {
    QGroupData q = dual_of(symmetric_group_s3());
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
      Vec p = random_projection(*q.space, rng);
      CayleyReport r = cayley_graph(q, p);
      CHECK(r.graph.flags.is_quantum_graph());
      CHECK(r.graph.flags.loopless == (std::abs(r.counit_value) <= 1e-9));
      ++checked;
    }
    CHECK(checked == 50);
  }
  SUBCASE("antipode symmetry implies the undirected flag") {
    QGroupData q = dual_of(symmetric_group_s3());
    // Central projections are antipode invariant for real characters.
    Vec p = central_projection(q, {2});
    CayleyReport r = cayley_graph(q, p);
    CHECK(r.antipode_sym_residual < 1e-9);
    CHECK(r.graph.flags.undirected);
    CHECK_FALSE(r.convention_disagreement);
  }
}

TEST_CASE("Fourier calculus") {
  FiniteGroup s3 = symmetric_group_s3();
  QGroupData q = dual_of(s3);
  const auto& irreps = *q.irreps;

  SUBCASE("multiplier of a central projection is the scaled character") {
    for (int k = 0; k < 3; ++k) {
      Vec p = central_projection(q, {k});
      Multiplier t = fourier_multiplier(q, p);
      double n = irreps[k].dim;
      for (int g = 0; g < 6; ++g)
        CHECK(std::abs(t.values[g] -
                       n / 6.0 * std::conj(irreps[k].character[g])) < 1e-10);
    }
  }

  SUBCASE("multiplier coefficients reconstruct the element") {
    std::mt19937_64 rng(14);
    Vec x = random_vec(q.space->dim(), rng);
    Multiplier t = fourier_multiplier(q, x);
    CHECK((q.lambda * t.values - x).norm() < 1e-9);
  }

  SUBCASE("rank-one round trips") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
      int k = static_cast<int>(rng() % irreps.size());
      Vec xi = random_vec(irreps[k].dim, rng), eta = random_vec(irreps[k].dim, rng);
      Vec x = inv_fourier_rank_one(q, k, xi, eta);
      auto blocks = fourier_blocks(q, x);
      for (size_t j = 0; j < blocks.size(); ++j) {
        Mat expect = (static_cast<int>(j) == k)
                         ? Mat(xi * eta.adjoint())
                         : Mat(Mat::Zero(irreps[j].dim, irreps[j].dim));
        CHECK((blocks[j] - expect).norm() < 1e-9);
      }
    }
  }

  SUBCASE("trivial-block rank one is the Haar projection") {
    Vec one = Vec::Ones(1);
    Vec x = inv_fourier_rank_one(q, 0, one, one);
    Vec peps = Vec::Zero(q.space->dim());
    for (int g = 0; g < 6; ++g) peps += lambda_element(q, g) / 6.0;
    CHECK((x - peps).norm() < 1e-9);
  }

  SUBCASE("rank-ones from distinct irreps are psi-orthogonal") {
    std::mt19937_64 rng(18);
    Vec a = inv_fourier_rank_one(q, 1, Vec::Ones(1), Vec::Ones(1));
    Vec b = inv_fourier_rank_one(q, 2, random_vec(2, rng), random_vec(2, rng));
    CHECK(std::abs(q.space->inner(a, b)) < 1e-9);
  }

  SUBCASE("central projections") {
    Vec all = central_projection(q, {0, 1, 2});
    CHECK((all - q.space->unit_vector()).norm() < 1e-9);
    // S3 standard block: coefficients (2/6)(2,0,0,0,-1,-1).
    Vec p = central_projection(q, {2});
    Multiplier t = fourier_multiplier(q, p);
    Vec expect(6);
    expect << 2, 0, 0, 0, -1, -1;
    CHECK((t.values - (expect / 3.0)).norm() < 1e-10);
  }
}
