#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

#include "qfrucht/irreps.hpp"
#include "test_helpers.hpp"

using namespace qfrucht;
using namespace qfrucht::testing;

TEST_CASE("multiplication table validation") {
  SUBCASE("repeated entry in a row") {
    CHECK_THROWS_AS(group_from_table({{0, 1}, {1, 1}}), input_error);
  }
  SUBCASE("identity must sit at index 0") {
    CHECK_THROWS_AS(group_from_table({{1, 0}, {0, 1}}), input_error);
  }
  SUBCASE("non-associative loop is rejected with a witness") {
    std::vector<std::vector<int>> loop = {{0, 1, 2, 3, 4},
                                          {1, 0, 3, 4, 2},
                                          {2, 3, 4, 0, 1},
                                          {3, 4, 1, 2, 0},
                                          {4, 2, 0, 1, 3}};
    CHECK_THROWS_AS(group_from_table(loop), input_error);
  }
  SUBCASE("valid cyclic group") {
    FiniteGroup z5 = cyclic_group(5);
    CHECK(z5.order == 5);
    CHECK(z5.is_abelian());
    CHECK(z5.inverse(2) == 3);
  }
}

TEST_CASE("closure of permutation generators") {
  CHECK(group_from_generators(3, {{1, 2, 0}}).order == 3);
  CHECK(group_from_generators(3, {{1, 0, 2}, {1, 2, 0}}).order == 6);
  CHECK(make_s4().order == 24);
  CHECK(make_a4().order == 12);
  CHECK(make_d4().order == 8);
  CHECK(make_a5().order == 60);

  // Independent closure oracle for A5.
  std::set<std::vector<int>> closure = {{0, 1, 2, 3, 4}};
  std::vector<std::vector<int>> gens = {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snapshot(closure.begin(), closure.end());
    for (const auto& p : snapshot)
      for (const auto& g : gens) {
        std::vector<int> pg(5);
        for (int i = 0; i < 5; ++i) pg[i] = p[g[i]];
        if (closure.insert(pg).second) grew = true;
      }
  }
  CHECK(closure.size() == 60);
}

TEST_CASE("structure reports") {
  StructureReport s3 = structure_report(symmetric_group_s3());
  CHECK(s3.center.size() == 1);
  CHECK(s3.conjugacy_classes.size() == 3);
  CHECK(s3.commutator_subgroup.size() == 3);
  CHECK_FALSE(s3.is_perfect);
  CHECK_FALSE(s3.is_abelian);

  CHECK(structure_report(make_a5()).is_perfect);
  CHECK_FALSE(structure_report(make_a4()).is_perfect);

  StructureReport z6 = structure_report(cyclic_group(6));
  CHECK(z6.is_abelian);
  CHECK(z6.center.size() == 6);
  CHECK_FALSE(z6.is_perfect);

  // Class indices agree with the class list.
  FiniteGroup g = make_q8();
  StructureReport q8 = structure_report(g);
  CHECK(q8.center.size() == 2);
  CHECK(q8.conjugacy_classes.size() == 5);
  std::vector<int> cls = conjugacy_class_of(g);
  for (size_t c = 0; c < q8.conjugacy_classes.size(); ++c)
    for (int e : q8.conjugacy_classes[c]) CHECK(cls[e] == static_cast<int>(c));
}

TEST_CASE("regular representation decomposition") {
  auto dims_of = [](const std::vector<Irrep>& irreps) {
    std::vector<int> d;
    for (const auto& ir : irreps) d.push_back(ir.dim);
    return d;
  };

  FiniteGroup s3 = symmetric_group_s3();
  auto irreps = decompose_regular(s3);
  CHECK(dims_of(irreps) == std::vector<int>{1, 1, 2});
  CHECK(schur_orthogonality_residual(s3, irreps) < 1e-8);

  CHECK(dims_of(decompose_regular(cyclic_group(4))) ==
        std::vector<int>{1, 1, 1, 1});

  FiniteGroup q8 = make_q8();
  auto q8_irreps = decompose_regular(q8);
  CHECK(dims_of(q8_irreps) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(schur_orthogonality_residual(q8, q8_irreps) < 1e-8);

  SUBCASE("characters are class functions") {
    std::vector<int> cls = conjugacy_class_of(s3);
    for (const auto& ir : irreps)
      for (int g = 0; g < s3.order; ++g)
        for (int h = 0; h < s3.order; ++h)
          if (cls[g] == cls[h])
            CHECK(std::abs(ir.character[g] - ir.character[h]) < 1e-9);
  }

  SUBCASE("content is seed independent") {
    auto other = decompose_regular(s3, 12345);
    REQUIRE(other.size() == irreps.size());
    for (size_t i = 0; i < irreps.size(); ++i)
      CHECK((irreps[i].character - other[i].character).norm() < 1e-7);
  }

  SUBCASE("homomorphism and unitarity") {
    std::mt19937_64 rng(2);
    for (const auto& ir : irreps) {
      for (int t = 0; t < 10; ++t) {
        int g = static_cast<int>(rng() % s3.order);
        int h = static_cast<int>(rng() % s3.order);
        CHECK((ir.matrices[g] * ir.matrices[h] -
               ir.matrices[s3.multiply(g, h)])
                  .norm() < 1e-8);
      }
      for (int g = 0; g < s3.order; ++g)
        CHECK((ir.matrices[g].adjoint() * ir.matrices[g] -
               Mat::Identity(ir.dim, ir.dim))
                  .norm() < 1e-8);
    }
  }
}

TEST_CASE("tensor product decomposition") {
  FiniteGroup s3 = symmetric_group_s3();
  auto irreps = decompose_regular(s3);
  REQUIRE(irreps.size() == 3);
  const int triv = 0, sign = 1, std_rep = 2;
  REQUIRE(irreps[std_rep].dim == 2);

  SUBCASE("multiplicities match character inner products") {
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        auto mult = tensor_multiplicities(s3, irreps, b, c);
        for (int a = 0; a < 3; ++a) {
          Cplx m = 0.0;
          for (int g = 0; g < 6; ++g)
            m += std::conj(irreps[a].character[g]) * irreps[b].character[g] *
                 irreps[c].character[g];
          CHECK(mult[a] == doctest::Approx(std::real(m) / 6.0));
        }
      }
  }

  SUBCASE("std (x) std = triv + sign + std") {
    auto sets = tensor_decompose(s3, irreps, std_rep, std_rep);
    REQUIRE(sets.size() == 3);
    int total = 0;
    for (const auto& set : sets) {
      CHECK(set.multiplicity == 1);
      total += set.multiplicity * irreps[set.alpha].dim;
      for (const Mat& v : set.isometries) {
        CHECK((v.adjoint() * v -
               Mat::Identity(irreps[set.alpha].dim, irreps[set.alpha].dim))
                  .norm() < 1e-8);
        for (int g = 0; g < 6; ++g) {
          Mat bg = Eigen::kroneckerProduct(irreps[std_rep].matrices[g],
                                           irreps[std_rep].matrices[g]);
          CHECK((bg * v - v * irreps[set.alpha].matrices[g]).norm() < 1e-8);
        }
      }
    }
    CHECK(total == 4);
  }

  SUBCASE("trivial factor is the canonical identification") {
    auto sets = tensor_decompose(s3, irreps, triv, std_rep);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].alpha == std_rep);
    CHECK(sets[0].multiplicity == 1);
  }
  (void)sign;
}

TEST_CASE("coefficient product expansion") {
  FiniteGroup s3 = symmetric_group_s3();
  auto irreps = decompose_regular(s3);
  const int std_rep = 2;

  SUBCASE("reconstruction is pointwise exact") {
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        auto terms =
            coefficient_product_expand(s3, irreps, std_rep, b, b, std_rep, c, c);
        Vec lhs = matrix_coefficient(irreps[std_rep], b, b)
                      .cwiseProduct(matrix_coefficient(irreps[std_rep], c, c));
        Vec rhs = Vec::Zero(6);
        for (const auto& t : terms)
          rhs += t.coeff * matrix_coefficient(irreps[t.alpha], t.a, t.ap);
        CHECK((lhs - rhs).norm() < 1e-9);
      }
  }

  SUBCASE("trivial times trivial") {
    auto terms = coefficient_product_expand(s3, irreps, 0, 0, 0, 0, 0, 0);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].alpha == 0);
    CHECK(std::abs(terms[0].coeff - Cplx(1.0)) < 1e-10);
  }

  SUBCASE("Parseval sum rule on diagonal terms") {
    auto terms =
        coefficient_product_expand(s3, irreps, std_rep, 0, 0, std_rep, 1, 1);
    double total = 0.0;
    for (const auto& t : terms)
      if (t.a == t.ap) total += std::real(t.coeff);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("irrep kernels") {
  FiniteGroup s3 = symmetric_group_s3();
  auto irreps = decompose_regular(s3);
  CHECK(irrep_kernel(irreps[0]).size() == 6);   // trivial
  CHECK(irrep_kernel(irreps[1]).size() == 3);   // sign: kernel A3
  CHECK(irrep_kernel(irreps[2]).size() == 1);   // faithful
}
