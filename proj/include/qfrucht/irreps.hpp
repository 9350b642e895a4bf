#pragma once

#include <cstdint>

#include "qfrucht/group.hpp"
#include "qfrucht/qset.hpp"

namespace qfrucht {

/// A unitary irreducible representation given by its matrices on every group
/// element (in element order) together with its character.
struct Irrep {
  int dim = 0;
  std::vector<Mat> matrices;
  Vec character;
};

/// Decompose the left regular representation into a complete set of unitary
/// irreducibles by randomized equivariant averaging: a random Hermitian
/// matrix is averaged over the representation, its eigenspaces split the
/// space, and the procedure recurses until every piece is irreducible.
/// Deterministic for a fixed seed; retries with derived seeds on failure.
std::vector<Irrep> decompose_regular(const FiniteGroup& g,
                                     std::uint64_t seed = 0,
                                     double tol = kDefaultTol,
                                     int max_retries = 8);

/// Multiplicities of each irrep in beta ⊗ gamma via character inner products.
std::vector<int> tensor_multiplicities(const FiniteGroup& g,
                                       const std::vector<Irrep>& irreps,
                                       int beta, int gamma);

/// All isometric intertwiners alpha -> beta ⊗ gamma for one alpha, columns of
/// each V orthonormal and V_i* V_j = delta_ij I.
struct IntertwinerSet {
  int alpha = 0;
  int multiplicity = 0;
  std::vector<Mat> isometries;  // each (n_beta*n_gamma) x n_alpha
};

/// Full tensor decomposition of beta ⊗ gamma: one IntertwinerSet per irrep
/// with nonzero multiplicity, in irrep order.
std::vector<IntertwinerSet> tensor_decompose(const FiniteGroup& g,
                                             const std::vector<Irrep>& irreps,
                                             int beta, int gamma,
                                             double tol = kDefaultTol);

/// One term of the matrix-coefficient product expansion
/// u^beta_{bb'} u^gamma_{cc'} = sum coeff * u^alpha_{aa'}.
struct CoeffTerm {
  int alpha;
  int a;
  int ap;
  Cplx coeff;
};

std::vector<CoeffTerm> coefficient_product_expand(
    const FiniteGroup& g, const std::vector<Irrep>& irreps, int beta, int b,
    int bp, int gamma, int c, int cp, double tol = kDefaultTol);

/// Matrix coefficient function g -> pi(g)_{ij} as a vector over elements.
Vec matrix_coefficient(const Irrep& pi, int i, int j);

/// Largest Schur-orthogonality residual over all coefficient pairs.
double schur_orthogonality_residual(const FiniteGroup& g,
                                    const std::vector<Irrep>& irreps);

/// Kernel of an irrep: elements represented by the identity matrix.
std::vector<int> irrep_kernel(const Irrep& pi, double tol = 1e-8);

}  // namespace qfrucht
