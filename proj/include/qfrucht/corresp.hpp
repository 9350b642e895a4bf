#pragma once

#include <cstdint>

#include "qfrucht/qgroup.hpp"

namespace qfrucht {

/// A finite list of simple tensors a_i ⊗ b_i.
using TensorList = std::vector<std::pair<Vec, Vec>>;

/// Edge inner product of the correspondence of a quantum adjacency A:
/// <a⊗b, c⊗d> = b* A(a* c) d, an element of the algebra.
Vec edge_inner_product(const LinOp& a, const Vec& va, const Vec& vb,
                       const Vec& vc, const Vec& vd);

/// Sesquilinear extension to tensor lists.
Vec edge_inner_product(const LinOp& a, const TensorList& xi,
                       const TensorList& eta);

/// Inner product on the compressed bimodule: <xi|eta> = (psi ⊗ id)(xi* eta),
/// xi and eta given as coefficient vectors on space ⊗ space.
Vec vergnioux_inner_product(const QGroupData& q, const Vec& xi, const Vec& eta);

/// Phi(a⊗b) = Delta(a)(1⊗b)(P_S⊗1), as a vector on space ⊗ space.
Vec phi(const QGroupData& q, const Vec& ps, const Vec& a, const Vec& b);

struct IsometryReport {
  double max_deviation = 0.0;
  bool pass = false;
  int samples = 0;
  bool subset_symmetric = false;   // closed under conjugates
  bool subset_generating = false;  // tensor powers reach every irrep
  int phi_rank = 0;                // rank of Phi on the basis grid
  int expected_rank = 0;           // dim(P_S l2) * dim(l2)
};

/// Checks <Phi(xi), Phi(xi)>_K = <xi, xi>_{E_A} on random tensor lists for
/// the central projection of the given irrep subset, and reports whether the
/// subset satisfies the symmetry/generation hypotheses (reported, not
/// enforced).
IsometryReport isometry_check(const QGroupData& dual,
                              const std::vector<int>& irrep_subset,
                              int samples = 50, std::uint64_t seed = 0,
                              double tol = 1e-9);

}  // namespace qfrucht
