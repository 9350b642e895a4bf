#pragma once

#include "qfrucht/irreps.hpp"
#include "qfrucht/qset.hpp"

namespace qfrucht {

/// A finite quantum group presented on a quantum set: comultiplication,
/// counit (as a plain linear functional eps(x) = counit^T x), and antipode.
/// For duals of classical groups the lambda matrix holds the coordinates of
/// the group elements lambda_g as columns, and the blocks of the quantum set
/// are the irreps sorted by descending dimension.
struct QGroupData {
  QSetPtr space;
  Mat delta;     // dim^2 x dim, codomain in Kronecker order on space ⊗ space
  Vec counit;    // functional coefficients
  Mat antipode;  // dim x dim
  std::string provenance;  // "dual_of_group" | "function_algebra" | "raw"

  std::shared_ptr<const FiniteGroup> group;          // set by both constructors
  std::shared_ptr<const std::vector<Irrep>> irreps;  // dual construction only
  std::vector<int> block_irrep;  // dual: block index -> irrep index
  Mat lambda;                    // dual: columns are lambda_g coordinates

  Cplx eps(const Vec& x) const { return counit.transpose() * x; }
};

QGroupData dual_group(const FiniteGroup& g, const std::vector<Irrep>& irreps);
QGroupData function_algebra(const FiniteGroup& g);

struct HopfReport {
  double hom_residual = 0.0;       // Delta multiplicative + unital + *-map
  double coassoc_residual = 0.0;
  double counit_residual = 0.0;
  double antipode_residual = 0.0;
  double haar_residual = 0.0;      // two-sided invariance of psi
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

HopfReport verify_hopf(const QGroupData& q, double tol = kDefaultTol);

/// Convolution x ⋆ y = Delta*(x ⊗ y), the adjoint taken in the weighted
/// inner products.
Vec convolve(const QGroupData& q, const Vec& x, const Vec& y);

/// The operator x -> p ⋆ x.
LinOp convolution_operator(const QGroupData& q, const Vec& p);

struct CayleyReport {
  QuantumGraph graph;
  double proj_idem_residual = 0.0;
  double proj_star_residual = 0.0;
  Cplx counit_value{0.0, 0.0};
  bool loopless_from_counit = false;
  double antipode_sym_residual = 0.0;  // |P - S(P)| / max(1, |P|)
  bool convention_disagreement = false;  // S(P)=P test vs A=A* test differ
};

/// Quantum Cayley graph of a projection p (algebra product and involution
/// define the projection property).  Throws input_error when p is not a
/// projection.
CayleyReport cayley_graph(const QGroupData& q, const Vec& p,
                          double tol = kDefaultTol);

/// Fourier symbol of an element of the dual group algebra: the coefficients
/// c_g with p = sum_g c_g lambda_g.
struct Multiplier {
  std::shared_ptr<const FiniteGroup> group;
  Vec values;  // T(g) per element index
};

Multiplier fourier_multiplier(const QGroupData& dual, const Vec& p);

/// Element of the dual whose block decomposition is |xi><eta| in the given
/// irrep and zero elsewhere.
Vec inv_fourier_rank_one(const QGroupData& dual, int irrep_index,
                         const Vec& xi, const Vec& eta);

/// Block decomposition (Fourier transform) of a dual element: per-irrep
/// matrices, indexed like `dual.irreps`.
std::vector<Mat> fourier_blocks(const QGroupData& dual, const Vec& x);

/// Central projection P_S = sum_{pi in S} (n_pi/N) sum_g conj(chi_pi(g)) lambda_g.
Vec central_projection(const QGroupData& dual,
                       const std::vector<int>& irrep_subset);

/// Coordinates of lambda_g.
Vec lambda_element(const QGroupData& dual, int g);

}  // namespace qfrucht
