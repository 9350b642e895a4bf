#pragma once

#include <array>
#include <cstdint>

#include "qfrucht/qgroup.hpp"

namespace qfrucht {

struct LevelPartition {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<std::vector<int>> blocks;  // ordered by smallest member
  double tol = 0.0;
  Vec values;

  bool all_singletons() const;
  int block_of(int g) const;
};

/// Partition of the group by the values of T, closed transitively under
/// |T(g) - T(h)| <= tol * max(1, max|T|) via union-find.
LevelPartition level_partition(const Multiplier& t, double tol = 1e-7);

enum class Verdict { RIGID_INJECTIVE, RIGID_NONCENTRAL_SEPARATED, INCONCLUSIVE };
std::string to_string(Verdict v);

struct RigidityVerdict {
  Verdict verdict = Verdict::INCONCLUSIVE;
  LevelPartition partition;
  // Unordered pairs with a non-central member that the partition fails to
  // separate (empty for both rigid verdicts).
  std::vector<std::pair<int, int>> blocking_pairs;
};

RigidityVerdict rigidity_verdict(const FiniteGroup& g, const Multiplier& t,
                                 double tol = 1e-7);

struct SeparatingSearchResult {
  bool success = false;
  Vec xi;
  Vec values;  // g -> <xi, pi(g) xi>
  int trials_used = 0;
};

/// Random search for a vector whose matrix coefficient separates the group
/// elements.  When faithful_required is set, a non-faithful irrep is an
/// error naming the kernel.
SeparatingSearchResult separating_vector_search(const FiniteGroup& g,
                                                const Irrep& pi,
                                                bool faithful_required,
                                                std::uint64_t seed = 0,
                                                int trials = 100);

struct RigidSearchResult {
  Vec projection;
  Multiplier multiplier;
  RigidityVerdict verdict;
  int trials_used = 0;
};

/// Draws unit vectors in every irrep of dimension > 1, forms the block
/// projection P = ⊕ |xi_k><xi_k| (zero on character blocks), and keeps the
/// strongest verdict over up to `trials` seeds.  Abelian input is an error.
RigidSearchResult rigid_projection_search(const QGroupData& dual,
                                          std::uint64_t seed = 42,
                                          int trials = 100, int jobs = 1);

struct CentralObstructionReport {
  int subset_count = 0;
  // Conjugate pairs g != h that no central projection separates.
  std::vector<std::pair<int, int>> never_separated_pairs;
  double max_class_function_residual = 0.0;
};

CentralObstructionReport central_rigidity_obstruction(const QGroupData& dual,
                                                      double tol = 1e-7);

/// The six multiplier values of the rank-one projection built from
/// xi = (1, alpha, -1-alpha) in the two-dimensional block of the dual of S3,
/// on the element order e, (12), (13), (23), (123), (132).
Multiplier s3_rank_one_multiplier(Cplx alpha);

struct GenerationResult {
  int closure_dimension = 0;
  bool full = false;
};

/// Closes span{1, P} under convolution until the rank stabilizes.
GenerationResult convolution_generation_test(const QGroupData& q, const Vec& p,
                                             double tol = 1e-9);

/// Per trial: draw a Haar-random orthonormal basis inside every irrep, start
/// from the diagonal matrix-coefficient functions on the group, and close the
/// span alternately under the pointwise product and group convolution.
/// Returns the final dimension for each trial.
std::vector<int> closure_check(const FiniteGroup& g,
                               const std::vector<Irrep>& irreps,
                               std::uint64_t seed = 0, int trials = 20,
                               int jobs = 1);

/// Same closure, started from the trivial block only (constants).
int closure_check_trivial_start(const FiniteGroup& g,
                                const std::vector<Irrep>& irreps);

struct ColouringHypothesisReport {
  int nontrivial_character = -1;  // irrep index, or -1 when none exists
  // One (alpha, beta, gamma) witness per non-trivial alpha when found.
  std::vector<std::array<int, 3>> tensor_witnesses;
  std::vector<int> unwitnessed;  // non-trivial alphas with no witness
};

ColouringHypothesisReport colouring_hypothesis_check(
    const FiniteGroup& g, const std::vector<Irrep>& irreps);

struct GapCertificate {
  bool perfect = false;
  int abelianization_order = 1;  // > 1 exactly when not perfect
  bool rigid_found = false;
  RigidSearchResult search;
  int lie_witness_dimension = -1;  // extra numeric check, expected 0
  bool certified = false;
};

/// Certifies that a perfect group admits a rigid quantum Cayley graph; the
/// certificate additionally reports the dimension of the space of
/// skew-adjoint elements commuting with the adjacency action (modulo the
/// center) as a numeric witness.
GapCertificate gap_certificate(const FiniteGroup& g,
                               const std::vector<Irrep>& irreps,
                               std::uint64_t seed = 42, int trials = 100);

}  // namespace qfrucht
