#pragma once

#include "qfrucht/qgroup.hpp"

namespace qfrucht {

struct ClassicalGraph {
  int n = 0;
  bool directed = false;
  std::vector<std::vector<int>> adj;  // adj[target][source] = 0/1

  static ClassicalGraph empty(int n, bool directed);
  bool has_edge(int target, int source) const { return adj[target][source] != 0; }
  void add_undirected_edge(int a, int b) { adj[a][b] = adj[b][a] = 1; }
  int out_degree(int v) const;
  int in_degree(int v) const;
};

/// Auxiliary gadget on {0..n}: i,j >= 1 adjacent iff i+j > n, and 0 adjacent
/// to every i > floor(n/2).  deg(i) = i, deg(0) = ceil(n/2).
ClassicalGraph aux_graph_H(int n);

/// Auxiliary gadget on {0..2n}: i,j >= 1 adjacent iff i+j > 2n, and 0
/// adjacent to every i > n.  deg(i) = i, deg(0) = n.
ClassicalGraph aux_graph_Htilde(int n);

/// Left-translation Cayley digraph: edge h -> kh for every k in s.
ClassicalGraph classical_cayley_digraph(const FiniteGroup& g,
                                        const std::vector<int>& s);

struct PermGroup {
  int degree = 0;
  std::vector<std::vector<int>> elements;  // all automorphisms
  long long order = 0;
};

/// All automorphisms via colour refinement + backtracking.  Exact integer
/// arithmetic throughout; throws when the vertex cap (512) or the search
/// budget is exceeded.
PermGroup graph_automorphisms(const ClassicalGraph& g);

struct ColouredFamily {
  std::vector<Vec> projections;
  std::vector<QuantumGraph> graphs;
  std::vector<Cplx> degrees;
  int counit_block = -1;
  int span_rank = 0;      // rank of the projection span
  int complement_dim = 0; // dim of the complement of the counit block
};

/// The spanning family of projections of the complement of the counit-support
/// block, with their quantum Cayley graphs (all loopless and regular).
ColouredFamily coloured_family(const QGroupData& q, double tol = kDefaultTol);

struct CombineResult {
  QuantumGraph graph;
  std::vector<Cplx> input_degrees;         // sorted nondecreasing
  std::vector<Cplx> class_eigenvalues;     // expected D eigenvalue per label
  bool degree_collision = false;
  std::vector<LinOp> class_projections;    // structural I ⊗ P_k
};

/// Directed combination on C(X) ⊗ C^{n+1} with the gadget H:
/// A' = I⊗B + sum A_i⊗P_i.
CombineResult combine_directed(const std::vector<QuantumGraph>& graphs,
                               double tol = kDefaultTol);

/// Undirected combination on C(X) ⊗ C^{2n+1} with the gadget H-tilde:
/// A' = I⊗B + sum (A_i⊗E_{2i-1,2i} + A_i*⊗E_{2i,2i-1}).
CombineResult combine_undirected(const std::vector<QuantumGraph>& graphs,
                                 double tol = kDefaultTol);

/// Classical counterparts of the two combinations (vertex (v,i) has index
/// v*m + i, matching the Kronecker order of the quantum version).
ClassicalGraph combine_directed_classical(
    const std::vector<ClassicalGraph>& graphs);
ClassicalGraph combine_undirected_classical(
    const std::vector<ClassicalGraph>& graphs);

struct ClassicalFruchtResult {
  ClassicalGraph graph;
  PermGroup aut;
  bool verified = false;  // |Aut| == |G| and right translations are witnesses
};

ClassicalFruchtResult classical_frucht(const FiniteGroup& g, bool directed);

struct FruchtReport {
  ColouredFamily family;
  CombineResult combined;
  bool output_classical = false;  // all blocks of the output space are size 1
};

/// Full pipeline: coloured family, then the undirected combination.
FruchtReport quantum_frucht_pipeline(const QGroupData& q,
                                     double tol = kDefaultTol);

}  // namespace qfrucht
