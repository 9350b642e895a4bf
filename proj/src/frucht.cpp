#include "qfrucht/frucht.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace qfrucht {

ClassicalGraph ClassicalGraph::empty(int n, bool directed) {
  ClassicalGraph g;
  g.n = n;
  g.directed = directed;
  g.adj.assign(n, std::vector<int>(n, 0));
  return g;
}

int ClassicalGraph::out_degree(int v) const {
  int d = 0;
  for (int w = 0; w < n; ++w) d += adj[w][v];
  return d;
}

int ClassicalGraph::in_degree(int v) const {
  int d = 0;
  for (int w = 0; w < n; ++w) d += adj[v][w];
  return d;
}

ClassicalGraph aux_graph_H(int n) {
  if (n < 1) throw input_error("aux_graph_H: n must be >= 1");
  ClassicalGraph g = ClassicalGraph::empty(n + 1, false);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (i + j > n) g.add_undirected_edge(i, j);
  for (int i = n / 2 + 1; i <= n; ++i) g.add_undirected_edge(0, i);
  return g;
}

ClassicalGraph aux_graph_Htilde(int n) {
  if (n < 1) throw input_error("aux_graph_Htilde: n must be >= 1");
  ClassicalGraph g = ClassicalGraph::empty(2 * n + 1, false);
  for (int i = 1; i <= 2 * n; ++i)
    for (int j = i + 1; j <= 2 * n; ++j)
      if (i + j > 2 * n) g.add_undirected_edge(i, j);
  for (int i = n + 1; i <= 2 * n; ++i) g.add_undirected_edge(0, i);
  return g;
}

ClassicalGraph classical_cayley_digraph(const FiniteGroup& g,
                                        const std::vector<int>& s) {
  ClassicalGraph c = ClassicalGraph::empty(g.order, true);
  for (int k : s) {
    if (k < 0 || k >= g.order)
      throw input_error("classical_cayley_digraph: element out of range");
    for (int h = 0; h < g.order; ++h) c.adj[g.multiply(k, h)][h] = 1;
  }
  return c;
}

namespace {

std::vector<int> refine_colours(const ClassicalGraph& g) {
  const int n = g.n;
  std::vector<int> colour(n);
  {
    std::map<std::pair<int, int>, int> ids;
    for (int v = 0; v < n; ++v) {
      auto key = std::make_pair(g.in_degree(v), g.out_degree(v));
      colour[v] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
    }
  }
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> in_sig, out_sig;
      for (int w = 0; w < n; ++w) {
        if (g.adj[v][w]) in_sig.push_back(colour[w]);   // edge w -> v
        if (g.adj[w][v]) out_sig.push_back(colour[w]);  // edge v -> w
      }
      std::sort(in_sig.begin(), in_sig.end());
      std::sort(out_sig.begin(), out_sig.end());
      std::vector<int> key;
      key.push_back(colour[v]);
      key.push_back(-1);
      key.insert(key.end(), in_sig.begin(), in_sig.end());
      key.push_back(-1);
      key.insert(key.end(), out_sig.begin(), out_sig.end());
      next[v] = ids.emplace(std::move(key), static_cast<int>(ids.size()))
                    .first->second;
    }
    bool stable = ids.size() ==
                  static_cast<size_t>(*std::max_element(colour.begin(),
                                                        colour.end()) +
                                      1);
    colour = std::move(next);
    if (stable) break;
  }
  return colour;
}

struct AutSearch {
  const ClassicalGraph& g;
  std::vector<int> colour;
  std::vector<int> order;  // vertex visit order
  std::vector<int> image;
  std::vector<bool> used;
  std::vector<std::vector<int>> found;
  long long nodes = 0;
  static constexpr long long kNodeCap = 50'000'000;
  static constexpr size_t kElementCap = 2'000'000;

  explicit AutSearch(const ClassicalGraph& graph)
      : g(graph), colour(refine_colours(graph)) {
    const int n = g.n;
    image.assign(n, -1);
    used.assign(n, false);
    // Visit vertices so each new one touches many already-placed ones.
    std::vector<bool> placed(n, false);
    std::vector<int> class_size(n, 0);
    for (int v = 0; v < n; ++v) ++class_size[colour[v]];
    for (int step = 0; step < n; ++step) {
      int best = -1, best_links = -1, best_class = 1 << 30;
      for (int v = 0; v < n; ++v) {
        if (placed[v]) continue;
        int links = 0;
        for (int u : order) links += g.adj[v][u] + g.adj[u][v];
        int cs = class_size[colour[v]];
        if (links > best_links || (links == best_links && cs < best_class)) {
          best = v;
          best_links = links;
          best_class = cs;
        }
      }
      order.push_back(best);
      placed[best] = true;
    }
  }

  void run(int depth) {
    if (++nodes > kNodeCap)
      throw input_error("graph_automorphisms: search budget exceeded");
    if (depth == g.n) {
      if (found.size() >= kElementCap)
        throw input_error("graph_automorphisms: automorphism cap exceeded");
      found.push_back(image);
      return;
    }
    int v = order[depth];
    for (int u = 0; u < g.n; ++u) {
      if (used[u] || colour[u] != colour[v]) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        int w = order[k];
        ok = g.adj[v][w] == g.adj[u][image[w]] &&
             g.adj[w][v] == g.adj[image[w]][u];
      }
      if (!ok) continue;
      image[v] = u;
      used[u] = true;
      run(depth + 1);
      used[u] = false;
      image[v] = -1;
    }
  }
};

}  // namespace

PermGroup graph_automorphisms(const ClassicalGraph& g) {
  if (g.n > 512) throw input_error("graph_automorphisms: vertex cap exceeded");
  AutSearch search(g);
  search.run(0);
  PermGroup p;
  p.degree = g.n;
  p.elements = std::move(search.found);
  p.order = static_cast<long long>(p.elements.size());
  return p;
}

ColouredFamily coloured_family(const QGroupData& q, double tol) {
  const QSet& x = *q.space;
  const int nblocks = static_cast<int>(x.blocks().size());
  // The counit support must be a single one-dimensional block with value 1.
  int support = -1;
  for (int k = 0; k < nblocks; ++k) {
    int n = x.blocks()[k];
    double mx = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        mx = std::max(mx,
                      std::abs(q.eps(Vec::Unit(x.dim(), x.index_of(k, i, j)))));
    if (mx > 0.5) {
      if (support >= 0 || n != 1)
        throw input_error("coloured_family: counit support block not identified");
      support = k;
    }
  }
  if (support < 0 ||
      std::abs(q.eps(Vec::Unit(x.dim(), x.index_of(support, 0, 0))) - 1.0) >
          1e-8)
    throw input_error("coloured_family: counit support block not identified");

  ColouredFamily fam;
  fam.counit_block = support;
  fam.complement_dim = x.dim() - 1;
  const Cplx im(0.0, 1.0);
  for (int k = 0; k < nblocks; ++k) {
    if (k == support) continue;
    int n = x.blocks()[k];
    auto unit = [&](int i, int j) { return Vec::Unit(x.dim(), x.index_of(k, i, j)); };
    std::vector<Vec> projs;
    for (int i = 0; i < n; ++i) projs.push_back(unit(i, i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        projs.push_back(
            0.5 * (unit(i, i) + unit(i, j) + unit(j, i) + unit(j, j)));
        projs.push_back(
            0.5 * (unit(i, i) - im * unit(i, j) + im * unit(j, i) + unit(j, j)));
      }
    for (Vec& p : projs) {
      CayleyReport rep = cayley_graph(q, p, tol);
      const GraphFlags& f = rep.graph.flags;
      if (!f.schur_idempotent || !f.real || !f.loopless || !f.regular)
        throw input_error(
            "coloured_family: a colour graph failed verification");
      fam.projections.push_back(std::move(p));
      fam.degrees.push_back(f.degree);
      fam.graphs.push_back(std::move(rep.graph));
    }
  }
  Mat stacked(x.dim(), static_cast<Eigen::Index>(fam.projections.size()));
  for (size_t i = 0; i < fam.projections.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = fam.projections[i];
  Eigen::JacobiSVD<Mat> svd(stacked);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  fam.span_rank = static_cast<int>(
      (svd.singularValues().array() > 1e-9 * std::max(1.0, smax)).count());
  if (fam.span_rank != fam.complement_dim)
    throw input_error("coloured_family: projections do not span the complement");
  return fam;
}

namespace {

Mat classical_to_mat(const ClassicalGraph& g) {
  Mat b = Mat::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (g.adj[i][j]) b(i, j) = 1.0;
  return b;
}

std::vector<int> sorted_by_degree(const std::vector<QuantumGraph>& graphs) {
  std::vector<int> idx(graphs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    Cplx da = graphs[a].flags.degree, db = graphs[b].flags.degree;
    if (std::real(da) != std::real(db)) return std::real(da) < std::real(db);
    return std::imag(da) < std::imag(db);
  });
  return idx;
}

void check_combine_inputs(const std::vector<QuantumGraph>& graphs) {
  if (graphs.empty()) throw input_error("combine: empty input list");
  const QSet& x = *graphs[0].space;
  for (const QuantumGraph& g : graphs) {
    if (!g.space->same_as(x))
      throw input_error("combine: inputs on different quantum sets");
    const GraphFlags& f = g.flags;
    if (!f.schur_idempotent || !f.real)
      throw input_error("combine: input is not a quantum graph");
    if (!f.loopless) throw input_error("combine: input has loops");
    if (!f.regular) throw input_error("combine: input is not regular");
  }
}

bool has_collision(const std::vector<Cplx>& eigs) {
  for (size_t a = 0; a < eigs.size(); ++a)
    for (size_t b = a + 1; b < eigs.size(); ++b)
      if (std::abs(eigs[a] - eigs[b]) <= 1e-9) return true;
  return false;
}

}  // namespace

CombineResult combine_directed(const std::vector<QuantumGraph>& graphs,
                               double tol) {
  check_combine_inputs(graphs);
  const int n = static_cast<int>(graphs.size());
  std::vector<int> idx = sorted_by_degree(graphs);
  QSetPtr x = graphs[0].space;
  const int dx = x->dim();
  const int m = n + 1;
  auto xp = std::make_shared<const QSet>(QSet::tensor(*x, QSet::classical(m)));
  Mat b = classical_to_mat(aux_graph_H(n));
  Mat ix = Mat::Identity(dx, dx);
  Mat a = Eigen::kroneckerProduct(ix, b);
  CombineResult r;
  r.class_eigenvalues.assign(m, Cplx(std::ceil(n / 2.0)));
  for (int i = 1; i <= n; ++i) {
    const QuantumGraph& gi = graphs[idx[i - 1]];
    Mat p = Mat::Zero(m, m);
    p(i, i) = 1.0;
    a += Eigen::kroneckerProduct(gi.adjacency.mat, p);
    r.input_degrees.push_back(gi.flags.degree);
    r.class_eigenvalues[i] = gi.flags.degree + static_cast<double>(i);
  }
  r.degree_collision = has_collision(r.class_eigenvalues);
  for (int k = 0; k < m; ++k) {
    Mat p = Mat::Zero(m, m);
    p(k, k) = 1.0;
    r.class_projections.emplace_back(xp, xp,
                                     Eigen::kroneckerProduct(ix, p).eval());
  }
  r.graph = make_quantum_graph(LinOp(xp, xp, std::move(a)), tol);
  return r;
}

CombineResult combine_undirected(const std::vector<QuantumGraph>& graphs,
                                 double tol) {
  check_combine_inputs(graphs);
  const int n = static_cast<int>(graphs.size());
  std::vector<int> idx = sorted_by_degree(graphs);
  QSetPtr x = graphs[0].space;
  const int dx = x->dim();
  const int m = 2 * n + 1;
  auto xp = std::make_shared<const QSet>(QSet::tensor(*x, QSet::classical(m)));
  Mat b = classical_to_mat(aux_graph_Htilde(n));
  Mat ix = Mat::Identity(dx, dx);
  Mat a = Eigen::kroneckerProduct(ix, b);
  CombineResult r;
  r.class_eigenvalues.assign(m, Cplx(static_cast<double>(n)));
  for (int i = 1; i <= n; ++i) {
    const QuantumGraph& gi = graphs[idx[i - 1]];
    Mat e1 = Mat::Zero(m, m), e2 = Mat::Zero(m, m);
    e1(2 * i - 1, 2 * i) = 1.0;
    e2(2 * i, 2 * i - 1) = 1.0;
    a += Eigen::kroneckerProduct(gi.adjacency.mat, e1);
    a += Eigen::kroneckerProduct(adjoint(gi.adjacency).mat, e2);
    r.input_degrees.push_back(gi.flags.degree);
    r.class_eigenvalues[2 * i - 1] =
        gi.flags.degree + static_cast<double>(2 * i - 1);
    r.class_eigenvalues[2 * i] = gi.flags.degree + static_cast<double>(2 * i);
  }
  r.degree_collision = has_collision(r.class_eigenvalues);
  for (int k = 0; k < m; ++k) {
    Mat p = Mat::Zero(m, m);
    p(k, k) = 1.0;
    r.class_projections.emplace_back(xp, xp,
                                     Eigen::kroneckerProduct(ix, p).eval());
  }
  r.graph = make_quantum_graph(LinOp(xp, xp, std::move(a)), tol);
  return r;
}

namespace {

void check_classical_inputs(const std::vector<ClassicalGraph>& graphs) {
  if (graphs.empty()) throw input_error("combine: empty input list");
  int n = graphs[0].n;
  for (const ClassicalGraph& g : graphs) {
    if (g.n != n) throw input_error("combine: inputs on different vertex sets");
    int d = g.out_degree(0);
    for (int v = 0; v < g.n; ++v) {
      if (g.adj[v][v]) throw input_error("combine: input has loops");
      if (g.out_degree(v) != d || g.in_degree(v) != d)
        throw input_error("combine: input is not regular");
    }
  }
}

std::vector<int> classical_sorted(const std::vector<ClassicalGraph>& graphs) {
  std::vector<int> idx(graphs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return graphs[a].out_degree(0) < graphs[b].out_degree(0);
  });
  return idx;
}

}  // namespace

ClassicalGraph combine_directed_classical(
    const std::vector<ClassicalGraph>& graphs) {
  check_classical_inputs(graphs);
  const int n = static_cast<int>(graphs.size());
  const int nv = graphs[0].n;
  const int m = n + 1;
  ClassicalGraph b = aux_graph_H(n);
  ClassicalGraph out = ClassicalGraph::empty(nv * m, true);
  for (int v = 0; v < nv; ++v)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (b.adj[i][j]) out.adj[v * m + i][v * m + j] = 1;
  std::vector<int> idx = classical_sorted(graphs);
  for (int i = 1; i <= n; ++i) {
    const ClassicalGraph& gi = graphs[idx[i - 1]];
    for (int v = 0; v < nv; ++v)
      for (int w = 0; w < nv; ++w)
        if (gi.adj[v][w]) out.adj[v * m + i][w * m + i] = 1;
  }
  return out;
}

ClassicalGraph combine_undirected_classical(
    const std::vector<ClassicalGraph>& graphs) {
  check_classical_inputs(graphs);
  const int n = static_cast<int>(graphs.size());
  const int nv = graphs[0].n;
  const int m = 2 * n + 1;
  ClassicalGraph b = aux_graph_Htilde(n);
  ClassicalGraph out = ClassicalGraph::empty(nv * m, false);
  for (int v = 0; v < nv; ++v)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (b.adj[i][j]) out.adj[v * m + i][v * m + j] = 1;
  std::vector<int> idx = classical_sorted(graphs);
  for (int i = 1; i <= n; ++i) {
    const ClassicalGraph& gi = graphs[idx[i - 1]];
    for (int v = 0; v < nv; ++v)
      for (int w = 0; w < nv; ++w)
        if (gi.adj[v][w]) {
          // Directed edge w -> v becomes (v, 2i-1) - (w, 2i), matching the
          // Kronecker layout of the operator version A_i ⊗ E_{2i-1,2i}.
          out.adj[v * m + 2 * i - 1][w * m + 2 * i] = 1;
          out.adj[w * m + 2 * i][v * m + 2 * i - 1] = 1;
        }
  }
  return out;
}

ClassicalFruchtResult classical_frucht(const FiniteGroup& g, bool directed) {
  if (g.order < 2) throw input_error("classical_frucht: group order must be >= 2");
  std::vector<ClassicalGraph> graphs;
  for (int x = 1; x < g.order; ++x)
    graphs.push_back(classical_cayley_digraph(g, {x}));
  ClassicalFruchtResult r;
  r.graph = directed ? combine_directed_classical(graphs)
                     : combine_undirected_classical(graphs);
  r.aut = graph_automorphisms(r.graph);
  const int m = r.graph.n / g.order;
  bool translations_ok = true;
  for (int x = 0; x < g.order && translations_ok; ++x) {
    std::vector<int> perm(r.graph.n);
    for (int v = 0; v < g.order; ++v)
      for (int i = 0; i < m; ++i)
        perm[v * m + i] = g.multiply(v, x) * m + i;
    for (int a = 0; a < r.graph.n && translations_ok; ++a)
      for (int b = 0; b < r.graph.n; ++b)
        if (r.graph.adj[perm[a]][perm[b]] != r.graph.adj[a][b]) {
          translations_ok = false;
          break;
        }
  }
  r.verified = translations_ok && r.aut.order == g.order;
  return r;
}

FruchtReport quantum_frucht_pipeline(const QGroupData& q, double tol) {
  FruchtReport rep;
  rep.family = coloured_family(q, tol);
  rep.combined = combine_undirected(rep.family.graphs, tol);
  rep.output_classical = rep.combined.graph.space->is_classical();
  return rep;
}

}  // namespace qfrucht
