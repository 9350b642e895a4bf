#include "qfrucht/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace qfrucht {

bool FiniteGroup::is_abelian() const {
  for (int g = 0; g < order; ++g)
    for (int h = g + 1; h < order; ++h)
      if (mul[g][h] != mul[h][g]) return false;
  return true;
}

std::string FiniteGroup::label(int g) const {
  if (g >= 0 && g < static_cast<int>(labels.size())) return labels[g];
  return "g" + std::to_string(g);
}

namespace {

void finish_group(FiniteGroup& g) {
  const int n = g.order;
  // Latin square.
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      int rb = g.mul[a][b], cb = g.mul[b][a];
      if (rb < 0 || rb >= n || cb < 0 || cb >= n)
        throw input_error("group table: entry out of range at (" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
      if (row[rb])
        throw input_error("group table: repeated entry in row " +
                          std::to_string(a));
      if (col[cb])
        throw input_error("group table: repeated entry in column " +
                          std::to_string(a));
      row[rb] = col[cb] = true;
    }
  }
  // Identity at index 0.
  for (int a = 0; a < n; ++a)
    if (g.mul[0][a] != a || g.mul[a][0] != a)
      throw input_error("group table: element 0 is not the identity");
  // Associativity.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]])
          throw input_error("group table: associativity fails at triple (" +
                            std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul[a][b] == 0) g.inv[a] = b;
}

std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
  // (p ∘ q)(x) = p(q(x))
  std::vector<int> r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

}  // namespace

FiniteGroup group_from_table(std::vector<std::vector<int>> mul,
                             std::string name) {
  FiniteGroup g;
  g.name = std::move(name);
  g.order = static_cast<int>(mul.size());
  if (g.order == 0) throw input_error("group table: empty");
  for (const auto& row : mul)
    if (static_cast<int>(row.size()) != g.order)
      throw input_error("group table: not square");
  g.mul = std::move(mul);
  finish_group(g);
  return g;
}

FiniteGroup group_from_generators(int degree,
                                  const std::vector<std::vector<int>>& gens,
                                  std::string name, int cap) {
  if (degree < 1) throw input_error("group_from_generators: degree must be >= 1");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw input_error("group_from_generators: permutation of wrong degree");
    std::vector<bool> seen(degree, false);
    for (int x : p) {
      if (x < 0 || x >= degree || seen[x])
        throw input_error("group_from_generators: not a permutation");
      seen[x] = true;
    }
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems = {id};
  std::map<std::vector<int>, int> index = {{id, 0}};
  std::queue<int> work;
  work.push(0);
  while (!work.empty()) {
    int cur = work.front();
    work.pop();
    for (const auto& gen : gens) {
      std::vector<int> next = compose(gen, elems[cur]);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(next);
        if (static_cast<int>(elems.size()) > cap)
          throw input_error("group_from_generators: closure exceeds cap " +
                            std::to_string(cap));
        work.push(static_cast<int>(elems.size()) - 1);
      }
    }
  }
  FiniteGroup g;
  g.name = std::move(name);
  g.order = static_cast<int>(elems.size());
  g.mul.assign(g.order, std::vector<int>(g.order));
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      g.mul[a][b] = index.at(compose(elems[a], elems[b]));
  g.perm_degree = degree;
  g.perms = std::move(elems);
  finish_group(g);
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw input_error("cyclic_group: order must be >= 1");
  FiniteGroup g;
  g.name = "Z" + std::to_string(n);
  g.order = n;
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  finish_group(g);
  return g;
}

FiniteGroup symmetric_group_s3() {
  // Fixed element order: e, (12), (13), (23), (123), (132), with (123)
  // meaning 1->2->3->1, i.e. 0->1->2->0 on {0,1,2}.
  std::vector<std::vector<int>> elems = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < 6; ++i) index[elems[i]] = i;
  FiniteGroup g;
  g.name = "S3";
  g.order = 6;
  g.mul.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      g.mul[a][b] = index.at(compose(elems[a], elems[b]));
  g.perm_degree = 3;
  g.perms = std::move(elems);
  g.labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  finish_group(g);
  return g;
}

std::vector<int> conjugacy_class_of(const FiniteGroup& g) {
  std::vector<int> cls(g.order, -1);
  int next = 0;
  for (int a = 0; a < g.order; ++a) {
    if (cls[a] >= 0) continue;
    for (int h = 0; h < g.order; ++h) {
      int c = g.multiply(g.multiply(h, a), g.inverse(h));
      cls[c] = next;
    }
    ++next;
  }
  return cls;
}

StructureReport structure_report(const FiniteGroup& g) {
  StructureReport r;
  r.is_abelian = g.is_abelian();
  for (int a = 0; a < g.order; ++a) {
    bool central = true;
    for (int h = 0; h < g.order && central; ++h)
      central = g.mul[a][h] == g.mul[h][a];
    if (central) r.center.push_back(a);
  }
  std::vector<int> cls = conjugacy_class_of(g);
  int nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
  r.conjugacy_classes.resize(nclasses);
  for (int a = 0; a < g.order; ++a) r.conjugacy_classes[cls[a]].push_back(a);
  // Commutator subgroup: closure of all [a,b] = a b a^-1 b^-1.
  std::vector<bool> in(g.order, false);
  in[0] = true;
  std::queue<int> work;
  work.push(0);
  std::vector<int> comms;
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      int c = g.multiply(g.multiply(a, b),
                         g.multiply(g.inverse(a), g.inverse(b)));
      if (!in[c]) {
        in[c] = true;
        work.push(c);
      }
    }
  std::vector<int> members;
  for (int a = 0; a < g.order; ++a)
    if (in[a]) members.push_back(a);
  // Close under multiplication.
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members.size(); ++j) {
        int c = g.multiply(members[i], members[j]);
        if (!in[c]) {
          in[c] = true;
          members.push_back(c);
          grew = true;
        }
      }
  }
  std::sort(members.begin(), members.end());
  r.commutator_subgroup = std::move(members);
  r.is_perfect =
      static_cast<int>(r.commutator_subgroup.size()) == g.order && g.order > 1;
  return r;
}

}  // namespace qfrucht
