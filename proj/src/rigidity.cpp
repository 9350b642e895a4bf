#include "qfrucht/rigidity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qfrucht {

bool LevelPartition::all_singletons() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const std::vector<int>& b) { return b.size() == 1; });
}

int LevelPartition::block_of(int g) const {
  for (size_t b = 0; b < blocks.size(); ++b)
    if (std::find(blocks[b].begin(), blocks[b].end(), g) != blocks[b].end())
      return static_cast<int>(b);
  return -1;
}

LevelPartition level_partition(const Multiplier& t, double tol) {
  const int n = static_cast<int>(t.values.size());
  double scale = 1.0;
  for (int g = 0; g < n; ++g) scale = std::max(scale, std::abs(t.values[g]));
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int g = 0; g < n; ++g)
    for (int h = g + 1; h < n; ++h)
      if (std::abs(t.values[g] - t.values[h]) <= tol * scale)
        parent[find(g)] = find(h);
  LevelPartition p;
  p.group = t.group;
  p.tol = tol;
  p.values = t.values;
  std::vector<int> block_id(n, -1);
  for (int g = 0; g < n; ++g) {
    int r = find(g);
    if (block_id[r] < 0) {
      block_id[r] = static_cast<int>(p.blocks.size());
      p.blocks.emplace_back();
    }
    p.blocks[block_id[r]].push_back(g);
  }
  return p;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::RIGID_INJECTIVE:
      return "RIGID_INJECTIVE";
    case Verdict::RIGID_NONCENTRAL_SEPARATED:
      return "RIGID_NONCENTRAL_SEPARATED";
    default:
      return "INCONCLUSIVE";
  }
}

RigidityVerdict rigidity_verdict(const FiniteGroup& g, const Multiplier& t,
                                 double tol) {
  RigidityVerdict r;
  r.partition = level_partition(t, tol);
  if (r.partition.all_singletons()) {
    r.verdict = Verdict::RIGID_INJECTIVE;
    return r;
  }
  std::vector<bool> central(g.order, true);
  for (int a = 0; a < g.order; ++a)
    for (int h = 0; h < g.order && central[a]; ++h)
      central[a] = g.mul[a][h] == g.mul[h][a];
  for (const std::vector<int>& block : r.partition.blocks)
    for (size_t i = 0; i < block.size(); ++i)
      for (size_t j = i + 1; j < block.size(); ++j)
        if (!central[block[i]] || !central[block[j]])
          r.blocking_pairs.emplace_back(block[i], block[j]);
  if (!g.is_abelian() && r.blocking_pairs.empty())
    r.verdict = Verdict::RIGID_NONCENTRAL_SEPARATED;
  else
    r.verdict = Verdict::INCONCLUSIVE;
  return r;
}

namespace {

Vec random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

Mat haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Cplx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Cplx(1.0);
  }
  return q;
}

int verdict_strength(Verdict v) {
  switch (v) {
    case Verdict::RIGID_INJECTIVE:
      return 2;
    case Verdict::RIGID_NONCENTRAL_SEPARATED:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

SeparatingSearchResult separating_vector_search(const FiniteGroup& g,
                                                const Irrep& pi,
                                                bool faithful_required,
                                                std::uint64_t seed, int trials) {
  if (faithful_required) {
    std::vector<int> ker = irrep_kernel(pi);
    if (ker.size() > 1) {
      std::string msg = "separating_vector_search: representation not faithful,"
                        " kernel = {";
      for (size_t i = 0; i < ker.size(); ++i)
        msg += (i ? ", " : "") + g.label(ker[i]);
      throw input_error(msg + "}");
    }
  }
  std::mt19937_64 rng(seed);
  SeparatingSearchResult r;
  for (int trial = 1; trial <= trials; ++trial) {
    Vec xi = random_unit_vector(pi.dim, rng);
    Vec values(g.order);
    for (int x = 0; x < g.order; ++x)
      values[x] = (xi.adjoint() * pi.matrices[x] * xi)(0, 0);
    double scale = 1.0;
    for (int x = 0; x < g.order; ++x)
      scale = std::max(scale, std::abs(values[x]));
    bool distinct = true;
    for (int a = 0; a < g.order && distinct; ++a)
      for (int b = a + 1; b < g.order; ++b)
        if (std::abs(values[a] - values[b]) <= 1e-7 * scale) {
          distinct = false;
          break;
        }
    r.trials_used = trial;
    if (distinct) {
      r.success = true;
      r.xi = std::move(xi);
      r.values = std::move(values);
      return r;
    }
  }
  return r;
}

RigidSearchResult rigid_projection_search(const QGroupData& dual,
                                          std::uint64_t seed, int trials,
                                          int jobs) {
  if (dual.lambda.size() == 0)
    throw input_error("rigid_projection_search: requires a dual-of-group algebra");
  const FiniteGroup& g = *dual.group;
  if (g.is_abelian())
    throw input_error(
        "rigid_projection_search: group is abelian; the search criterion "
        "requires a non-abelian group");
  const QSet& s = *dual.space;

  auto run_trial = [&](int trial) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL *
                                   static_cast<std::uint64_t>(trial));
    std::vector<Mat> blocks(s.blocks().size());
    for (size_t b = 0; b < blocks.size(); ++b) {
      int n = s.blocks()[b];
      if (n > 1) {
        Vec xi = random_unit_vector(n, rng);
        blocks[b] = xi * xi.adjoint();
      } else {
        blocks[b] = Mat::Zero(1, 1);
      }
    }
    RigidSearchResult r;
    r.projection = s.from_blocks(blocks);
    r.multiplier = fourier_multiplier(dual, r.projection);
    r.verdict = rigidity_verdict(g, r.multiplier);
    r.trials_used = trial + 1;
    return r;
  };

  RigidSearchResult best;
  bool have_best = false;
  int batch = std::max(1, jobs);
  for (int start = 0; start < trials; start += batch) {
    int count = std::min(batch, trials - start);
    std::vector<RigidSearchResult> results(count);
    if (count == 1 || jobs <= 1) {
      for (int i = 0; i < count; ++i) results[i] = run_trial(start + i);
    } else {
      std::vector<std::thread> threads;
      for (int i = 0; i < count; ++i)
        threads.emplace_back([&, i] { results[i] = run_trial(start + i); });
      for (auto& t : threads) t.join();
    }
    for (int i = 0; i < count; ++i) {
      if (!have_best || verdict_strength(results[i].verdict.verdict) >
                            verdict_strength(best.verdict.verdict)) {
        best = results[i];
        have_best = true;
      }
      if (best.verdict.verdict == Verdict::RIGID_INJECTIVE) return best;
    }
  }
  return best;
}

CentralObstructionReport central_rigidity_obstruction(const QGroupData& dual,
                                                      double tol) {
  if (dual.lambda.size() == 0)
    throw input_error(
        "central_rigidity_obstruction: requires a dual-of-group algebra");
  const FiniteGroup& g = *dual.group;
  const auto& irreps = *dual.irreps;
  if (irreps.size() > 20)
    throw input_error("central_rigidity_obstruction: more than 20 irreps");
  const int n = g.order;
  std::vector<int> cls = conjugacy_class_of(g);
  CentralObstructionReport rep;
  rep.subset_count = 1 << irreps.size();
  // separated[g][h] for conjugate pairs.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (cls[a] == cls[b]) pairs.emplace_back(a, b);
  std::vector<bool> separated(pairs.size(), false);
  for (int mask = 0; mask < rep.subset_count; ++mask) {
    Vec t = Vec::Zero(n);
    for (size_t p = 0; p < irreps.size(); ++p) {
      if (!(mask & (1 << p))) continue;
      for (int x = 0; x < n; ++x)
        t[x] += (static_cast<double>(irreps[p].dim) / n) *
                std::conj(irreps[p].character[x]);
    }
    double scale = 1.0;
    for (int x = 0; x < n; ++x) scale = std::max(scale, std::abs(t[x]));
    // Central multipliers are class functions; record the worst deviation.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (cls[a] == cls[b])
          rep.max_class_function_residual =
              std::max(rep.max_class_function_residual, std::abs(t[a] - t[b]));
    for (size_t i = 0; i < pairs.size(); ++i)
      if (std::abs(t[pairs[i].first] - t[pairs[i].second]) > tol * scale)
        separated[i] = true;
  }
  for (size_t i = 0; i < pairs.size(); ++i)
    if (!separated[i]) rep.never_separated_pairs.push_back(pairs[i]);
  return rep;
}

Multiplier s3_rank_one_multiplier(Cplx alpha) {
  auto g = std::make_shared<const FiniteGroup>(symmetric_group_s3());
  const Cplx a = alpha;
  const double a2 = std::norm(a);
  const double re2 = 2.0 * std::real(a);  // alpha + conj(alpha)
  const double opa2 = std::norm(1.0 + a);
  Vec t(6);
  t[0] = 1.0 + a2 + opa2;                         // e
  t[1] = opa2 + re2;                              // (12)
  t[2] = a2 - 2.0 - re2;                          // (13)
  t[3] = 1.0 - re2 - 2.0 * a2;                    // (23)
  t[4] = -1.0 - a2 - std::conj(a) - 2.0 * a;      // (123)
  t[5] = -1.0 - a2 - 2.0 * std::conj(a) - a;      // (132)
  return Multiplier{std::move(g), std::move(t)};
}

namespace {

// Try to extend an orthonormal basis (columns of b) by v; returns true when
// v had a component outside the span.
bool extend_basis(Mat& b, const Vec& v, double tol) {
  Vec w = v;
  if (b.cols() > 0) w -= b * (b.adjoint() * v).eval();
  // Re-orthogonalize once for stability.
  if (b.cols() > 0) w -= b * (b.adjoint() * w).eval();
  if (w.norm() <= tol * std::max(1.0, v.norm())) return false;
  b.conservativeResize(Eigen::NoChange, b.cols() + 1);
  b.col(b.cols() - 1) = w / w.norm();
  return true;
}

}  // namespace

GenerationResult convolution_generation_test(const QGroupData& q, const Vec& p,
                                             double tol) {
  const QSet& s = *q.space;
  const int d = s.dim();
  QSet tensor = QSet::tensor(s, s);
  Mat dstar = s.weights().cwiseInverse().asDiagonal() * q.delta.adjoint() *
              tensor.weights().asDiagonal();
  auto left_conv = [&](const Vec& x) {
    Mat l(d, d);
    for (int j = 0; j < d; ++j) {
      Vec col = Vec::Zero(d);
      for (int i = 0; i < d; ++i)
        col += x[i] * dstar.col(static_cast<Eigen::Index>(i) * d + j);
      l.col(j) = col;
    }
    return l;
  };
  Mat basis(d, 0);
  extend_basis(basis, s.unit_vector(), tol);
  extend_basis(basis, p, tol);
  bool grew = true;
  while (grew) {
    grew = false;
    Eigen::Index r = basis.cols();
    for (Eigen::Index i = 0; i < r; ++i) {
      Mat li = left_conv(basis.col(i));
      Mat candidates = li * basis.leftCols(r);
      for (Eigen::Index j = 0; j < r; ++j)
        grew = extend_basis(basis, candidates.col(j), tol) || grew;
    }
  }
  GenerationResult res;
  res.closure_dimension = static_cast<int>(basis.cols());
  res.full = res.closure_dimension == d;
  return res;
}

namespace {

int closure_dimension(const FiniteGroup& g, std::vector<Vec> start, double tol) {
  const int n = g.order;
  Mat basis(n, 0);
  for (const Vec& v : start) extend_basis(basis, v, tol);
  bool grew = true;
  while (grew) {
    grew = false;
    Eigen::Index r = basis.cols();
    // Pointwise products.
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = i; j < r; ++j)
        grew = extend_basis(
                   basis, basis.col(i).cwiseProduct(basis.col(j)), tol) ||
               grew;
    // Group convolutions (f1 * f2)(x) = sum_h f1(h) f2(h^{-1}x).
    r = basis.cols();
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        Vec conv = Vec::Zero(n);
        for (int h = 0; h < n; ++h)
          for (int x = 0; x < n; ++x)
            conv[g.multiply(h, x)] += basis(h, i) * basis(x, j);
        grew = extend_basis(basis, conv, tol) || grew;
      }
  }
  return static_cast<int>(basis.cols());
}

}  // namespace

std::vector<int> closure_check(const FiniteGroup& g,
                               const std::vector<Irrep>& irreps,
                               std::uint64_t seed, int trials, int jobs) {
  auto run_trial = [&](int trial) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL *
                                   static_cast<std::uint64_t>(trial));
    std::vector<Vec> start;
    for (const Irrep& pi : irreps) {
      Mat u = haar_unitary(pi.dim, rng);
      for (int a = 0; a < pi.dim; ++a) {
        Vec f(g.order);
        for (int x = 0; x < g.order; ++x)
          f[x] = (u * pi.matrices[x] * u.adjoint())(a, a);
        start.push_back(std::move(f));
      }
    }
    return closure_dimension(g, std::move(start), 1e-9);
  };
  std::vector<int> dims(trials);
  int batch = std::max(1, jobs);
  for (int startidx = 0; startidx < trials; startidx += batch) {
    int count = std::min(batch, trials - startidx);
    if (count == 1 || jobs <= 1) {
      for (int i = 0; i < count; ++i) dims[startidx + i] = run_trial(startidx + i);
    } else {
      std::vector<std::thread> threads;
      for (int i = 0; i < count; ++i)
        threads.emplace_back(
            [&, i] { dims[startidx + i] = run_trial(startidx + i); });
      for (auto& t : threads) t.join();
    }
  }
  return dims;
}

int closure_check_trivial_start(const FiniteGroup& g,
                                const std::vector<Irrep>& irreps) {
  for (const Irrep& pi : irreps)
    if (pi.dim == 1 && (pi.character - Vec::Ones(g.order)).norm() <= 1e-6)
      return closure_dimension(g, {Vec::Ones(g.order)}, 1e-9);
  throw input_error("closure_check_trivial_start: no trivial representation");
}

ColouringHypothesisReport colouring_hypothesis_check(
    const FiniteGroup& g, const std::vector<Irrep>& irreps) {
  ColouringHypothesisReport rep;
  int trivial = -1;
  for (size_t p = 0; p < irreps.size(); ++p)
    if (irreps[p].dim == 1 &&
        (irreps[p].character - Vec::Ones(g.order)).norm() <= 1e-6)
      trivial = static_cast<int>(p);
  for (size_t p = 0; p < irreps.size(); ++p)
    if (irreps[p].dim == 1 && static_cast<int>(p) != trivial) {
      rep.nontrivial_character = static_cast<int>(p);
      break;
    }
  for (size_t a = 0; a < irreps.size(); ++a) {
    if (static_cast<int>(a) == trivial) continue;
    bool found = false;
    for (size_t b = 0; b < irreps.size() && !found; ++b) {
      if (static_cast<int>(b) == trivial || b == a) continue;
      for (size_t c = 0; c < irreps.size() && !found; ++c) {
        if (static_cast<int>(c) == trivial || c == a) continue;
        std::vector<int> mult = tensor_multiplicities(
            g, irreps, static_cast<int>(b), static_cast<int>(c));
        if (mult[a] > 0) {
          rep.tensor_witnesses.push_back({static_cast<int>(a),
                                          static_cast<int>(b),
                                          static_cast<int>(c)});
          found = true;
        }
      }
    }
    if (!found) rep.unwitnessed.push_back(static_cast<int>(a));
  }
  return rep;
}

GapCertificate gap_certificate(const FiniteGroup& g,
                               const std::vector<Irrep>& irreps,
                               std::uint64_t seed, int trials) {
  GapCertificate cert;
  StructureReport sr = structure_report(g);
  cert.perfect = sr.is_perfect;
  cert.abelianization_order =
      g.order / static_cast<int>(sr.commutator_subgroup.size());
  if (!cert.perfect) return cert;

  QGroupData dual = dual_group(g, irreps);
  cert.search = rigid_projection_search(dual, seed, trials);
  cert.rigid_found = cert.search.verdict.verdict != Verdict::INCONCLUSIVE;
  cert.certified = cert.perfect && cert.rigid_found;
  if (!cert.rigid_found) return cert;

  // Numeric witness: dimension of the skew-adjoint elements X whose inner
  // derivation commutes with the adjacency action, modulo the center.
  const QSet& s = *dual.space;
  const int d = s.dim();
  LinOp a = convolution_operator(dual, cert.search.projection);
  std::vector<Vec> skew_basis;
  const Cplx im(0.0, 1.0);
  for (size_t b = 0; b < s.blocks().size(); ++b) {
    int n = s.blocks()[b];
    auto unit = [&](int i, int j) {
      return Vec::Unit(d, s.index_of(static_cast<int>(b), i, j));
    };
    for (int i = 0; i < n; ++i) skew_basis.push_back(im * unit(i, i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        skew_basis.push_back(unit(i, j) - unit(j, i));
        skew_basis.push_back(im * (unit(i, j) + unit(j, i)));
      }
  }
  const int params = static_cast<int>(skew_basis.size());
  Eigen::MatrixXd system(2 * d * d, params);
  for (int p = 0; p < params; ++p) {
    Mat ad(d, d);
    for (int c = 0; c < d; ++c) {
      Vec ec = Vec::Unit(d, c);
      ad.col(c) = s.product(skew_basis[p], ec) - s.product(ec, skew_basis[p]);
    }
    Mat comm = a.mat * ad - ad * a.mat;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        system(static_cast<Eigen::Index>(i) * d + j, p) = std::real(comm(i, j));
        system(static_cast<Eigen::Index>(d) * d + i * d + j, p) =
            std::imag(comm(i, j));
      }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(system);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv[0] : 0.0;
  int rank = static_cast<int>((sv.array() > 1e-7 * std::max(1.0, smax)).count());
  int nullity = params - rank;
  cert.lie_witness_dimension =
      nullity - static_cast<int>(s.blocks().size());
  return cert;
}

}  // namespace qfrucht
