#include "qfrucht/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qfrucht {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> line_column(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json real_matrix(const Mat& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(imag ? std::imag(m(i, j)) : std::real(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from(const Json& re, const Json& im) {
  if (!re.is_array() || re.empty() || !re[0].is_array())
    throw input_error("operator JSON: 're' must be a 2D array");
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(re[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(re[i].size()) != cols ||
        static_cast<Eigen::Index>(im[i].size()) != cols)
      throw input_error("operator JSON: ragged matrix");
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Cplx(re[i][j].get<double>(), im[i][j].get<double>());
  }
  return m;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw input_error(origin + ": JSON parse error at line " +
                      std::to_string(line) + ", column " + std::to_string(col) +
                      ": " + e.what());
  }
}

Json load_json_file(const std::string& path) {
  return parse_json_text(read_file(path), path);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::string data = read_file(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["name"] = g.name;
  j["order"] = g.order;
  j["mul"] = g.mul;
  if (!g.labels.empty()) j["labels"] = g.labels;
  if (g.perm_degree > 0) {
    j["perm_degree"] = g.perm_degree;
    j["perms"] = g.perms;
  }
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  if (!j.contains("mul")) throw input_error("group JSON: missing 'mul' table");
  FiniteGroup g = group_from_table(
      j["mul"].get<std::vector<std::vector<int>>>(),
      j.value("name", std::string()));
  if (j.contains("order") && j["order"].get<int>() != g.order)
    throw input_error("group JSON: 'order' does not match table size");
  if (j.contains("labels"))
    g.labels = j["labels"].get<std::vector<std::string>>();
  if (j.contains("perms")) {
    g.perms = j["perms"].get<std::vector<std::vector<int>>>();
    g.perm_degree = j.value("perm_degree",
                            g.perms.empty() ? 0 : static_cast<int>(g.perms[0].size()));
    if (static_cast<int>(g.perms.size()) != g.order)
      throw input_error("group JSON: 'perms' size does not match order");
  }
  return g;
}

Json irreps_to_json(const std::vector<Irrep>& irreps) {
  Json out = Json::array();
  for (const Irrep& ir : irreps) {
    Json mats = Json::array();
    for (const Mat& m : ir.matrices) {
      Json jm;
      jm["re"] = real_matrix(m, false);
      jm["im"] = real_matrix(m, true);
      mats.push_back(std::move(jm));
    }
    Json j;
    j["dim"] = ir.dim;
    j["matrices"] = std::move(mats);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Irrep> irreps_from_json(const Json& j) {
  if (!j.is_array()) throw input_error("irreps JSON: expected an array");
  std::vector<Irrep> out;
  for (const Json& item : j) {
    Irrep ir;
    ir.dim = item.at("dim").get<int>();
    for (const Json& jm : item.at("matrices"))
      ir.matrices.push_back(matrix_from(jm.at("re"), jm.at("im")));
    ir.character = Vec(static_cast<Eigen::Index>(ir.matrices.size()));
    for (size_t g = 0; g < ir.matrices.size(); ++g)
      ir.character[static_cast<Eigen::Index>(g)] = ir.matrices[g].trace();
    out.push_back(std::move(ir));
  }
  return out;
}

Json linop_to_json(const LinOp& op) {
  Json j;
  j["space"]["blocks"] = op.domain->blocks();
  j["re"] = real_matrix(op.mat, false);
  j["im"] = real_matrix(op.mat, true);
  return j;
}

LinOp linop_from_json(const Json& j) {
  auto blocks = j.at("space").at("blocks").get<std::vector<int>>();
  auto space = std::make_shared<const QSet>(blocks);
  Mat m = matrix_from(j.at("re"), j.at("im"));
  if (m.rows() != space->dim() || m.cols() != space->dim())
    throw input_error("operator JSON: matrix shape does not match the space");
  return LinOp(space, space, std::move(m));
}

ProjectionInput projection_from_json(const Json& j) {
  ProjectionInput p;
  p.basis = j.value("basis", std::string("lambda"));
  if (p.basis != "lambda" && p.basis != "block")
    throw input_error("projection JSON: 'basis' must be 'lambda' or 'block'");
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size())
    throw input_error("projection JSON: 're' and 'im' lengths differ");
  p.values = Vec(static_cast<Eigen::Index>(re.size()));
  for (size_t i = 0; i < re.size(); ++i)
    p.values[static_cast<Eigen::Index>(i)] = Cplx(re[i], im[i]);
  return p;
}

Json projection_to_json(const Vec& coords, const std::string& basis) {
  Json j;
  j["basis"] = basis;
  std::vector<double> re(coords.size()), im(coords.size());
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    re[i] = std::real(coords[i]);
    im[i] = std::imag(coords[i]);
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

Json classical_graph_to_json(const ClassicalGraph& g) {
  Json j;
  j["n"] = g.n;
  j["directed"] = g.directed;
  j["adj"] = g.adj;
  return j;
}

ClassicalGraph classical_graph_from_json(const Json& j) {
  ClassicalGraph g;
  g.n = j.at("n").get<int>();
  g.directed = j.at("directed").get<bool>();
  g.adj = j.at("adj").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(g.adj.size()) != g.n)
    throw input_error("classical graph JSON: 'adj' size does not match 'n'");
  for (const auto& row : g.adj) {
    if (static_cast<int>(row.size()) != g.n)
      throw input_error("classical graph JSON: ragged adjacency");
    for (int e : row)
      if (e != 0 && e != 1)
        throw input_error("classical graph JSON: entries must be 0 or 1");
  }
  return g;
}

std::string classical_graph_to_dot(const ClassicalGraph& g) {
  std::ostringstream out;
  out << (g.directed ? "digraph" : "graph") << " G {\n";
  const char* arrow = g.directed ? " -> " : " -- ";
  for (int target = 0; target < g.n; ++target)
    for (int source = 0; source < g.n; ++source) {
      if (!g.adj[target][source]) continue;
      if (!g.directed && source > target) continue;
      out << "  " << source << arrow << target << ";\n";
    }
  out << "}\n";
  return out.str();
}

Json complex_vector_to_json(const Vec& v) {
  return projection_to_json(v, "block");
}

Vec complex_vector_from_json(const Json& j) {
  return projection_from_json(j).values;
}

}  // namespace qfrucht
