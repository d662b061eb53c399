#include "specdens/simplicial_complex.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace specdens {
namespace {

std::string cell_str(const SimplicialComplex::Cell& c) {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

// Tuple -> cell indices, per degree. Non-unique entries flag ambiguity.
using Lookup = std::vector<std::map<SimplicialComplex::Cell, std::vector<int>>>;

int resolve_face(std::vector<std::vector<SimplicialComplex::Cell>>& cells,
                 Lookup& lookup, const SimplicialComplex::Cell& tuple, int k,
                 bool auto_complete) {
  auto it = lookup[k].find(tuple);
  if (it != lookup[k].end()) {
    if (it->second.size() > 1)
      throw std::invalid_argument("ambiguous face " + cell_str(tuple) +
                                  ": multiple degree-" + std::to_string(k) +
                                  " cells share this tuple");
    return it->second[0];
  }
  if (!auto_complete)
    throw std::invalid_argument("missing face " + cell_str(tuple) +
                                " in degree " + std::to_string(k));
  // Create the cell; its own faces are resolved by the caller's sweep since
  // new cells are appended to the degree-k list.
  cells[k].push_back(tuple);
  const int idx = static_cast<int>(cells[k].size()) - 1;
  lookup[k][tuple].push_back(idx);
  return idx;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_cells(
    std::vector<std::vector<Cell>> cells, bool auto_complete) {
  for (size_t k = 0; k < cells.size(); ++k)
    for (const auto& c : cells[k])
      if (c.size() != k + 1)
        throw std::invalid_argument("degree-" + std::to_string(k) +
                                    " cell has " + std::to_string(c.size()) +
                                    " vertices");
  if (cells.empty()) cells.emplace_back();

  Lookup lookup(cells.size());
  for (size_t k = 0; k < cells.size(); ++k)
    for (size_t i = 0; i < cells[k].size(); ++i)
      lookup[k][cells[k][i]].push_back(static_cast<int>(i));

  SimplicialComplex sc;
  sc.faces_.resize(cells.size());
  // Sweep degrees top-down: auto-created faces land in degree k-1 before its
  // own sweep runs, so their faces get resolved in turn.
  for (int k = static_cast<int>(cells.size()) - 1; k >= 1; --k) {
    auto& fk = sc.faces_[k];
    for (size_t i = 0; i < cells[k].size(); ++i) {
      const Cell& c = cells[k][i];
      std::vector<int> f(c.size());
      for (size_t j = 0; j < c.size(); ++j) {
        Cell tuple = c;
        tuple.erase(tuple.begin() + static_cast<long>(j));
        f[j] = resolve_face(cells, lookup, tuple, k - 1, auto_complete);
      }
      fk.push_back(std::move(f));
    }
  }
  sc.cells_ = std::move(cells);
  sc.verify_dd();
  return sc;
}

SimplicialComplex SimplicialComplex::from_explicit(
    std::vector<std::vector<Cell>> cells,
    std::vector<std::vector<std::vector<int>>> faces) {
  if (faces.size() != cells.size())
    throw std::invalid_argument("faces table must match cells table in size");
  for (size_t k = 1; k < cells.size(); ++k) {
    if (faces[k].size() != cells[k].size())
      throw std::invalid_argument("faces list size mismatch in degree " +
                                  std::to_string(k));
    for (const auto& f : faces[k]) {
      if (f.size() != k + 1)
        throw std::invalid_argument("face list arity mismatch in degree " +
                                    std::to_string(k));
      for (int idx : f)
        if (idx < 0 || idx >= static_cast<int>(cells[k - 1].size()))
          throw std::invalid_argument("face index out of range in degree " +
                                      std::to_string(k));
    }
  }
  SimplicialComplex sc;
  sc.cells_ = std::move(cells);
  sc.faces_ = std::move(faces);
  sc.verify_dd();
  return sc;
}

int SimplicialComplex::count(int k) const {
  if (k < 0 || k > top_degree()) return 0;
  return static_cast<int>(cells_[k].size());
}

Eigen::MatrixXd SimplicialComplex::coboundary(int k) const {
  const int rows = count(k + 1);
  const int cols = count(k);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& f = faces_[k + 1][i];
    for (size_t j = 0; j < f.size(); ++j)
      d(i, f[j]) += (j % 2 == 0) ? 1.0 : -1.0;
  }
  return d;
}

double SimplicialComplex::coboundary_energy(int k,
                                            const Eigen::VectorXd& alpha) const {
  if (alpha.size() != count(k))
    throw std::invalid_argument("coboundary_energy: wrong dimension");
  double acc = 0.0;
  for (int i = 0; i < count(k + 1); ++i) {
    const auto& f = faces_[k + 1][i];
    double v = 0.0;
    for (size_t j = 0; j < f.size(); ++j)
      v += ((j % 2 == 0) ? 1.0 : -1.0) * alpha(f[j]);
    acc += v * v;
  }
  return acc;
}

void SimplicialComplex::verify_dd() const {
  for (int k = 0; k + 2 <= top_degree(); ++k) {
    for (int t = 0; t < count(k + 2); ++t) {
      std::map<int, long> acc;
      const auto& fo = faces_[k + 2][t];
      for (size_t j2 = 0; j2 < fo.size(); ++j2) {
        const long s2 = (j2 % 2 == 0) ? 1 : -1;
        const auto& fi = faces_[k + 1][fo[j2]];
        for (size_t j1 = 0; j1 < fi.size(); ++j1)
          acc[fi[j1]] += s2 * ((j1 % 2 == 0) ? 1 : -1);
      }
      for (const auto& [cell, v] : acc)
        if (v != 0)
          throw std::invalid_argument(
              "d o d != 0 at degree-" + std::to_string(k + 2) + " cell " +
              std::to_string(t) + " over cell " + std::to_string(cell));
    }
  }
}

ComplexFile read_complex_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open complex file: " + path.string());
  ComplexFile cf;
  int section = -2;  // -2 none, -1 labels, k >= 0 cells
  std::vector<std::pair<int, std::vector<int>>> raw_labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first.front() == '[') {
      if (first == "[labels]") {
        section = -1;
      } else if (first.rfind("[k=", 0) == 0 && first.back() == ']') {
        section = std::stoi(first.substr(3, first.size() - 4));
        if (section < 0)
          throw std::runtime_error("negative degree at line " +
                                   std::to_string(lineno));
        if (static_cast<size_t>(section) >= cf.cells.size())
          cf.cells.resize(section + 1);
      } else {
        throw std::runtime_error("unknown section " + first + " at line " +
                                 std::to_string(lineno));
      }
      continue;
    }
    std::vector<int> nums{std::stoi(first)};
    int v;
    while (ss >> v) nums.push_back(v);
    if (section == -2)
      throw std::runtime_error("data before any section at line " +
                               std::to_string(lineno));
    if (section == -1) {
      if (nums.size() < 2)
        throw std::runtime_error("label line needs edge-index and components");
      raw_labels.emplace_back(nums[0],
                              std::vector<int>(nums.begin() + 1, nums.end()));
    } else {
      if (nums.size() != static_cast<size_t>(section) + 1)
        throw std::runtime_error("tuple arity mismatch at line " +
                                 std::to_string(lineno));
      cf.cells[section].push_back(std::move(nums));
    }
  }
  if (!raw_labels.empty()) {
    cf.rank = static_cast<int>(raw_labels[0].second.size());
    const int edges =
        cf.cells.size() > 1 ? static_cast<int>(cf.cells[1].size()) : 0;
    cf.labels.assign(edges, std::vector<int>(cf.rank, 0));
    for (const auto& [idx, m] : raw_labels) {
      if (idx < 0 || idx >= edges)
        throw std::runtime_error("label edge-index out of range: " +
                                 std::to_string(idx));
      if (static_cast<int>(m.size()) != cf.rank)
        throw std::runtime_error("label rank mismatch at edge " +
                                 std::to_string(idx));
      cf.labels[idx] = m;
    }
  }
  return cf;
}

void write_complex_file(const std::filesystem::path& path,
                        const ComplexFile& cf) {
  std::ostringstream out;
  for (size_t k = 0; k < cf.cells.size(); ++k) {
    out << "[k=" << k << "]\n";
    for (const auto& c : cf.cells[k]) {
      for (size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
      out << "\n";
    }
  }
  if (!cf.labels.empty()) {
    out << "[labels]\n";
    for (size_t e = 0; e < cf.labels.size(); ++e) {
      out << e;
      for (int m : cf.labels[e]) out << " " << m;
      out << "\n";
    }
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write complex file: " + path.string());
  f << out.str();
}

}  // namespace specdens
