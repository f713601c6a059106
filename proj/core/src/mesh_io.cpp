#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "vemsf/errors.hpp"
#include "vemsf/mesh.hpp"

namespace vemsf {

void write_mesh(const PolygonalMesh& mesh, std::ostream& out) {
  out << "vemsf-mesh 1\n";
  out << std::setprecision(17);
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& p : mesh.vertices()) out << p.x() << ' ' << p.y() << '\n';
  out << "cells " << mesh.num_cells() << '\n';
  for (const auto& ring : mesh.cells()) {
    out << ring.size();
    for (int v : ring) out << ' ' << v;
    out << '\n';
  }
  out << "boundary " << mesh.boundary_edges().size() << '\n';
  for (const auto& be : mesh.boundary_edges()) out << be.cell << ' ' << be.local_edge << ' ' << be.group << '\n';
}

void write_mesh(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_mesh(mesh, out);
  if (!out) throw Error("write to " + path + " failed");
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line, tokenized.
  std::istringstream next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw ParseError(line_no_ + 1, std::string("unexpected end of file, expecting ") + expecting);
  }

  int line() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

std::size_t read_section(LineReader& reader, const std::string& keyword) {
  auto ls = reader.next(keyword.c_str());
  std::string word;
  long long count = -1;
  if (!(ls >> word >> count) || word != keyword || count < 0)
    throw ParseError(reader.line(), "expected '" + keyword + " <count>'");
  return static_cast<std::size_t>(count);
}

void expect_end(std::istringstream& ls, const LineReader& reader) {
  std::string extra;
  if (ls >> extra) throw ParseError(reader.line(), "trailing token '" + extra + "'");
}

}  // namespace

PolygonalMesh read_mesh(std::istream& in, std::vector<std::string>* warnings) {
  LineReader reader(in);
  {
    auto ls = reader.next("header");
    std::string magic;
    int version = 0;
    if (!(ls >> magic >> version) || magic != "vemsf-mesh" || version != 1)
      throw ParseError(reader.line(), "expected header 'vemsf-mesh 1'");
  }

  const std::size_t nv = read_section(reader, "vertices");
  std::vector<Point2> vertices(nv);
  for (auto& p : vertices) {
    auto ls = reader.next("vertex coordinates");
    double x = 0, y = 0;
    if (!(ls >> x >> y)) throw ParseError(reader.line(), "expected two coordinates");
    expect_end(ls, reader);
    p = Point2(x, y);
  }

  const std::size_t nc = read_section(reader, "cells");
  std::vector<std::vector<int>> cells(nc);
  std::vector<int> cell_lines(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    auto ls = reader.next("cell ring");
    long long n = 0;
    if (!(ls >> n) || n < 0) throw ParseError(reader.line(), "expected vertex count");
    cells[c].resize(static_cast<std::size_t>(n));
    for (auto& v : cells[c])
      if (!(ls >> v)) throw ParseError(reader.line(), "ring shorter than its declared count");
    expect_end(ls, reader);
    cell_lines[c] = reader.line();
    if (n < 3) throw ValidationError("line " + std::to_string(reader.line()) + ": cell with fewer than 3 vertices");
  }

  const std::size_t nb = read_section(reader, "boundary");
  std::vector<BoundaryEdge> boundary(nb);
  for (auto& be : boundary) {
    auto ls = reader.next("boundary entry");
    if (!(ls >> be.cell >> be.local_edge >> be.group))
      throw ParseError(reader.line(), "expected 'cell local_edge group'");
    expect_end(ls, reader);
  }

  // Reorient clockwise rings, remapping local edge indices of boundary tags.
  for (std::size_t c = 0; c < nc; ++c) {
    auto& ring = cells[c];
    bool in_range = true;
    for (int v : ring) in_range &= v >= 0 && static_cast<std::size_t>(v) < nv;
    if (!in_range) continue;  // reported by validation
    std::vector<Point2> pts;
    for (int v : ring) pts.push_back(vertices[v]);
    if (signed_area(pts) >= 0.0) continue;

    const std::size_t n = ring.size();
    std::map<std::pair<int, int>, int> old_edges;
    for (std::size_t i = 0; i < n; ++i) old_edges[{ring[i], ring[(i + 1) % n]}] = static_cast<int>(i);
    std::reverse(ring.begin(), ring.end());
    std::map<int, int> remap;
    for (std::size_t j = 0; j < n; ++j) remap[old_edges.at({ring[(j + 1) % n], ring[j]})] = static_cast<int>(j);
    for (auto& be : boundary)
      if (be.cell == static_cast<int>(c) && remap.count(be.local_edge)) be.local_edge = remap[be.local_edge];
    if (warnings)
      warnings->push_back("line " + std::to_string(cell_lines[c]) + ": cell " + std::to_string(c) +
                          " was clockwise and has been reoriented");
  }

  return PolygonalMesh(std::move(vertices), std::move(cells), std::move(boundary));
}

PolygonalMesh read_mesh(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_mesh(in, warnings);
}

}  // namespace vemsf
