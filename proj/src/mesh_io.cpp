#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cubic/mesher.hpp"
#include "json.hpp"

namespace cubic {

namespace {

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f32(std::string& buf, double x) {
  const float f = static_cast<float>(x);
  std::uint32_t bits;
  std::memcpy(&bits, &f, 4);
  put_u32(buf, bits);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

float get_f32(const unsigned char* p) {
  std::uint32_t bits = get_u32(p);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string encode(const TriangleMesh& mesh, MeshFormat format) {
  std::string buf;
  switch (format) {
    case MeshFormat::StlBinary: {
      std::string header = "cubic27 binary STL";
      header.resize(80, '\0');
      buf += header;
      put_u32(buf, static_cast<std::uint32_t>(mesh.triangles.size()));
      for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        Vec3 n = mesh.normal(t);
        for (double c : n) put_f32(buf, c);
        for (auto v : mesh.triangles[t]) {
          for (double c : mesh.vertices[v]) put_f32(buf, c);
        }
        buf.push_back('\0');
        buf.push_back('\0');
      }
      break;
    }
    case MeshFormat::StlAscii: {
      std::ostringstream os;
      os << "solid cubic27\n";
      for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        Vec3 n = mesh.normal(t);
        os << "  facet normal " << fmt(n[0]) << ' ' << fmt(n[1]) << ' ' << fmt(n[2]) << "\n    outer loop\n";
        for (auto v : mesh.triangles[t]) {
          const auto& p = mesh.vertices[v];
          os << "      vertex " << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << "\n";
        }
        os << "    endloop\n  endfacet\n";
      }
      os << "endsolid cubic27\n";
      buf = os.str();
      break;
    }
    case MeshFormat::Obj: {
      std::ostringstream os;
      os << "# cubic27\n";
      for (const auto& p : mesh.vertices) os << "v " << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << "\n";
      for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << "\n";
      buf = os.str();
      break;
    }
  }
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Triangle soup to indexed mesh, merging bitwise equal vertices.
class SoupBuilder {
 public:
  void add(const std::array<Vec3, 3>& tri) {
    std::array<std::uint32_t, 3> idx{};
    for (std::size_t k = 0; k < 3; ++k) idx[k] = vertex(tri[k]);
    mesh_.triangles.push_back(idx);
  }
  TriangleMesh take() { return std::move(mesh_); }

 private:
  std::uint32_t vertex(const Vec3& p) {
    auto [it, inserted] = index_.try_emplace(p, static_cast<std::uint32_t>(mesh_.vertices.size()));
    if (inserted) mesh_.vertices.push_back(p);
    return it->second;
  }
  std::map<Vec3, std::uint32_t> index_;
  TriangleMesh mesh_;
};

}  // namespace

MeshFormat parse_mesh_format(std::string_view name) {
  if (name == "stl-binary" || name == "stl") return MeshFormat::StlBinary;
  if (name == "stl-ascii") return MeshFormat::StlAscii;
  if (name == "obj") return MeshFormat::Obj;
  throw Error(ErrorCode::ParseError, "unknown mesh format \"" + std::string(name) + "\"");
}

std::string_view mesh_format_extension(MeshFormat format) {
  return format == MeshFormat::Obj ? ".obj" : ".stl";
}

std::size_t write_mesh(const TriangleMesh& mesh, MeshFormat format, std::ostream& out) {
  const std::string buf = encode(mesh, format);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "write failed");
  return buf.size();
}

std::size_t write_mesh(const TriangleMesh& mesh, MeshFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  const std::size_t n = write_mesh(mesh, format, out);
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "cannot finish writing " + path);
  return n;
}

TriangleMesh read_stl(const std::string& path) {
  const std::string data = slurp(path);
  SoupBuilder soup;
  if (data.size() >= 84) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::uint32_t count = get_u32(bytes + 80);
    if (data.size() == 84 + 50 * static_cast<std::size_t>(count)) {
      for (std::uint32_t t = 0; t < count; ++t) {
        const unsigned char* rec = bytes + 84 + 50 * static_cast<std::size_t>(t);
        std::array<Vec3, 3> tri;
        for (std::size_t v = 0; v < 3; ++v) {
          for (std::size_t c = 0; c < 3; ++c) tri[v][c] = get_f32(rec + 12 + 12 * v + 4 * c);
        }
        soup.add(tri);
      }
      return soup.take();
    }
  }
  std::istringstream in(data);
  std::string word;
  in >> word;
  if (word != "solid") throw Error(ErrorCode::ParseError, path + " is neither binary nor ASCII STL");
  std::array<Vec3, 3> tri;
  std::size_t nv = 0;
  while (in >> word) {
    if (word == "vertex") {
      if (nv >= 3) throw Error(ErrorCode::ParseError, "facet with more than three vertices in " + path);
      Vec3& p = tri[nv++];
      if (!(in >> p[0] >> p[1] >> p[2])) throw Error(ErrorCode::ParseError, "bad vertex in " + path);
    } else if (word == "endfacet") {
      if (nv != 3) throw Error(ErrorCode::ParseError, "facet without three vertices in " + path);
      // ASCII values were printed from floats; round the same way as binary.
      for (auto& p : tri) {
        for (auto& c : p) c = static_cast<float>(c);
      }
      soup.add(tri);
      nv = 0;
    }
  }
  return soup.take();
}

TriangleMesh read_obj(const std::string& path) {
  std::istringstream in(slurp(path));
  TriangleMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p[0] >> p[1] >> p[2])) throw Error(ErrorCode::ParseError, "bad vertex in " + path);
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::array<std::uint32_t, 3> t{};
      for (auto& v : t) {
        std::string tok;
        if (!(ls >> tok)) throw Error(ErrorCode::ParseError, "face needs three vertices in " + path);
        const long idx = std::stol(tok.substr(0, tok.find('/')));
        if (idx < 1 || static_cast<std::size_t>(idx) > mesh.vertices.size()) {
          throw Error(ErrorCode::ParseError, "face index out of range in " + path);
        }
        v = static_cast<std::uint32_t>(idx - 1);
      }
      mesh.triangles.push_back(t);
    }
  }
  return mesh;
}

// ---------------------------------------------------------------------------

MeshReport mesh_report(const TriangleMesh& mesh, const ShapeField* field, const ShellSpec& spec) {
  MeshReport rep;
  rep.triangle_count = mesh.triangles.size();
  rep.vertex_count = mesh.vertices.size();
  rep.cell_diagonal = spec.cell_diagonal();

  std::unordered_map<std::uint64_t, int> edges;
  for (const auto& t : mesh.triangles) {
    for (std::size_t k = 0; k < 3; ++k) {
      std::uint32_t a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edges[(static_cast<std::uint64_t>(a) << 32) | b];
    }
  }
  for (const auto& [key, count] : edges) {
    if (count != 2) rep.open_edges.emplace_back(static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key));
  }
  std::sort(rep.open_edges.begin(), rep.open_edges.end());
  rep.watertight = rep.open_edges.empty() && !mesh.triangles.empty();

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (mesh.area(t) <= 1e-12) ++rep.degenerate_triangles;
  }

  if (!mesh.vertices.empty()) {
    rep.bounds.lo = mesh.vertices[0];
    rep.bounds.hi = mesh.vertices[0];
    for (const auto& p : mesh.vertices) {
      for (std::size_t i = 0; i < 3; ++i) {
        rep.bounds.lo[i] = std::min(rep.bounds.lo[i], p[i]);
        rep.bounds.hi[i] = std::max(rep.bounds.hi[i], p[i]);
      }
    }
  }

  if (field) {
    for (const auto& p : mesh.vertices) {
      const double shell = field->shell(p);
      if (shell > field->cylinders(p) || shell < spec.box.sdf(p)) continue;
      ++rep.shell_vertices;
      rep.max_shell_residual = std::max(rep.max_shell_residual, std::abs(shell));
    }
  }
  return rep;
}

std::string MeshReport::to_json(int indent) const {
  nlohmann::ordered_json doc;
  doc["schema"] = "cubic27.mesh-report";
  doc["schema_version"] = 1;
  doc["watertight"] = watertight;
  doc["triangles"] = triangle_count;
  doc["vertices"] = vertex_count;
  doc["degenerate_triangles"] = degenerate_triangles;
  doc["open_edge_count"] = open_edges.size();
  nlohmann::ordered_json open = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < open_edges.size() && i < 100; ++i) open.push_back({open_edges[i].first, open_edges[i].second});
  doc["open_edges"] = open;
  doc["shell_vertices"] = shell_vertices;
  doc["max_shell_residual"] = max_shell_residual;
  doc["cell_diagonal"] = cell_diagonal;
  doc["bounds"] = {{"min", bounds.lo}, {"max", bounds.hi}};
  return doc.dump(indent);
}

}  // namespace cubic
