#include <map>
#include <sstream>

#include "scltopo/cellcx.hpp"

namespace scltopo {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

ComplexSpec parse_2cx(std::string_view text) {
  ComplexSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    auto bad = [&](const std::string& why) {
      return Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw bad("expected 'vertex <name>'");
      spec.vertices.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) throw bad("expected 'edge <name> <src> <dst>'");
      spec.edges.push_back({tok[1], tok[2], tok[3]});
    } else if (tok[0] == "face") {
      if (tok.size() < 3 || tok[2] != "=") throw bad("expected 'face <name> = <signed edges>'");
      ComplexSpec::FaceDecl face{tok[1], {}};
      for (std::size_t i = 3; i < tok.size(); ++i) {
        const std::string& t = tok[i];
        if (t.size() < 2 || (t.back() != '+' && t.back() != '-')) throw bad("signed edge needs a +/- suffix: " + t);
        face.word.emplace_back(t.substr(0, t.size() - 1), t.back() == '+' ? 1 : -1);
      }
      spec.faces.push_back(std::move(face));
    } else {
      throw bad("unknown directive '" + tok[0] + "'");
    }
  }
  return spec;
}

TwoComplex build_complex(const ComplexSpec& spec) {
  std::map<std::string, int> vid, eid;
  for (std::size_t i = 0; i < spec.vertices.size(); ++i)
    if (!vid.emplace(spec.vertices[i], static_cast<int>(i)).second)
      throw Error(ErrorKind::InvalidComplex, "duplicate vertex '" + spec.vertices[i] + "'");
  std::vector<EdgeCell> edges;
  for (const auto& e : spec.edges) {
    auto s = vid.find(e.source), t = vid.find(e.target);
    if (s == vid.end() || t == vid.end())
      throw Error(ErrorKind::InvalidComplex, "edge '" + e.name + "' has a dangling endpoint");
    if (!eid.emplace(e.name, static_cast<int>(edges.size())).second)
      throw Error(ErrorKind::InvalidComplex, "duplicate edge '" + e.name + "'");
    edges.push_back({s->second, t->second, e.name});
  }
  std::vector<FaceCell> faces;
  for (const auto& f : spec.faces) {
    FaceCell fc{{}, f.name};
    for (const auto& [name, sign] : f.word) {
      auto it = eid.find(name);
      if (it == eid.end()) throw Error(ErrorKind::InvalidComplex, "face '" + f.name + "' uses undeclared edge '" + name + "'");
      fc.word.push_back({it->second, sign});
    }
    faces.push_back(std::move(fc));
  }
  return TwoComplex(spec.vertices, std::move(edges), std::move(faces));
}

std::string print_2cx(const TwoComplex& complex) {
  std::ostringstream out;
  for (int v = 0; v < complex.vertex_count(); ++v) out << "vertex " << complex.vertex_name(v) << '\n';
  for (const auto& e : complex.edges())
    out << "edge " << e.name << ' ' << complex.vertex_name(e.source) << ' ' << complex.vertex_name(e.target) << '\n';
  for (const auto& f : complex.faces()) {
    out << "face " << f.name << " =";
    for (const auto& se : f.word) out << ' ' << complex.edge(se.edge).name << (se.sign > 0 ? '+' : '-');
    out << '\n';
  }
  return out.str();
}

Subcomplex parse_cells(const TwoComplex& complex, std::string_view text) {
  CellSet cells;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected '<kind> <name>'");
    auto unknown = [&] { return Error(ErrorKind::UnknownCell, "line " + std::to_string(lineno) + ": no " + tok[0] + " '" + tok[1] + "'"); };
    if (tok[0] == "vertex") {
      auto id = complex.find_vertex(tok[1]);
      if (!id) throw unknown();
      cells.vertices.push_back(*id);
    } else if (tok[0] == "edge") {
      auto id = complex.find_edge(tok[1]);
      if (!id) throw unknown();
      cells.edges.push_back(*id);
    } else if (tok[0] == "face") {
      auto id = complex.find_face(tok[1]);
      if (!id) throw unknown();
      cells.faces.push_back(*id);
    } else {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": unknown cell kind '" + tok[0] + "'");
    }
  }
  return induced_subcomplex(complex, cells);
}

std::string print_cells(const TwoComplex& complex, const Subcomplex& sub) {
  std::ostringstream out;
  const CellSet c = sub.cells();
  for (int v : c.vertices) out << "vertex " << complex.vertex_name(v) << '\n';
  for (int e : c.edges) out << "edge " << complex.edge(e).name << '\n';
  for (int f : c.faces) out << "face " << complex.face(f).name << '\n';
  return out.str();
}

}  // namespace scltopo
