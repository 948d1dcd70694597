#include <functional>
#include <map>
#include <sstream>

#include "scltopo/admsurf.hpp"

namespace scltopo {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct Line {
  int number;
  std::vector<std::string> tok;
};

int parse_int(const std::string& s, const std::function<Error(const std::string&)>& bad) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw bad("expected an integer, got '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw bad("expected an integer, got '" + s + "'");
  }
}

}  // namespace

AdmissibleData parse_adm(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string complex_text;
  std::vector<Line> lines;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = split_ws(line);
    if (tok.empty()) {
      complex_text += '\n';
      continue;
    }
    if (tok[0] == "vertex" || tok[0] == "edge" || tok[0] == "face") {
      complex_text += line + '\n';
    } else {
      complex_text += '\n';
      lines.push_back({lineno, std::move(tok)});
    }
  }
  AdmissibleData data;
  data.target = build_complex(parse_2cx(complex_text));
  const TwoComplex& S = data.target;

  std::map<std::string, int> vid, hid, fid;
  for (const auto& l : lines) {
    auto bad = [&](const std::string& why) { return Error(ErrorKind::Parse, "line " + std::to_string(l.number) + ": " + why); };
    if (l.tok.size() < 2 && l.tok[0] != "incompressible") throw bad("missing piece name");
    auto declare = [&](std::map<std::string, int>& ids, int next) {
      if (!ids.emplace(l.tok[1], next).second) throw bad("duplicate piece name '" + l.tok[1] + "'");
    };
    if (l.tok[0] == "vdisc") declare(vid, static_cast<int>(vid.size()));
    else if (l.tok[0] == "handle") declare(hid, static_cast<int>(hid.size()));
    else if (l.tok[0] == "cdisc") declare(fid, static_cast<int>(fid.size()));
  }
  data.vpieces.resize(vid.size());
  data.hpieces.resize(hid.size());
  data.fpieces.resize(fid.size());

  for (const auto& l : lines) {
    const auto& t = l.tok;
    std::function<Error(const std::string&)> bad = [&](const std::string& why) {
      return Error(ErrorKind::Parse, "line " + std::to_string(l.number) + ": " + why);
    };
    auto lookup = [&](const std::map<std::string, int>& ids, const std::string& name, const char* what) {
      auto it = ids.find(name);
      if (it == ids.end()) throw Error(ErrorKind::UnknownCell, "line " + std::to_string(l.number) + ": unknown " + what + " '" + name + "'");
      return it->second;
    };
    auto side_ref = [&](const std::string& s) -> std::optional<SideRef> {
      if (s == "-") return std::nullopt;
      auto colon = s.rfind(':');
      if (colon == std::string::npos) throw bad("expected '-' or <cdisc>:<index>, got '" + s + "'");
      return SideRef{lookup(fid, s.substr(0, colon), "cdisc"), parse_int(s.substr(colon + 1), bad)};
    };
    if (t[0] == "loop") {
      if (t.size() < 3) throw bad("expected 'loop <coeff> <signed edges>'");
      LoopTerm term;
      term.coefficient = parse_int(t[1], bad);
      for (std::size_t i = 2; i < t.size(); ++i) {
        const std::string& s = t[i];
        if (s.size() < 2 || (s.back() != '+' && s.back() != '-')) throw bad("signed edge needs a +/- suffix: " + s);
        auto e = S.find_edge(s.substr(0, s.size() - 1));
        if (!e) throw Error(ErrorKind::UnknownCell, "line " + std::to_string(l.number) + ": unknown edge '" + s + "'");
        term.word.push_back({*e, s.back() == '+' ? 1 : -1});
      }
      data.chain.push_back(std::move(term));
    } else if (t[0] == "vdisc") {
      // vdisc <name> <vertex> : <handle>@<end> <gap> ...
      if (t.size() < 4 || t[3] != ":" || (t.size() - 4) % 2 != 0) throw bad("expected 'vdisc <name> <vertex> : (<handle>@<end> <gap>)*'");
      VPiece& v = data.vpieces[vid.at(t[1])];
      v.name = t[1];
      auto vx = S.find_vertex(t[2]);
      if (!vx) throw Error(ErrorKind::UnknownCell, "line " + std::to_string(l.number) + ": unknown vertex '" + t[2] + "'");
      v.vertex = *vx;
      for (std::size_t i = 4; i < t.size(); i += 2) {
        auto at = t[i].rfind('@');
        if (at == std::string::npos) throw bad("expected <handle>@<end>, got '" + t[i] + "'");
        v.ends.push_back({lookup(hid, t[i].substr(0, at), "handle"), parse_int(t[i].substr(at + 1), bad)});
        auto ref = side_ref(t[i + 1]);
        v.gaps.push_back(ref ? std::optional<CornerRef>(CornerRef{ref->fpiece, ref->side}) : std::nullopt);
      }
    } else if (t[0] == "handle") {
      // handle <name> <edge> <left> <right>
      if (t.size() != 5) throw bad("expected 'handle <name> <edge> <left> <right>'");
      HPiece& h = data.hpieces[hid.at(t[1])];
      h.name = t[1];
      auto e = S.find_edge(t[2]);
      if (!e) throw Error(ErrorKind::UnknownCell, "line " + std::to_string(l.number) + ": unknown edge '" + t[2] + "'");
      h.edge = *e;
      h.left = side_ref(t[3]);
      h.right = side_ref(t[4]);
    } else if (t[0] == "cdisc") {
      // cdisc <name> <face> <+|-> : <handle>*
      if (t.size() < 5 || t[4] != ":" || (t[3] != "+" && t[3] != "-")) throw bad("expected 'cdisc <name> <face> <+|-> : <handles>'");
      FPiece& f = data.fpieces[fid.at(t[1])];
      f.name = t[1];
      auto fc = S.find_face(t[2]);
      if (!fc) throw Error(ErrorKind::UnknownCell, "line " + std::to_string(l.number) + ": unknown face '" + t[2] + "'");
      f.face = *fc;
      f.sign = t[3] == "+" ? 1 : -1;
      for (std::size_t i = 5; i < t.size(); ++i) f.handles.push_back(lookup(hid, t[i], "handle"));
    } else if (t[0] == "bdry") {
      // bdry <handle>@<L|R> | <vdisc>  <circle> <degree> [: (<coeff> <face>)*]
      if (t.size() < 4 || (t.size() > 4 && (t[4] != ":" || t.size() % 2 != 1)))
        throw bad("expected 'bdry <anchor> <circle> <degree> [: (<coeff> <face>)*]'");
      BoundaryAssignment ba;
      auto at = t[1].rfind('@');
      if (at != std::string::npos) {
        ba.anchor.handle = lookup(hid, t[1].substr(0, at), "handle");
        const std::string side = t[1].substr(at + 1);
        if (side != "L" && side != "R") throw bad("anchor side must be L or R");
        ba.anchor.side = side == "L" ? Side::L : Side::R;
      } else {
        ba.anchor.vpiece = lookup(vid, t[1], "vdisc");
      }
      ba.circle = parse_int(t[2], bad);
      ba.degree = parse_int(t[3], bad);
      for (std::size_t k = 5; k < t.size(); k += 2) {
        auto fc = S.find_face(t[k + 1]);
        if (!fc) throw Error(ErrorKind::UnknownCell, "line " + std::to_string(l.number) + ": unknown face '" + t[k + 1] + "'");
        ba.track.add(*fc, parse_int(t[k], bad));
      }
      data.boundary.push_back(ba);
    } else if (t[0] == "incompressible") {
      if (t.size() != 2 || (t[1] != "yes" && t[1] != "no")) throw bad("expected 'incompressible yes|no'");
      data.incompressible = t[1] == "yes";
    } else {
      throw bad("unknown directive '" + t[0] + "'");
    }
  }
  return data;
}

std::string print_adm(const AdmissibleData& data) {
  const TwoComplex& S = data.target;
  std::ostringstream out;
  out << print_2cx(S);
  for (const auto& term : data.chain) {
    out << "loop " << term.coefficient;
    for (const auto& se : term.word) out << ' ' << S.edge(se.edge).name << (se.sign > 0 ? '+' : '-');
    out << '\n';
  }
  auto ref = [&](const std::optional<SideRef>& r) {
    return r ? data.fpieces.at(r->fpiece).name + ":" + std::to_string(r->side) : std::string("-");
  };
  for (const auto& v : data.vpieces) {
    out << "vdisc " << v.name << ' ' << S.vertex_name(v.vertex) << " :";
    for (std::size_t t = 0; t < v.ends.size(); ++t) {
      out << ' ' << data.hpieces.at(v.ends[t].handle).name << '@' << v.ends[t].end << ' ';
      out << (v.gaps[t] ? ref(SideRef{v.gaps[t]->fpiece, v.gaps[t]->corner}) : std::string("-"));
    }
    out << '\n';
  }
  for (const auto& h : data.hpieces)
    out << "handle " << h.name << ' ' << S.edge(h.edge).name << ' ' << ref(h.left) << ' ' << ref(h.right) << '\n';
  for (const auto& f : data.fpieces) {
    out << "cdisc " << f.name << ' ' << S.face(f.face).name << ' ' << (f.sign > 0 ? '+' : '-') << " :";
    for (int h : f.handles) out << ' ' << data.hpieces.at(h).name;
    out << '\n';
  }
  for (const auto& ba : data.boundary) {
    out << "bdry ";
    if (ba.anchor.vpiece >= 0) out << data.vpieces.at(ba.anchor.vpiece).name;
    else out << data.hpieces.at(ba.anchor.handle).name << '@' << (ba.anchor.side == Side::L ? 'L' : 'R');
    out << ' ' << ba.circle << ' ' << ba.degree;
    if (!ba.track.empty()) {
      out << " :";
      for (const auto& [f, c] : ba.track.terms()) out << ' ' << to_string(c) << ' ' << S.face(f).name;
    }
    out << '\n';
  }
  if (!data.incompressible) out << "incompressible no\n";
  return out.str();
}

}  // namespace scltopo
