#include "epw/io.hpp"

#include <fstream>
#include <sstream>

namespace epw {

namespace {

const char* ndv_name(NdvStatus s) {
  switch (s) {
    case NdvStatus::unknown: return "unknown";
    case NdvStatus::verified_over_field: return "verified_over_field";
    case NdvStatus::witness_found: return "witness_found";
  }
  return "?";
}

NdvStatus ndv_of_name(const std::string& s) {
  if (s == "unknown") return NdvStatus::unknown;
  if (s == "verified_over_field") return NdvStatus::verified_over_field;
  if (s == "witness_found") return NdvStatus::witness_found;
  throw error("bad ndv status: " + s);
}

void write_matrix(std::ostream& os, const Field& F, const Matrix& m) {
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << F.str(m.at(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is, const Field& F, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) throw error("truncated matrix block");
      m.at(i, j) = F.parse(tok);
    }
  return m;
}

std::string expect_line(std::istream& is, const std::string& what) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty()) return line;
  }
  throw error("unexpected end of file while reading " + what);
}

}  // namespace

std::string field_spec_string(const FieldSpec& fs) {
  switch (fs.kind) {
    case FieldKind::rationals: return "rationals";
    case FieldKind::prime: return "prime " + std::to_string(fs.p);
    case FieldKind::prime_square: return "prime_square " + std::to_string(fs.p);
  }
  throw error("bad field spec");
}

FieldSpec parse_field_spec(const std::string& s) {
  std::istringstream ss(s);
  std::string kind;
  ss >> kind;
  if (kind == "rationals") return {FieldKind::rationals, 0};
  uint32_t p = 0;
  if (!(ss >> p)) throw error("field spec needs a modulus: " + s);
  if (kind == "prime") return {FieldKind::prime, p};
  if (kind == "prime_square") return {FieldKind::prime_square, p};
  throw error("unknown field kind: " + kind);
}

std::string point_string(const Field& F, const std::vector<Fel>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += F.str(v[i]);
  }
  return out;
}

std::vector<Fel> parse_point(const Field& F, const std::string& s, size_t expect) {
  std::vector<Fel> v;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, ',')) v.push_back(F.parse(cur));
  if (v.size() != expect)
    throw error("expected " + std::to_string(expect) + " coordinates, got " +
                std::to_string(v.size()));
  return v;
}

void write_lag(std::ostream& os, const LagrangianInstance& inst) {
  const Field& F = inst.field;
  os << "epwlag 1\n";
  os << "field " << field_spec_string(F.spec()) << '\n';
  if (inst.seeded)
    os << "seed " << inst.seed << '\n';
  else
    os << "seed none\n";
  os << "provenance " << (inst.provenance.empty() ? "-" : inst.provenance) << '\n';
  os << "flags lagrangian=" << (inst.is_lagrangian ? 1 : 0) << " ndv=" << ndv_name(inst.ndv)
     << '\n';
  os << "A 10 20\n";
  write_matrix(os, F, inst.A.basis());
  os << "end\n";
}

LagrangianInstance read_lag(std::istream& is) {
  std::string line = expect_line(is, "header");
  if (line != "epwlag 1") throw error("instance file version mismatch: " + line);
  line = expect_line(is, "field");
  if (line.rfind("field ", 0) != 0) throw error("expected field line");
  Field F(parse_field_spec(line.substr(6)));
  line = expect_line(is, "seed");
  if (line.rfind("seed ", 0) != 0) throw error("expected seed line");
  std::string seed_s = line.substr(5);
  line = expect_line(is, "provenance");
  if (line.rfind("provenance ", 0) != 0) throw error("expected provenance line");
  std::string prov = line.substr(11);
  line = expect_line(is, "flags");
  if (line.rfind("flags ", 0) != 0) throw error("expected flags line");
  std::istringstream fl(line.substr(6));
  std::string tok;
  bool lagr = false;
  NdvStatus ndv = NdvStatus::unknown;
  while (fl >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw error("bad flag: " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "lagrangian") lagr = (val == "1");
    else if (key == "ndv") ndv = ndv_of_name(val);
    else throw error("unknown flag: " + key);
  }
  line = expect_line(is, "A header");
  if (line != "A 10 20") throw error("expected 'A 10 20'");
  Matrix m = read_matrix(is, F, 10, 20);
  line = expect_line(is, "end");
  if (line != "end") throw error("expected 'end'");

  Subspace A(F, 20, m);
  if (!A.basis().equals(F, m)) throw error("instance basis is not in reduced row echelon form");
  LagrangianInstance inst(F, A);
  if (lagr && !validate_lagrangian(F, A)) throw error("instance flagged Lagrangian but is not");
  inst.is_lagrangian = lagr;
  inst.ndv = ndv;
  inst.provenance = (prov == "-") ? "" : prov;
  if (seed_s != "none") {
    inst.seeded = true;
    inst.seed = std::stoull(seed_s);
  }
  return inst;
}

void save_lag(const std::string& path, const LagrangianInstance& inst) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot write " + path);
  write_lag(os, inst);
}

LagrangianInstance load_lag(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot read " + path);
  return read_lag(is);
}

void write_gm(std::ostream& os, const GMInstance& gm) {
  const Field& F = gm.field();
  os << "epwgm 1\n";
  write_lag(os, gm.lag);
  os << "phi ";
  for (size_t j = 0; j < 6; ++j) os << (j ? " " : "") << F.str(gm.phi[j]);
  os << '\n';
  os << "v0 ";
  for (size_t j = 0; j < 6; ++j) os << (j ? " " : "") << F.str(gm.v0[j]);
  os << '\n';
  os << "ell " << gm.ell << '\n';
  os << "V5 5 6\n";
  write_matrix(os, F, gm.V5.basis());
  os << "W " << gm.W.dim() << " 10\n";
  write_matrix(os, F, gm.W.basis());
  size_t dw = gm.W.dim();
  for (size_t m = 0; m < 5; ++m) {
    os << "quadric p" << m << ' ' << dw << '\n';
    std::vector<Fel> bm(5, F.zero());
    bm[m] = F.one();
    // restricted Pluecker Gram in the W basis
    Matrix g = gm.W.basis().mul(F, gm.plucker_gram_b[m]).mul(F, gm.W.basis().transpose());
    write_matrix(os, F, g);
  }
  os << "quadric q0 " << dw << '\n';
  write_matrix(os, F, gm.q0_on_W);
  os << "end\n";
}

GMInstance read_gm(std::istream& is) {
  std::string line = expect_line(is, "gm header");
  if (line != "epwgm 1") throw error("gm file version mismatch: " + line);
  LagrangianInstance inst = read_lag(is);
  const Field& F = inst.field;
  line = expect_line(is, "phi");
  if (line.rfind("phi ", 0) != 0) throw error("expected phi line");
  std::vector<Fel> phi;
  {
    std::istringstream ss(line.substr(4));
    std::string tok;
    while (ss >> tok) phi.push_back(F.parse(tok));
    if (phi.size() != 6) throw error("phi needs 6 coordinates");
  }
  GMInstance gm = build_gm(inst, phi);
  // verify the embedded derived data
  line = expect_line(is, "v0");
  if (line.rfind("v0 ", 0) != 0) throw error("expected v0 line");
  {
    std::istringstream ss(line.substr(3));
    std::string tok;
    std::vector<Fel> v0;
    while (ss >> tok) v0.push_back(F.parse(tok));
    for (size_t j = 0; j < 6; ++j)
      if (!F.eq(v0[j], gm.v0[j])) throw error("gm file v0 mismatch");
  }
  line = expect_line(is, "ell");
  if (line != "ell " + std::to_string(gm.ell)) throw error("gm file ell mismatch");
  line = expect_line(is, "V5 header");
  if (line != "V5 5 6") throw error("expected 'V5 5 6'");
  Matrix v5m = read_matrix(is, F, 5, 6);
  if (!v5m.equals(F, gm.V5.basis())) throw error("gm file V5 mismatch");
  line = expect_line(is, "W header");
  size_t dw = gm.W.dim();
  if (line != "W " + std::to_string(dw) + " 10") throw error("gm file W header mismatch");
  Matrix wm = read_matrix(is, F, dw, 10);
  if (!wm.equals(F, gm.W.basis())) throw error("gm file W mismatch");
  for (size_t m = 0; m < 5; ++m) {
    line = expect_line(is, "pluecker gram");
    if (line != "quadric p" + std::to_string(m) + " " + std::to_string(dw))
      throw error("gm file quadric header mismatch");
    Matrix g = read_matrix(is, F, dw, dw);
    Matrix expect = gm.W.basis().mul(F, gm.plucker_gram_b[m]).mul(F, gm.W.basis().transpose());
    if (!g.equals(F, expect)) throw error("gm file Pluecker gram mismatch");
  }
  line = expect_line(is, "q0 gram");
  if (line != "quadric q0 " + std::to_string(dw)) throw error("gm file q0 header mismatch");
  Matrix g0 = read_matrix(is, F, dw, dw);
  if (!g0.equals(F, gm.q0_on_W)) throw error("gm file q0 gram mismatch");
  line = expect_line(is, "end");
  if (line != "end") throw error("expected 'end'");
  return gm;
}

void save_gm(const std::string& path, const GMInstance& gm) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot write " + path);
  write_gm(os, gm);
}

GMInstance load_gm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot read " + path);
  return read_gm(is);
}

}  // namespace epw
