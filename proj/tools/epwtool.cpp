// epwtool: exact Lagrangian-data calculus for EPW sextics and GM varieties.
//
// Every command is deterministic given (inputs, seed, version); reports are
// byte-identical across --jobs settings.  Timing is reported only with
// --timing so that default output stays reproducible.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "epw/io.hpp"
#include "epw/projective.hpp"
#include "epw/rng.hpp"
#include "epw/verify.hpp"

using namespace epw;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string g_replay;  // the exact invocation, for error payloads
unsigned g_jobs = 1;
bool g_timing = false;

// CSV cells use ':' between coordinates so the column commas stay unambiguous
std::string csv_point(const Field& F, const std::vector<Fel>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ':';
    s += F.str(v[i]);
  }
  return s;
}

std::string resolve_out(const std::string& path) {
  if (path.empty() || path[0] == '/') return path;
  const char* dir = std::getenv("EPWTOOL_WORKDIR");
  if (!dir || !*dir) return path;
  return std::string(dir) + "/" + path;
}

json envelope(const std::string& command, const json& config) {
  json j;
  j["tool"] = "epwtool";
  j["version"] = kToolVersion;
  j["format_version"] = 1;
  j["command"] = command;
  j["config"] = config;
  return j;
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(resolve_out(out), std::ios::binary);
  if (!os) throw error("cannot write " + out);
  os << j.dump(2) << '\n';
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(resolve_out(out), std::ios::binary);
  if (!os) throw error("cannot write " + out);
  os << text;
}

Field field_from_flags(const std::string& field_s, uint32_t prime) {
  if (!field_s.empty()) return Field(parse_field_spec(field_s));
  if (prime) return Field::prime(prime);
  throw error("specify --prime P or --field SPEC");
}

// instances must live over a prime field for the exhaustive scans; rational
// instances reduce modulo the requested working prime
LagrangianInstance working_instance(const LagrangianInstance& inst, uint32_t prime) {
  const Field& F = inst.field;
  if (F.kind() == FieldKind::prime) {
    if (prime && prime != F.p())
      throw error("instance is over F_" + std::to_string(F.p()) + ", not F_" +
                  std::to_string(prime));
    return inst;
  }
  if (F.kind() == FieldKind::rationals) {
    if (!prime) throw error("a rational instance needs --prime to pick the working prime");
    Field Fp = Field::prime(prime);
    Matrix red(10, 20);
    for (size_t i = 0; i < 10; ++i)
      for (size_t j = 0; j < 20; ++j) {
        const mpq_t& v = inst.A.basis().at(i, j).r.raw();
        unsigned long den = mpz_fdiv_ui(mpq_denref(v), prime);
        if (den == 0) throw error("bad reduction at " + std::to_string(prime));
        unsigned long num = mpz_fdiv_ui(mpq_numref(v), prime);
        red.at(i, j) = Fp.mul(Fp.from_residue(uint32_t(num)),
                              Fp.inv(Fp.from_residue(uint32_t(den))));
      }
    LagrangianInstance out(Fp, Subspace(Fp, 20, red));
    if (!validate_lagrangian(Fp, out.A)) throw error("reduction is not Lagrangian");
    out.is_lagrangian = true;
    out.provenance = inst.provenance + ":mod" + std::to_string(prime);
    out.seed = inst.seed;
    out.seeded = inst.seeded;
    return out;
  }
  throw error("stratification scans need a prime field");
}

json report_json(const StratificationReport& rep, const Field& F) {
  json counts = json::object();
  for (size_t k = 0; k <= 10; ++k)
    if (rep.counts[k]) counts[std::to_string(k)] = rep.counts[k];
  json wits = json::object();
  for (size_t k = 0; k <= 10; ++k) {
    if (rep.witnesses[k].empty()) continue;
    json lst = json::array();
    for (const auto& pt : rep.witnesses[k]) lst.push_back(point_string(F, pt));
    wits[std::to_string(k)] = lst;
  }
  json j;
  j["dual"] = rep.dual;
  j["total"] = rep.total;
  j["exhaustive"] = rep.exhaustive;
  j["counts"] = counts;
  j["witness_cap"] = rep.witness_cap;
  j["witnesses"] = wits;
  j["elapsed_sec"] = g_timing ? rep.elapsed_sec : 0.0;
  return j;
}

json subspace_json(const Field& F, const Subspace& s) {
  json rows = json::array();
  for (size_t i = 0; i < s.dim(); ++i) rows.push_back(point_string(F, s.basis_row(i)));
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_replay += ' ';
    g_replay += argv[i];
  }

  CLI::App app{"exact EPW / Gushel-Mukai Lagrangian-data calculus"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--jobs", g_jobs, "worker count (reports are jobs-independent)")
      ->default_val(1);
  app.add_flag("--timing", g_timing, "include wall-clock timing in reports");

  std::string out, fmt = "json";
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--format", fmt, "json|csv for tabular commands");

  // gen-lagrangian
  auto* gen = app.add_subcommand("gen-lagrangian", "generate a seeded Lagrangian instance");
  uint64_t gen_seed = 0;
  uint32_t gen_prime = 0;
  std::string gen_field;
  int gen_effort = 0;
  uint64_t gen_budget = 1000000;
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--prime", gen_prime, "prime field modulus");
  gen->add_option("--field", gen_field, "field spec: rationals | prime P | prime_square P");
  gen->add_option("--ndv-effort", gen_effort, "run the decomposable scan at this effort (1..3)");
  gen->add_option("--ndv-budget", gen_budget, "sample budget for the scan");

  // stratify / dual-stratify
  auto* strat = app.add_subcommand("stratify", "exhaustive EPW stratification over P(V6)(F_p)");
  auto* dstrat = app.add_subcommand("dual-stratify", "dual stratification over P(V6*)(F_p)");
  std::string st_inst;
  uint32_t st_prime = 0;
  size_t st_cap = 32;
  for (auto* c : {strat, dstrat}) {
    c->add_option("--instance", st_inst, ".lag file")->required();
    c->add_option("--prime", st_prime, "working prime (required for rational instances)");
    c->add_option("--witness-cap", st_cap, "witness list cap per stratum");
  }

  // sextic-line
  auto* sx = app.add_subcommand("sextic-line", "EPW sextic restricted to a seeded random line");
  std::string sx_inst;
  uint64_t sx_seed = 0;
  sx->add_option("--instance", sx_inst, ".lag file")->required();
  sx->add_option("--seed", sx_seed, "line seed")->required();

  // build-gm
  auto* bgm = app.add_subcommand("build-gm", "build GM data from an instance and a hyperplane");
  std::string bg_inst, bg_v5;
  bgm->add_option("--instance", bg_inst, ".lag file")->required();
  bgm->add_option("--v5", bg_v5, "dual point cutting V5, 6 comma-separated elements")->required();

  // classify-fibers
  auto* clf = app.add_subcommand("classify-fibers", "first quadratic fibration fiber table");
  std::string cf_gm;
  uint32_t cf_prime = 0;
  clf->add_option("--gm", cf_gm, ".gm file")->required();
  clf->add_option("--prime", cf_prime, "must match the instance field");

  // double-cover-fiber
  auto* dcf = app.add_subcommand("double-cover-fiber", "the two sheets over a stratum-2 point");
  std::string dc_gm, dc_point, dc_pi0;
  int dc_sheet = 0;
  dcf->add_option("--gm", dc_gm, ".gm file")->required();
  dcf->add_option("--point", dc_point, "stratum-2 point of P(V6) off P(V5), 6 elements")
      ->required();
  dcf->add_option("--pi0-at", dc_pi0,
                  "V5 point (5 elements) whose fiber supplies the base line/plane")
      ->required();
  dcf->add_option("--sheet", dc_sheet, "plane sheet for fivefold data");

  // splitting-section
  auto* spl = app.add_subcommand("splitting-section", "the section over Y^2_{A,V5}");
  std::string sp_gm, sp_l0, sp_at;
  spl->add_option("--gm", sp_gm, ".gm file (threefold)")->required();
  spl->add_option("--l0-at", sp_l0, "sigma point of the fixed nice line, 5 elements")->required();
  spl->add_option("--at", sp_at, "point of Y^2_{A,V5}, 5 elements")->required();

  // cycle-check
  auto* cyc = app.add_subcommand("cycle-check", "cycle decompositions at boundary points");
  std::string cy_gm;
  int cy_points = 10;
  uint64_t cy_seed = 0;
  cyc->add_option("--gm", cy_gm, ".gm file")->required();
  cyc->add_option("--points", cy_points, "number of admissible boundary points to verify");
  cyc->add_option("--seed", cy_seed, "selection seed for the base point");

  // line-transform
  auto* lt = app.add_subcommand("line-transform", "data-level elementary transformation");
  std::string lt_inst, lt_v1, lt_v5;
  lt->add_option("--instance", lt_inst, ".lag file")->required();
  lt->add_option("--v1", lt_v1, "point of Y^2_A inside V5, 6 elements")->required();
  lt->add_option("--v5", lt_v5, "dual point of Y^2 on the dual side, 6 elements")->required();

  // hilbert
  auto* hb = app.add_subcommand("hilbert", "Hilbert data of linear/quadric sections of CGr(2,5)");
  int hb_h = 0, hb_c = 0;
  hb->add_option("--hyperplanes", hb_h, "h, so that 16-h coordinates remain")->required();
  hb->add_option("--quadrics", hb_c, "number of quadric cuts")->required();

  // sigma1-y2 experiment
  auto* s1 = app.add_subcommand(
      "sigma1-y2", "experiment: rational points of Sigma1 meeting Y^2_{A,V5} (threefolds)");
  std::string s1_gm;
  s1->add_option("--gm", s1_gm, ".gm file (threefold)")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "run the acceptance battery");
  std::string ver_level = "quick";
  ver->add_option("--level", ver_level, "quick|full");

  try {
    app.parse(argc, argv);

    if (*gen) {
      Field F = field_from_flags(gen_field, gen_prime);
      auto inst = random_instance(gen_seed, F);
      if (gen_effort > 0) decomposable_search(inst, gen_effort, gen_budget);
      if (out.empty()) {
        write_lag(std::cout, inst);
      } else {
        save_lag(resolve_out(out), inst);
      }
      return 0;
    }

    if (*strat || *dstrat) {
      auto inst0 = load_lag(st_inst);
      auto inst = working_instance(inst0, st_prime);
      auto rep = (*strat) ? stratify(inst, st_cap, g_jobs) : dual_stratify(inst, st_cap, g_jobs);
      json cfg{{"instance", st_inst},
               {"field", field_spec_string(inst.field.spec())},
               {"witness_cap", st_cap}};
      json j = envelope((*strat) ? "stratify" : "dual-stratify", cfg);
      j["payload"] = report_json(rep, inst.field);
      if (fmt == "csv") {
        std::string csv = "k,count\n";
        for (size_t k = 0; k <= 10; ++k)
          if (rep.counts[k]) csv += std::to_string(k) + "," + std::to_string(rep.counts[k]) + "\n";
        emit_text(csv, out);
      } else {
        emit(j, out);
      }
      return 0;
    }

    if (*sx) {
      auto inst = load_lag(sx_inst);
      const Field& F = inst.field;
      if (!F.finite()) throw error("sextic-line over Q needs explicit points; use a finite field");
      SplitMix64 rng(sx_seed);
      auto draw = [&] {
        std::vector<Fel> v(6);
        bool nz = false;
        for (auto& x : v) {
          x = F.element_from_index(rng.below(F.size()));
          nz = nz || !F.is_zero(x);
        }
        if (!nz) v[0] = F.one();
        return v;
      };
      auto v0 = draw(), v1 = draw();
      for (;;) {
        Matrix two(2, 6);
        for (size_t j = 0; j < 6; ++j) {
          two.at(0, j) = v0[j];
          two.at(1, j) = v1[j];
        }
        if (rank(F, two) == 2) break;
        v1 = draw();
      }
      auto sr = sextic_on_line(inst, v0, v1);
      json cfg{{"instance", sx_inst}, {"seed", sx_seed}};
      json j = envelope("sextic-line", cfg);
      json coeffs = json::array();
      for (const Fel& c : sr.s.c) coeffs.push_back(F.str(c));
      json payload;
      payload["v0"] = point_string(F, v0);
      payload["v1"] = point_string(F, v1);
      payload["chart"] = sr.chart;
      payload["used_extension"] = sr.used_extension;
      payload["degree"] = degree(F, sr.s);
      payload["coefficients_low_first"] = coeffs;
      json roots = json::array();
      for (auto& [r, m] : roots_with_multiplicity(F, sr.s)) {
        std::vector<Fel> v(6);
        for (size_t jx = 0; jx < 6; ++jx) v[jx] = F.add(v0[jx], F.mul(r, v1[jx]));
        roots.push_back(json{{"t", F.str(r)},
                             {"multiplicity", m},
                             {"point", point_string(F, v)},
                             {"stratum", stratum_of(inst, v)}});
      }
      payload["roots"] = roots;
      j["payload"] = payload;
      emit(j, out);
      return 0;
    }

    if (*bgm) {
      auto inst = load_lag(bg_inst);
      auto phi = parse_point(inst.field, bg_v5, 6);
      auto gm = build_gm(inst, phi);
      if (out.empty()) {
        write_gm(std::cout, gm);
      } else {
        save_gm(resolve_out(out), gm);
      }
      return 0;
    }

    if (*clf) {
      auto gm = load_gm(cf_gm);
      const Field& F = gm.field();
      if (cf_prime && (!F.finite() || F.p() != cf_prime))
        throw error("--prime does not match the instance field");
      if (!F.finite()) throw error("classify-fibers requires a finite field");
      std::string csv = "point,stratum,sigma1,label,corank,rationality\n";
      json rows = json::array();
      ProjectivePoints pts(F, 5);
      pts.for_each([&](const std::vector<Fel>& c) {
        auto fc = rho1_fiber_classify(gm, c);
        bool coherent = fc.label == predicted_fiber_label(gm.n, fc.stratum, fc.sigma1);
        if (!coherent) throw error("fiber table mismatch at " + point_string(F, c));
        std::string rat = fc.split_rational ? "split" : "inert";
        csv += csv_point(F, fc.v_bcoords) + "," + std::to_string(fc.stratum) + "," +
               (fc.sigma1 ? "1" : "0") + "," + fiber_label_name(fc.label) + "," +
               std::to_string(fc.corank) + "," + rat + "\n";
        rows.push_back(json{{"point", point_string(F, fc.v_bcoords)},
                            {"stratum", fc.stratum},
                            {"sigma1", fc.sigma1},
                            {"label", fiber_label_name(fc.label)},
                            {"corank", fc.corank},
                            {"rationality", rat}});
      });
      if (fmt == "csv") {
        emit_text(csv, out);
      } else {
        json j = envelope("classify-fibers",
                          json{{"gm", cf_gm}, {"table", gm.n == 3 ? "threefold" : "fivefold"}});
        j["payload"] = json{{"points", rows}};
        emit(j, out);
      }
      return 0;
    }

    if (*dcf) {
      auto gm = load_gm(dc_gm);
      const Field& F = gm.field();
      auto v = parse_point(F, dc_point, 6);
      auto at = parse_point(F, dc_pi0, 5);
      Subspace pi0_pair;
      if (gm.n == 3) {
        pi0_pair = line_of_point(gm, at);
      } else {
        auto fc = rho1_fiber_classify(gm, at);
        if (fc.label != FiberLabel::two_planes || !fc.split_rational)
          throw error("--pi0-at is not a split two-plane point");
        pi0_pair = fc.components[size_t(dc_sheet % 2)];
      }
      auto fib = double_cover_fiber(gm, to_w_coords(gm, pi0_pair), v);
      json j = envelope("double-cover-fiber", json{{"gm", dc_gm},
                                                   {"point", dc_point},
                                                   {"pi0_at", dc_pi0},
                                                   {"sheet", dc_sheet}});
      json payload;
      payload["rational"] = fib.rational;
      payload["double_root"] = fib.double_root;
      json sheets = json::array();
      for (const auto& s : fib.spaces) sheets.push_back(subspace_json(F, from_w_coords(gm, s)));
      payload["sheets_pair_coords"] = sheets;
      j["payload"] = payload;
      emit(j, out);
      return 0;
    }

    if (*spl) {
      auto gm = load_gm(sp_gm);
      const Field& F = gm.field();
      auto u0 = parse_point(F, sp_l0, 5);
      auto at = parse_point(F, sp_at, 5);
      Subspace L0 = line_of_point(gm, u0);
      Subspace S = splitting_section(gm, L0, u0, at);
      json j = envelope("splitting-section",
                        json{{"gm", sp_gm}, {"l0_at", sp_l0}, {"at", sp_at}});
      j["payload"] = json{{"section_pair_coords", subspace_json(F, S)},
                          {"contains_l0", S.contains(F, L0)}};
      emit(j, out);
      return 0;
    }

    if (*cyc) {
      auto gm = load_gm(cy_gm);
      const Field& F = gm.field();
      if (!F.finite()) throw error("cycle-check requires a finite field");
      // boundary points of P(V5): nice lines (threefold) or split two-plane
      // points (fivefold); the base point is chosen by the seed
      std::vector<std::vector<Fel>> boundary;
      std::vector<FiberClassification> cls;
      ProjectivePoints pts(F, 5);
      pts.for_each([&](const std::vector<Fel>& c) {
        auto fc = rho1_fiber_classify(gm, c);
        if (gm.n == 3 && fc.label == FiberLabel::line) {
          boundary.push_back(fc.v_bcoords);
          cls.push_back(fc);
        }
        if (gm.n == 5 && fc.label == FiberLabel::two_planes && fc.split_rational) {
          boundary.push_back(fc.v_bcoords);
          cls.push_back(fc);
        }
      });
      if (boundary.empty()) throw error("no usable boundary points over this field");
      SplitMix64 rng(cy_seed);
      size_t base = rng.below(boundary.size());
      auto u0 = boundary[base];
      Subspace pi0 = (gm.n == 3) ? line_of_point(gm, u0) : cls[base].components[0];
      json checks = json::array();
      int ok = 0, tried = 0;
      for (size_t i = 0; i < boundary.size() && ok < cy_points; ++i) {
        if (i == base) continue;
        auto run_one = [&](int sheet) {
          CycleCheckReport rep = (gm.n == 3)
                                     ? cycle_check_threefold(gm, pi0, u0, boundary[i])
                                     : cycle_check_fivefold(gm, pi0, u0, boundary[i], sheet);
          json c;
          c["at"] = point_string(F, boundary[i]);
          if (gm.n == 5) c["sheet"] = sheet;
          c["ok"] = rep.ok;
          c["downgraded"] = rep.downgraded;
          c["failures"] = rep.failures;
          c["h_total"] = rep.h_total;
          c["h_residual"] = rep.h_residual;
          if (gm.n == 3) c["h_meet"] = rep.h_meet;
          checks.push_back(c);
          ++tried;
          if (rep.ok) ++ok;
        };
        run_one(0);
        if (gm.n == 5 && ok < cy_points) run_one(1);
      }
      json j = envelope("cycle-check", json{{"gm", cy_gm},
                                            {"points", cy_points},
                                            {"seed", cy_seed},
                                            {"base_point", point_string(F, u0)}});
      j["payload"] = json{{"verified", ok}, {"tried", tried}, {"checks", checks}};
      emit(j, out);
      if (ok < cy_points)
        throw error("only " + std::to_string(ok) + " of " + std::to_string(cy_points) +
                    " requested cycle checks verified");
      return 0;
    }

    if (*lt) {
      auto inst = load_lag(lt_inst);
      const Field& F = inst.field;
      auto v1 = parse_point(F, lt_v1, 6);
      auto phi = parse_point(F, lt_v5, 6);
      auto ltd = line_transform_data(inst, v1, phi);
      json j = envelope("line-transform",
                        json{{"instance", lt_inst}, {"v1", lt_v1}, {"v5", lt_v5}});
      json payload;
      payload["conditions"] = json{{"v1_stratum2", ltd.cond_v1_stratum2},
                                   {"v5_dual_stratum2", ltd.cond_v5_dual_stratum2},
                                   {"transverse", ltd.cond_transverse}};
      payload["V3"] = subspace_json(F, ltd.V3);
      payload["L0_pair"] = subspace_json(F, ltd.L0_pair);
      payload["L0p_pair_dual_side"] = subspace_json(F, ltd.L0p_pair);
      payload["l0_nice"] = ltd.l0_nice;
      payload["l0p_nice"] = ltd.l0p_nice;
      j["payload"] = payload;
      emit(j, out);
      return 0;
    }

    if (*hb) {
      auto hd = hilbert_polynomial(hb_h, hb_c);
      json j = envelope("hilbert", json{{"hyperplanes", hb_h}, {"quadrics", hb_c}});
      json poly = json::array();
      for (const Rat& c : hd.poly) poly.push_back(c.str());
      j["payload"] = json{{"polynomial_low_first", poly}, {"table_t0_t6", hd.table}};
      emit(j, out);
      return 0;
    }

    if (*s1) {
      auto gm = load_gm(s1_gm);
      const Field& F = gm.field();
      auto conic = sigma1_conic(gm);
      // where the kernel conic meets Y^2_{A,V5} over F_q
      int on_y2 = 0, total = 0;
      json hits = json::array();
      for (const auto& kp : conic.kernel_samples) {
        ++total;
        size_t k = stratum_of(gm.lag, v6_of_b(gm, kp));
        if (k >= 2) {
          ++on_y2;
          hits.push_back(point_string(F, kp));
        }
      }
      json j = envelope("sigma1-y2", json{{"gm", s1_gm}});
      j["payload"] = json{{"sampled_parameters", total},
                          {"on_y2", on_y2},
                          {"proper_intersection", on_y2 < total},
                          {"points", hits}};
      emit(j, out);
      return 0;
    }

    if (*ver) {
      verify::Level lvl;
      if (ver_level == "quick") lvl = verify::Level::quick;
      else if (ver_level == "full") lvl = verify::Level::full;
      else throw error("--level must be quick or full");
      auto rs = verify::run_acceptance(lvl, g_jobs, &std::cerr);
      json j = envelope("verify", json{{"level", ver_level}});
      json list = json::array();
      for (const auto& r : rs)
        list.push_back(json{{"id", r.id},
                            {"pass", r.pass},
                            {"detail", r.detail},
                            {"seconds", g_timing ? r.seconds : 0.0},
                            {"replay", "epwtool verify --level " + ver_level}});
      j["payload"] = json{{"criteria", list}, {"all_pass", verify::all_pass(rs)}};
      emit(j, out);
      return verify::all_pass(rs) ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    json err{{"error", e.what()}, {"replay", g_replay}};
    std::cerr << err.dump(2) << '\n';
    return 1;
  }
  return 0;
}
