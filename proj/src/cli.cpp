#include "ramp1/cli.hpp"

#include <algorithm>
#include <sstream>

#include "ramp1/parse.hpp"

namespace ramp1 {

namespace {

int parse_order(const std::string& text, size_t at, int min_value) {
  size_t idx = 0;
  int e = 0;
  try {
    e = std::stoi(text, &idx);
  } catch (const std::exception&) {
    throw parse_error(at, "bad ramification order");
  }
  if (idx != text.size() || e < min_value)
    throw parse_error(at, "bad ramification order");
  return e;
}

}  // namespace

RamCondition parse_condition(const std::string& text, const FieldSpec* spec) {
  size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw parse_error(0, "condition syntax is point:e");
  PointP1 P = parse_point(text.substr(0, colon), spec);
  int e = parse_order(text.substr(colon + 1), colon + 1, 0);
  return {P, e};
}

BranchCondition parse_branch_condition(const std::string& text,
                                       const FieldSpec* spec) {
  size_t colon = text.find(':');
  size_t arrow = text.find("->");
  if (colon == std::string::npos || arrow == std::string::npos ||
      arrow < colon)
    throw parse_error(0, "branch syntax is point:e->value");
  PointP1 P = parse_point(text.substr(0, colon), spec);
  int e = parse_order(text.substr(colon + 1, arrow - colon - 1), colon + 1, 1);
  PointP1 v = parse_point(text.substr(arrow + 2), spec);
  return {P, v, e};
}

namespace {

RamFilter filter_of(const std::string& name) {
  if (name == "at-least") return RamFilter::at_least;
  if (name == "exact") return RamFilter::exact;
  if (name == "nowhere-else") return RamFilter::exact_nowhere_else;
  fail(errc::parse_error, "unknown filter " + name);
}

std::string point_text(const PointP1& P) {
  if (P.is_infinity()) return "inf";
  std::string t = render(P.value());
  if (P.spec()->k() > 1) t += "  [degree " + std::to_string(P.spec()->k()) + "]";
  return t;
}

struct Ctx {
  const RunConfig& cfg;
  const FieldSpec* spec;
  Json result;
  Json warnings = Json::array();
  std::ostringstream table;
  int exit_code = 0;

  void warn(const std::string& code, const std::string& msg) {
    Json w;
    w["code"] = code;
    w["message"] = msg;
    warnings.push_back(std::move(w));
  }

  RatMap the_map() {
    if (cfg.maps.empty()) fail(errc::parse_error, "a --map is required");
    return parse_map_expression(cfg.maps.front(), spec);
  }
  std::vector<RamCondition> ram_conds() {
    std::vector<RamCondition> out;
    for (const auto& c : cfg.conds) out.push_back(parse_condition(c, spec));
    return out;
  }
};

void cmd_analyze(Ctx& ctx) {
  RatMap f = ctx.the_map();
  RamProfile prof = ramification_profile(f);
  ctx.result["map"] = json_map(f);
  ctx.result["separable"] = true;
  ctx.result["profile"] = json_profile(prof);

  ctx.table << "map: " << render(f) << "  (degree " << f.degree() << ")\n";
  ctx.table << "point                e     d     wild\n";
  for (const auto& pt : prof.points) {
    std::string p = point_text(pt.point);
    p.resize(std::max<size_t>(p.size(), 20), ' ');
    ctx.table << p << " " << pt.e << "     " << pt.d << "     "
              << (pt.wild ? "yes" : "no") << "\n";
  }
  ctx.table << "total different: " << prof.total_different
            << "  (2d-2 = " << 2 * f.degree() - 2 << ")  rh_ok: "
            << (prof.rh_ok ? "yes" : "no") << "\n";
}

void cmd_deform(Ctx& ctx) {
  RatMap f = ctx.the_map();
  auto conds = ctx.ram_conds();
  DeformationReport rep = solve_first_order(f, conds);
  ctx.result["map"] = json_map(f);
  Json cj = Json::array();
  for (const auto& c : conds) {
    Json e;
    e["point"] = json_point(c.point);
    e["e"] = c.e;
    cj.push_back(std::move(e));
  }
  ctx.result["conditions"] = std::move(cj);
  ctx.result["report"] = json_deformation(rep);
  if (rep.solver_dim != rep.formula_dim) ctx.exit_code = 1;

  ctx.table << "map: " << render(f) << "\n";
  ctx.table << "solver_dim:  " << rep.solver_dim << "\n";
  ctx.table << "formula_dim: " << rep.formula_dim << "  (deltas:";
  for (int d : rep.deltas) ctx.table << " " << d;
  ctx.table << ")\n";
  ctx.table << (rep.solver_dim == rep.formula_dim ? "agreement: yes"
                                                  : "agreement: NO")
            << "\n";
}

void cmd_expected_dim(Ctx& ctx) {
  if (ctx.cfg.d <= 0) fail(errc::parse_error, "--d is required");
  const uint64_t p = ctx.spec->p();
  std::vector<std::pair<int, int>> e_delta;
  for (size_t i = 0; i < ctx.cfg.e_list.size(); ++i) {
    int e = ctx.cfg.e_list[i];
    int delta;
    if (i < ctx.cfg.delta_list.size())
      delta = ctx.cfg.delta_list[i];
    else
      delta = (e > 0 && (uint64_t)e % p != 0) ? 1 : 0;
    e_delta.emplace_back(e, delta);
  }
  auto fixed = expected_dim_fixed_target(ctx.cfg.d, e_delta, ctx.cfg.g_source);
  int varying = expected_dim_varying_source(
      ctx.cfg.d, {ctx.cfg.g_source, ctx.cfg.g_target}, ctx.cfg.e_list);
  auto bn = brill_noether_dims(ctx.cfg.d, ctx.cfg.genus, ctx.cfg.e_list,
                               ctx.cfg.wild_count);

  if (fixed)
    ctx.result["fixed_target_dim"] = *fixed;
  else
    ctx.result["fixed_target_dim"] = "indeterminate";
  ctx.result["varying_source_dim"] = varying;
  Json bnj;
  bnj["expected_dim"] = bn.expected_dim;
  bnj["branch_fiber_dim"] = bn.branch_fiber_dim;
  if (bn.wild_locus_dim)
    bnj["wild_locus_dim"] = *bn.wild_locus_dim;
  else
    bnj["wild_locus_dim"] = "inapplicable";
  ctx.result["brill_noether"] = std::move(bnj);

  ctx.table << "fixed target:  "
            << (fixed ? std::to_string(*fixed) : std::string("indeterminate"))
            << "\n";
  ctx.table << "varying source: " << varying << "\n";
  ctx.table << "moduli expected: " << bn.expected_dim
            << "   branch fiber: " << bn.branch_fiber_dim << "\n";
  if (bn.wild_locus_dim)
    ctx.table << "wild locus: " << *bn.wild_locus_dim << "\n";
}

void cmd_count(Ctx& ctx) {
  if (ctx.cfg.d <= 0) fail(errc::parse_error, "--d is required");
  auto conds = ctx.ram_conds();
  std::vector<BranchCondition> fixed;
  for (const auto& b : ctx.cfg.branches)
    fixed.push_back(parse_branch_condition(b, ctx.spec));
  RamFilter filter = filter_of(ctx.cfg.filter);
  Budget budget(ctx.cfg.budget);

  Json rows = Json::array();
  std::vector<std::pair<uint32_t, double>> quotients;
  ctx.table << "level  size    raw        separable  exact      mod_pgl2\n";
  for (uint32_t m = 1; m <= ctx.cfg.tower; ++m) {
    EnumCounts c;
    if (!fixed.empty()) {
      // branch values pinned: one linear stratum per level
      Extension ext = extend_canonical(ctx.spec, m);
      std::vector<BranchCondition> bc;
      for (const auto& b : fixed)
        bc.push_back({ext.embed_point(b.point), ext.embed_point(b.value),
                      b.e});
      SearchSpace space = linear_system_fixed_branch(ext.top(), ctx.cfg.d, bc);
      c = enumerate_maps(space, filter, budget, ctx.cfg.workers);
    } else {
      c = free_branch_count(ctx.spec, ctx.cfg.d, conds, m, filter, budget,
                            ctx.cfg.workers);
    }
    Rat quot = count_mod_pgl2(c.exact, ctx.spec, m);
    if (!quot.integral())
      ctx.warn("non-integral-quotient",
               "level " + std::to_string(m) +
                   " count is not divisible by |PGL2|");
    Json row;
    row["level"] = m;
    u128 qm = 1;
    for (uint32_t i = 0; i < m; ++i) qm *= ctx.spec->size();
    row["field_size"] = (uint64_t)qm;
    row["raw"] = c.raw;
    row["separable"] = c.separable;
    row["exact"] = c.exact;
    row["mod_pgl2"] = json_rat(quot);
    rows.push_back(std::move(row));
    quotients.emplace_back(m, quot.value());
    ctx.table << m << "      " << (uint64_t)qm << "      " << c.raw << "  "
              << c.separable << "  " << c.exact << "  " << quot.num << "/"
              << quot.den << "\n";
  }
  ctx.result["rows"] = std::move(rows);
  DimensionEstimate est = estimate_dimension(quotients, ctx.spec->size());
  ctx.result["dimension_estimate"] = json_estimate(est);

  std::vector<int> es;
  for (const auto& c : conds) es.push_back(c.e);
  auto bn = brill_noether_dims(ctx.cfg.d, 0, es, ctx.cfg.wild_count);
  ctx.result["brill_noether_expected"] = bn.expected_dim;
  if (est.estimate)
    ctx.table << "dimension estimate: " << *est.estimate
              << (est.stable ? " (stable)" : " (unstable)")
              << "   expected: " << bn.expected_dim << "\n";
}

void cmd_reduce(Ctx& ctx) {
  RatMap f = ctx.the_map();
  ReductionTranscript t = reduce_wild_to_tame(f);
  ctx.result["transcript"] = json_transcript(t);
  ctx.table << "input: " << render(t.initial) << "\n";
  for (const auto& s : t.steps) {
    if (s.kind == ReductionStep::Kind::subtract_inseparable)
      ctx.table << "  subtract " << render(s.poly) << "\n";
    else
      ctx.table << "  invert target\n";
  }
  ctx.table << "tame:  " << render(t.final) << "\n";
}

void cmd_lift(Ctx& ctx) {
  RatMap f = ctx.the_map();
  FieldElem c = parse_element(ctx.cfg.c_value, ctx.spec);
  RatMap lifted = lift_tame_to_wild(f, c);
  ctx.result["input"] = json_map(f);
  ctx.result["c"] = render(c);
  ctx.result["lifted"] = json_map(lifted);
  ctx.table << "lifted: " << render(lifted) << "  (degree "
            << lifted.degree() << ")\n";
}

void cmd_construct(Ctx& ctx) {
  std::vector<std::pair<PointP1, int>> conds;
  for (const auto& c : ctx.cfg.conds) {
    RamCondition rc = parse_condition(c, ctx.spec);
    conds.emplace_back(rc.point, rc.e);
  }
  FieldElem c = parse_element(ctx.cfg.c_value, ctx.spec);
  FieldElem cp = parse_element(ctx.cfg.cp_value, ctx.spec);
  RatMap f = construct_wild_polynomial(ctx.spec, conds, c, cp);
  RamProfile prof = ramification_profile(f);
  ctx.result["map"] = json_map(f);
  ctx.result["profile"] = json_profile(prof);
  ctx.table << "map: " << render(f) << "\n";
}

struct GoldenCheck {
  std::string name;
  bool pass;
  std::string detail;
};

void golden_remark_reduction(const FieldSpec* f5, const std::string& input,
                             const std::string& expected,
                             std::vector<GoldenCheck>* checks,
                             const std::string& name) {
  GoldenCheck c{name, false, ""};
  RatMap in = parse_map_expression(input, f5);
  RamProfile prof = ramification_profile(in);
  bool shape_ok = in.degree() == 15;
  int simple = 0;
  for (const auto& pt : prof.points) {
    if (pt.point.is_infinity()) {
      shape_ok = shape_ok && pt.e == 5 && pt.wild;
    } else {
      // six simple points, all sixth roots of unity
      shape_ok = shape_ok && pt.e == 2 && pt.d == 1 &&
                 pt.point.value().pow(6).is_one();
      ++simple;
    }
  }
  shape_ok = shape_ok && simple == 6 && prof.rh_ok;
  ReductionTranscript t = reduce_wild_to_tame(in);
  RatMap want = parse_map_expression(expected, f5);
  bool reduction_ok = t.final == want && render(t.final) == render(want);
  c.pass = shape_ok && reduction_ok;
  if (!shape_ok) c.detail = "input profile mismatch";
  if (!reduction_ok) c.detail += " reduction mismatch: " + render(t.final);
  checks->push_back(std::move(c));
}

void cmd_verify_paper(Ctx& ctx) {
  const uint64_t p = ctx.spec->p();
  std::vector<GoldenCheck> checks;

  if (p == 5) {
    golden_remark_reduction(
        ctx.spec, "(x^5*(x^10+x^7-2*x)+1)/(x^10+x^7-2*x)", "x^7-2*x", &checks,
        "remark-reduction-1");
    golden_remark_reduction(
        ctx.spec,
        "(x^5*(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)+x^5+x^4-x^3+2*x)"
        "/(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)",
        "(x^2+2*x+1)/(x^5+x^4-x^3+2*x)", &checks, "remark-reduction-2");
  }

  {
    FamilyReport fam = verify_example_family(ctx.spec);
    GoldenCheck c{"two-parameter-wild-family", fam.all_ok, ""};
    for (const auto& s : fam.samples)
      if (s.degenerate)
        ctx.warn("degenerate-sample", "skipped t1=" + render(s.t1) +
                                          " t2=" + render(s.t2) + ": " + s.note);
    checks.push_back(std::move(c));
  }

  if (p == 3) {
    // x^5 + t x^3 + x has the same ramification divisor for every t
    GoldenCheck c{"fixed-ramification-family", true, ""};
    std::vector<std::string> rendered;
    for (uint64_t t = 0; t < 3; ++t) {
      Poly num(ctx.spec);
      num.set_coeff(5, ctx.spec->one());
      num.set_coeff(3, ctx.spec->from_int((int64_t)t));
      num.set_coeff(1, ctx.spec->one());
      RatMap f = RatMap::reduce(num, Poly::constant(ctx.spec, ctx.spec->one()));
      RamProfile prof = ramification_profile(f);
      std::ostringstream os;
      for (const auto& pt : prof.points) {
        os << point_text(pt.point) << " e=" << pt.e << " d=" << pt.d << ";";
        if (!pt.point.is_infinity())
          c.pass = c.pass && pt.e == 2 && pt.point.value().pow(4).is_one();
        else
          c.pass = c.pass && pt.e == 5;
      }
      c.pass = c.pass && prof.points.size() == 5 && prof.rh_ok;
      rendered.push_back(os.str());
    }
    for (const auto& r : rendered) c.pass = c.pass && r == rendered.front();
    if (!c.pass) c.detail = "divisor varies with t";
    checks.push_back(std::move(c));
  }

  if (p >= 3) {
    GoldenCheck c{"wild-constructor", true, ""};
    // every admissible multiset of finite indices at the points 1, 2, ...
    std::vector<std::vector<int>> shapes{{}, {2}};
    if (p >= 5) {
      shapes.push_back({3});
      shapes.push_back({4});
      shapes.push_back({2, 2});
      shapes.push_back({3, 2});
      shapes.push_back({2, 2, 2});
    }
    for (const auto& shape : shapes) {
      int total = 0;
      for (int e : shape) total += e - 1;
      if (total > (int)p - 2) continue;
      std::vector<std::pair<PointP1, int>> conds;
      for (size_t i = 0; i < shape.size(); ++i)
        conds.emplace_back(
            PointP1::affine(ctx.spec->from_int((int64_t)i + 1)), shape[i]);
      RatMap f = construct_wild_polynomial(ctx.spec, conds, ctx.spec->one(),
                                           ctx.spec->one());
      RamProfile prof = ramification_profile(f);
      bool ok = f.degree() == (int)p && prof.rh_ok;
      size_t expected_points = shape.size() + 1;
      ok = ok && prof.points.size() == expected_points;
      for (const auto& pt : prof.points) {
        if (pt.point.is_infinity()) {
          ok = ok && pt.e == (int)p;
        } else {
          bool found = false;
          for (auto& [cp, ce] : conds)
            if (cp == pt.point) found = pt.e == ce;
          ok = ok && found;
        }
      }
      if (!ok) {
        c.pass = false;
        c.detail = "constructor profile mismatch";
      }
    }
    checks.push_back(std::move(c));
  }

  Json cj = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    cj.push_back(std::move(e));
    all = all && c.pass;
    ctx.table << (c.pass ? "pass  " : "FAIL  ") << c.name << "\n";
  }
  ctx.result["checks"] = std::move(cj);
  ctx.result["all_pass"] = all;
  if (!all) ctx.exit_code = 1;
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult out;
  Json doc;
  doc["schema_version"] = 1;
  doc["command"] = config.command;
  Json cfg;
  cfg["p"] = config.p;
  cfg["k"] = config.k;
  cfg["maps"] = config.maps;
  cfg["conds"] = config.conds;
  cfg["branches"] = config.branches;
  cfg["d"] = config.d;
  cfg["tower"] = config.tower;
  cfg["budget"] = config.budget;
  cfg["seed"] = config.seed;
  cfg["workers"] = config.workers;
  cfg["filter"] = config.filter;
  doc["config"] = std::move(cfg);

  try {
    if (config.p < 2) fail(errc::parse_error, "--p is required");
    const FieldSpec* spec =
        FieldSpec::get(config.p, config.k, config.modulus);
    Json field = json_field(spec);
    doc["field"] = field;

    Ctx ctx{config, spec, Json::object(), Json::array(), {}, 0};
    const std::string& cmd = config.command;
    if (cmd == "analyze")
      cmd_analyze(ctx);
    else if (cmd == "deform")
      cmd_deform(ctx);
    else if (cmd == "expected-dim")
      cmd_expected_dim(ctx);
    else if (cmd == "count")
      cmd_count(ctx);
    else if (cmd == "reduce")
      cmd_reduce(ctx);
    else if (cmd == "lift")
      cmd_lift(ctx);
    else if (cmd == "construct")
      cmd_construct(ctx);
    else if (cmd == "verify-paper")
      cmd_verify_paper(ctx);
    else
      fail(errc::parse_error, "unknown command " + cmd);

    doc["result"] = std::move(ctx.result);
    doc["warnings"] = std::move(ctx.warnings);
    out.doc = std::move(doc);
    out.table = ctx.table.str();
    out.exit_code = ctx.exit_code;
  } catch (const parse_error& e) {
    Json err;
    err["code"] = errc_name(e.code());
    err["message"] = e.what();
    err["position"] = e.position();
    doc["error"] = std::move(err);
    out.doc = std::move(doc);
    out.table = std::string("error: ") + e.what() + "\n";
    out.exit_code = 2;
  } catch (const error& e) {
    Json err;
    err["code"] = errc_name(e.code());
    err["message"] = e.what();
    doc["error"] = std::move(err);
    out.doc = std::move(doc);
    out.table = std::string("error: ") + e.what() + "\n";
    out.exit_code = e.code() == errc::verification_failed ? 1 : 2;
  } catch (const std::exception& e) {
    Json err;
    err["code"] = "Internal";
    err["message"] = e.what();
    doc["error"] = std::move(err);
    out.doc = std::move(doc);
    out.table = std::string("error: ") + e.what() + "\n";
    out.exit_code = 2;
  }
  return out;
}

}  // namespace ramp1
