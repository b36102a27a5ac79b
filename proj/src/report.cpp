#include "ramp1/report.hpp"

namespace ramp1 {

Json json_field(const FieldSpec* s) {
  Json j;
  j["p"] = s->p();
  j["k"] = s->k();
  j["modulus"] = s->modulus();
  return j;
}

Json json_elem(const FieldElem& v) {
  Json j;
  j["text"] = render(v);
  j["digits"] = v.digits();
  return j;
}

Json json_point(const PointP1& P) {
  Json j;
  j["infinity"] = P.is_infinity();
  if (!P.is_infinity()) {
    j["text"] = render(P);
    j["digits"] = P.value().digits();
  }
  j["field"] = json_field(P.spec());
  return j;
}

Json json_map(const RatMap& f) {
  Json j;
  j["text"] = render(f);
  j["degree"] = f.degree();
  return j;
}

Json json_profile(const RamProfile& prof) {
  Json j;
  j["degree"] = prof.map.degree();
  Json pts = Json::array();
  for (const auto& pt : prof.points) {
    Json e;
    e["point"] = json_point(pt.point);
    e["e"] = pt.e;
    e["d"] = pt.d;
    e["wild"] = pt.wild;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["total_different"] = prof.total_different;
  j["rh_ok"] = prof.rh_ok;
  j["rh_defect"] = prof.total_different - (2 * prof.map.degree() - 2);
  return j;
}

Json json_deformation(const DeformationReport& rep) {
  Json j;
  j["solver_dim"] = rep.solver_dim;
  j["formula_dim"] = rep.formula_dim;
  j["agree"] = rep.solver_dim == rep.formula_dim;
  j["deltas"] = rep.deltas;
  Json basis = Json::array();
  for (const auto& bv : rep.basis) {
    Json b;
    Json a = Json::array(), bb = Json::array(), x = Json::array();
    for (const auto& v : bv.a) a.push_back(render(v));
    for (const auto& v : bv.b) bb.push_back(render(v));
    for (const auto& v : bv.x) x.push_back(render(v));
    b["a"] = std::move(a);
    b["b"] = std::move(bb);
    b["x"] = std::move(x);
    basis.push_back(std::move(b));
  }
  j["basis"] = std::move(basis);
  Json motions = Json::array();
  for (const auto& xs : rep.point_motions) {
    Json x = Json::array();
    for (const auto& v : xs) x.push_back(render(v));
    motions.push_back(std::move(x));
  }
  j["point_motions"] = std::move(motions);
  return j;
}

Json json_rat(const Rat& r) {
  Json j;
  j["num"] = r.num;
  j["den"] = r.den;
  j["integral"] = r.integral();
  j["value"] = r.value();
  return j;
}

Json json_counts(const EnumCounts& c) {
  Json j;
  j["raw"] = c.raw;
  j["separable"] = c.separable;
  j["exact"] = c.exact;
  return j;
}

Json json_estimate(const DimensionEstimate& e) {
  Json j;
  j["empty"] = e.empty;
  if (e.estimate)
    j["estimate"] = *e.estimate;
  else
    j["estimate"] = nullptr;
  j["stable"] = e.stable;
  j["pair_estimates"] = e.pair_estimates;
  return j;
}

Json json_transcript(const ReductionTranscript& t) {
  Json j;
  j["initial"] = json_map(t.initial);
  j["final"] = json_map(t.final);
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json e;
    if (s.kind == ReductionStep::Kind::subtract_inseparable) {
      e["op"] = "subtract_inseparable";
      e["poly"] = render(s.poly);
    } else {
      e["op"] = "invert_target";
    }
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  return j;
}

Json json_family(const FamilyReport& r) {
  Json j;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json e;
    e["t1"] = render(s.t1);
    e["t2"] = render(s.t2);
    e["pass"] = s.pass;
    e["degenerate"] = s.degenerate;
    if (!s.note.empty()) e["note"] = s.note;
    samples.push_back(std::move(e));
  }
  j["samples"] = std::move(samples);
  j["all_ok"] = r.all_ok;
  return j;
}

}  // namespace ramp1
