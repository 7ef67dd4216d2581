#include "carnot/jsonio.hpp"

#include "carnot/catalog.hpp"

#include <cstdio>

namespace carnot {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["coeff"] = to_string(c);
    t["exponents"] = e;
    terms.push_back(std::move(t));
  }
  return terms;
}

Json poly_to_json(const PolyD& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["coeff"] = format_double(c);
    t["exponents"] = e;
    terms.push_back(std::move(t));
  }
  return terms;
}

Json field_to_json(const VectorField& f) {
  Json out;
  out["name"] = f.name;
  out["text"] = f.str();
  Json comps = Json::array();
  for (size_t i = 0; i < f.comp.size(); ++i) {
    Json c;
    c["coordinate"] = f.vars->names[i];
    c["poly"] = poly_to_json(f.comp[i]);
    comps.push_back(std::move(c));
  }
  out["components"] = comps;
  out["zero"] = f.is_zero();
  if (f.hom_degree >= 0) out["homogeneous_degree"] = f.hom_degree;
  return out;
}

namespace {

template <class S>
Json taylor_common(const TaylorResult<S>& t, const VarSet& vars) {
  Json out;
  out["space"] = t.space == TaylorResult<S>::Space::M ? "M" : "G";
  out["degree"] = t.degree;
  out["variables"] = vars.names;
  out["polynomial"] = poly_to_json(t.polynomial);
  out["text"] = t.polynomial.str();
  Json center = Json::array();
  for (int i = 0; i < t.center.size(); ++i) center.push_back(to_string(t.center[i]));
  out["center"] = center;
  Json audit;
  audit["constraints"] = t.constraint_count;
  audit["unknowns"] = t.unknown_count;
  audit["rank"] = t.rank;
  out["audit"] = audit;
  if (t.lifted) {
    out["lifted_polynomial"] = poly_to_json(*t.lifted);
    out["lifted_text"] = t.lifted->str();
  }
  if (t.cross_checked) {
    Json cc;
    cc["rank"] = t.cross_rank;
    cc["unknowns"] = t.cross_unknowns;
    cc["full_rank"] = t.cross_rank_full;
    cc["match"] = t.cross_match;
    out["cross_check"] = cc;
  }
  return out;
}

}  // namespace

Json taylor_to_json(const TaylorResult<Rational>& t, const VarSet& vars) {
  return taylor_common(t, vars);
}

Json taylor_to_json(const TaylorResult<double>& t, const VarSet& vars) {
  return taylor_common(t, vars);
}

Json remainder_report_to_json(const RemainderReport& r) {
  Json out;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json row;
    row["lambda"] = format_double(s.lambda);
    row["distance"] = format_double(s.distance);
    row["remainder"] = format_double(s.remainder);
    row["sup_factor"] = format_double(s.sup_factor);
    samples.push_back(std::move(row));
  }
  out["samples"] = samples;
  if (r.slope_defined) out["fitted_slope"] = format_double(r.fitted_slope);
  out["exact_zero"] = r.exact_zero;
  Json consts;
  for (const auto& [k, v] : r.estimated_constants) consts[k] = format_double(v);
  out["estimated_constants"] = consts;
  out["degenerate_samples"] = r.degenerate_count;
  out["notes"] = r.notes;
  out["pass"] = r.pass;
  return out;
}

Json sup_transfer_report_to_json(const SupTransferReport& r) {
  Json out;
  out["sup_on_M"] = format_double(r.sup_on_M);
  out["sup_on_G"] = format_double(r.sup_on_G);
  out["rel_gap"] = format_double(r.rel_gap);
  out["samples"] = r.samples;
  out["lift_failures"] = r.lift_failures;
  out["notes"] = r.notes;
  out["pass"] = r.pass;
  return out;
}

Json probe_report_to_json(const ProbeReport& r) {
  Json out;
  Json sup = Json::array();
  for (double v : r.sup_by_degree) sup.push_back(format_double(v));
  out["sup_by_degree"] = sup;
  Json grid = Json::array();
  for (double v : r.k_grid) grid.push_back(format_double(v));
  out["k_grid"] = grid;
  out["k_max"] = r.k_max;
  out["rho"] = format_double(r.rho);
  if (r.smallest_K)
    out["smallest_K"] = format_double(*r.smallest_K);
  else
    out["smallest_K"] = nullptr;
  out["notes"] = r.notes;
  return out;
}

Json harmonic_report_to_json(const HarmonicReport& r) {
  Json out;
  out["kernel_dim"] = r.kernel_dim;
  out["kernel_basis"] = r.kernel_basis;
  out["checks"] = r.checks;
  out["violations"] = r.violations;
  out["pass"] = r.pass;
  return out;
}

Json envelope(const std::string& command, Json inputs, Json results, bool pass,
              Json extra_meta) {
  Json out;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["results"] = std::move(results);
  out["pass"] = pass;
  Json meta;
  meta["tool_version"] = kToolVersion;
  meta["catalog_version"] = kCatalogVersion;
  for (auto& [k, v] : extra_meta.items()) meta[k] = v;
  out["meta"] = meta;
  return out;
}

}  // namespace carnot
