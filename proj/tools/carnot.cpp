#include "carnot/catalog.hpp"
#include "carnot/groupfile.hpp"
#include "carnot/harness.hpp"
#include "carnot/jsonio.hpp"
#include "carnot/taylor.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace carnot;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Mismatch:
    case ErrorCode::LiftNotInvariant:
    case ErrorCode::NotInvariant:
    case ErrorCode::TheoremViolation:
    case ErrorCode::LiftFailed:
    case ErrorCode::RankDeficient:
    case ErrorCode::Inconsistent:
      return 1;  // check failure
    default:
      return 2;  // input error
  }
}

RatVec parse_center(const std::string& csv, int expected) {
  std::vector<Rational> vals;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) vals.push_back(parse_rational(cur));
  if (static_cast<int>(vals.size()) != expected)
    throw Error(ErrorCode::BadInput,
                "center needs " + std::to_string(expected) + " coordinates, got " +
                    std::to_string(vals.size()));
  RatVec out(expected);
  for (int i = 0; i < expected; ++i) out[i] = vals[static_cast<size_t>(i)];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ModelRef {
  const QuotientModel* model = nullptr;
  std::shared_ptr<QuotientModel> owned;  // for --file models
  std::string label;

  const QuotientModel& get() const { return owned ? *owned : *model; }
};

ModelRef resolve_model(const std::string& group, const std::string& file) {
  ModelRef ref;
  if (!group.empty() && !file.empty())
    throw Error(ErrorCode::BadInput, "give either --group or --file, not both");
  if (!group.empty()) {
    ref.model = &catalog_model(group);
    ref.label = group;
    return ref;
  }
  if (!file.empty()) {
    ref.owned = std::make_shared<QuotientModel>(build_from_file(parse_group_file(read_file(file))));
    ref.label = file;
    return ref;
  }
  throw Error(ErrorCode::BadInput, "missing --group or --file");
}

Json meta_json(uint64_t seed, const HarnessConfig* cfg) {
  Json meta;
  meta["seed"] = seed;
  if (cfg) {
    meta["tolerance"] = format_double(cfg->tolerance);
    meta["b"] = format_double(cfg->b);
    meta["sup_samples"] = cfg->sup_samples;
    meta["rays"] = cfg->rays;
    Json scales = Json::array();
    for (double s : cfg->effective_scales()) scales.push_back(format_double(s));
    meta["scales"] = scales;
  }
  return meta;
}

void print_meta(std::ostream& out, uint64_t seed, const HarnessConfig* cfg) {
  out << "# meta tool=" << kToolVersion << " catalog=" << kCatalogVersion
      << " seed=" << seed;
  if (cfg)
    out << " tolerance=" << format_double(cfg->tolerance) << " b=" << cfg->b
        << " sup_samples=" << cfg->sup_samples << " rays=" << cfg->rays
        << " scales=" << cfg->effective_scales().size();
  out << "\n";
}

void emit(const Json& body, bool json_mode, const std::string& text) {
  if (json_mode)
    std::cout << body.dump(2) << "\n";
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Carnot-group quotient calculus and Taylor-theorem verification"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after the subcommand too

  uint64_t seed = 42;
  bool json_mode = false;
  double tolerance = 1e-9;
  app.add_option("--seed", seed, "seed for all sampled checks")->capture_default_str();
  app.add_flag("--json", json_mode, "machine-readable JSON output");
  app.add_option("--tolerance", tolerance, "numeric comparison tolerance")
      ->capture_default_str();

  // ---- catalog ----
  auto* cmd_catalog = app.add_subcommand("catalog", "list the built-in models");

  // ---- validate ----
  std::string val_file;
  auto* cmd_validate = app.add_subcommand("validate", "validate a group definition file");
  cmd_validate->add_option("file", val_file, "group definition file")->required();

  // ---- fields ----
  std::string f_group, f_file, f_space = "M";
  auto* cmd_fields = app.add_subcommand("fields", "print invariant or projected frames");
  cmd_fields->add_option("--group", f_group, "catalog model name");
  cmd_fields->add_option("--file", f_file, "group definition file");
  cmd_fields->add_option("--space", f_space, "G or M")->check(CLI::IsMember({"G", "M"}));

  // ---- taylor ----
  std::string t_group, t_file, t_f, t_center;
  int t_degree = 2;
  bool t_cross = false;
  auto* cmd_taylor = app.add_subcommand("taylor", "intrinsic Taylor polynomial on M");
  cmd_taylor->add_option("--group", t_group, "catalog model name");
  cmd_taylor->add_option("--file", t_file, "group definition file");
  cmd_taylor->add_option("--f", t_f, "function on M")->required();
  cmd_taylor->add_option("--center", t_center, "center q as CSV")->required();
  cmd_taylor->add_option("--degree", t_degree, "homogeneous degree k")->required();
  cmd_taylor->add_flag("--cross-check", t_cross, "also solve the intrinsic system");

  // ---- remainder ----
  std::string r_group, r_file, r_f, r_center;
  int r_degree = 2;
  auto* cmd_remainder =
      app.add_subcommand("remainder", "Taylor remainder decay along shrinking scales");
  cmd_remainder->add_option("--group", r_group, "catalog model name");
  cmd_remainder->add_option("--file", r_file, "group definition file");
  cmd_remainder->add_option("--f", r_f, "function on M")->required();
  cmd_remainder->add_option("--center", r_center, "center q as CSV")->required();
  cmd_remainder->add_option("--degree", r_degree, "Taylor degree k")->required();

  // ---- mvt ----
  std::string m_group, m_file, m_f, m_center;
  auto* cmd_mvt = app.add_subcommand("mvt", "mean-value ratio boundedness check");
  cmd_mvt->add_option("--group", m_group, "catalog model name");
  cmd_mvt->add_option("--file", m_file, "group definition file");
  cmd_mvt->add_option("--f", m_f, "function on M")->required();
  cmd_mvt->add_option("--center", m_center, "center q as CSV")->required();

  // ---- harmonic ----
  std::string h_group, h_file, h_op = "sublaplacian";
  int h_nmax = 3, h_wdeg = 4;
  auto* cmd_harmonic =
      app.add_subcommand("harmonic", "L-harmonicity of Taylor polynomials, exact");
  cmd_harmonic->add_option("--group", h_group, "catalog model name");
  cmd_harmonic->add_option("--file", h_file, "group definition file");
  cmd_harmonic->add_option("--operator", h_op,
                           "operator spec, e.g. \"X1^2 + Y1^2\" (default sub-Laplacian)");
  cmd_harmonic->add_option("--nmax", h_nmax, "max Taylor degree")->capture_default_str();
  cmd_harmonic->add_option("--wdeg", h_wdeg, "kernel weighted-degree cap")
      ->capture_default_str();

  // ---- probe ----
  std::string p_group, p_file, p_f, p_center;
  double p_rho = 1.0;
  int p_kmax = 4, p_samples = 200;
  std::vector<double> p_grid = {1, 2, 4, 8};
  auto* cmd_probe = app.add_subcommand("probe", "analyticity bound probe (diagnostic)");
  cmd_probe->add_option("--group", p_group, "catalog model name");
  cmd_probe->add_option("--file", p_file, "group definition file");
  cmd_probe->add_option("--f", p_f, "function on M")->required();
  cmd_probe->add_option("--center", p_center, "base point p as CSV")->required();
  cmd_probe->add_option("--rho", p_rho, "ball radius")->capture_default_str();
  cmd_probe->add_option("--kmax", p_kmax, "max derivative degree")->capture_default_str();
  cmd_probe->add_option("--samples", p_samples, "sample count")->capture_default_str();
  cmd_probe->add_option("--kgrid", p_grid, "candidate K grid")->expected(-1);

  // ---- suptransfer ----
  std::string s_group, s_file, s_phi, s_center;
  double s_radius = 1.0;
  int s_samples = 500;
  auto* cmd_sup =
      app.add_subcommand("suptransfer", "two-sided sup transfer check over matched balls");
  cmd_sup->add_option("--group", s_group, "catalog model name");
  cmd_sup->add_option("--file", s_file, "group definition file");
  cmd_sup->add_option("--phi", s_phi, "H-invariant function given on M")->required();
  cmd_sup->add_option("--center", s_center, "center q as CSV")->required();
  cmd_sup->add_option("--radius", s_radius, "ball radius")->capture_default_str();
  cmd_sup->add_option("--samples", s_samples, "sample count per side")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  HarnessConfig cfg;
  cfg.seed = seed;
  cfg.tolerance = tolerance;

  try {
    if (cmd_catalog->parsed()) {
      std::ostringstream out;
      Json rows = Json::array();
      for (const auto& e : catalog()) {
        const auto& M = *e.model;
        out << e.name << ": " << e.title << "\n";
        out << "  dim=" << M.group().dim() << " step=" << M.group().step()
            << " ell=" << M.ell() << " m=" << M.m() << " weights=";
        for (int i = 0; i < M.group().dim(); ++i)
          out << (i ? "," : "") << M.group().algebra().weight(i);
        out << "\n";
        Json row;
        row["name"] = e.name;
        row["title"] = e.title;
        row["dim"] = M.group().dim();
        row["step"] = M.group().step();
        row["ell"] = M.ell();
        row["m"] = M.m();
        row["weights"] = M.group().algebra().weights();
        row["test_functions"] = e.test_functions;
        rows.push_back(std::move(row));
      }
      print_meta(out, seed, nullptr);
      emit(envelope("catalog", Json::object(), Json{{"models", rows}}, true,
                    meta_json(seed, nullptr)),
           json_mode, out.str());
      return 0;
    }

    if (cmd_validate->parsed()) {
      auto gf = parse_group_file(read_file(val_file));
      QuotientModel model = build_from_file(gf);
      std::ostringstream out;
      out << "valid: dim=" << model.group().dim() << " step=" << model.group().step()
          << " ell=" << model.ell() << " m=" << model.m() << "\n";
      out << print_group_file(gf);
      print_meta(out, seed, nullptr);
      Json res;
      res["dim"] = model.group().dim();
      res["step"] = model.group().step();
      res["ell"] = model.ell();
      res["m"] = model.m();
      res["canonical"] = print_group_file(gf);
      emit(envelope("validate", Json{{"file", val_file}}, res, true,
                    meta_json(seed, nullptr)),
           json_mode, out.str());
      return 0;
    }

    if (cmd_fields->parsed()) {
      ModelRef ref = resolve_model(f_group, f_file);
      const QuotientModel& M = ref.get();
      std::ostringstream out;
      Json rows = Json::array();
      if (f_space == "G") {
        out << "left-invariant frame on G (" << ref.label << ")\n";
        for (int b = 0; b < M.group().dim(); ++b) {
          const auto& f = M.group().left_field(b);
          out << f.name << " = " << f.str() << "\n";
          rows.push_back(field_to_json(f));
        }
      } else {
        out << "projected frame on M (" << ref.label << ")\n";
        for (int b = 0; b < M.group().dim(); ++b) {
          const auto& f = M.projected_field(b);
          out << f.name << " = " << f.str();
          if (f.is_zero()) out << "   (zero operator)";
          out << "\n";
          rows.push_back(field_to_json(f));
        }
      }
      print_meta(out, seed, nullptr);
      emit(envelope("fields",
                    Json{{"model", ref.label}, {"space", f_space}},
                    Json{{"fields", rows}}, true, meta_json(seed, nullptr)),
           json_mode, out.str());
      return 0;
    }

    if (cmd_taylor->parsed()) {
      ModelRef ref = resolve_model(t_group, t_file);
      const QuotientModel& M = ref.get();
      RatVec q = parse_center(t_center, M.m());
      ExprPtr f = parse_expression(t_f, *M.slice());
      TaylorOptions opts;
      opts.cross_check = t_cross;
      opts.numeric_tol = tolerance;

      std::ostringstream out;
      Json res;
      if (f->is_polynomial()) {
        auto tay = taylor_on_M(M, f->to_polynomial(M.slice()), q, t_degree, opts);
        out << "P = " << tay.polynomial.str() << "\n";
        out << "audit: constraints=" << tay.constraint_count
            << " unknowns=" << tay.unknown_count << " rank=" << tay.rank << "\n";
        out << "lifted polynomial on G: " << tay.lifted->str() << "\n";
        if (tay.cross_checked) {
          out << "cross-check: rank=" << tay.cross_rank << "/" << tay.cross_unknowns
              << (tay.cross_rank_full
                      ? (tay.cross_match ? " match" : " MISMATCH")
                      : " rank-deficient (reported, not fatal)")
              << "\n";
        }
        res = taylor_to_json(tay, *M.slice());
      } else {
        auto tay = taylor_on_M(M, f, q, t_degree, opts);
        out << "P = " << tay.polynomial.str() << "\n";
        out << "audit: constraints=" << tay.constraint_count
            << " unknowns=" << tay.unknown_count << " rank=" << tay.rank << "\n";
        res = taylor_to_json(tay, *M.slice());
      }
      print_meta(out, seed, nullptr);
      emit(envelope("taylor",
                    Json{{"model", ref.label},
                         {"f", t_f},
                         {"center", t_center},
                         {"degree", t_degree},
                         {"cross_check", t_cross}},
                    res, true, meta_json(seed, nullptr)),
           json_mode, out.str());
      return 0;
    }

    if (cmd_remainder->parsed()) {
      ModelRef ref = resolve_model(r_group, r_file);
      const QuotientModel& M = ref.get();
      RatVec q = parse_center(r_center, M.m());
      ExprPtr f = parse_expression(r_f, *M.slice());
      auto report = check_taylor_remainder(M, f, q, r_degree, cfg);
      std::ostringstream out;
      out << "taylor remainder: model=" << ref.label << " f=" << r_f
          << " k=" << r_degree << "\n";
      if (report.exact_zero) out << "remainder vanishes symbolically\n";
      for (const auto& s : report.samples)
        out << "  lambda=" << format_double(s.lambda)
            << " dist=" << format_double(s.distance)
            << " |R|=" << format_double(s.remainder)
            << " sup=" << format_double(s.sup_factor) << "\n";
      if (report.slope_defined)
        out << "fitted slope = " << format_double(report.fitted_slope)
            << " (target >= " << r_degree + 1 << " - 0.2)\n";
      for (const auto& [k, v] : report.estimated_constants)
        out << k << " = " << format_double(v) << "\n";
      out << (report.pass ? "PASS" : "FAIL") << "\n";
      print_meta(out, seed, &cfg);
      emit(envelope("remainder",
                    Json{{"model", ref.label},
                         {"f", r_f},
                         {"center", r_center},
                         {"degree", r_degree}},
                    remainder_report_to_json(report), report.pass,
                    meta_json(seed, &cfg)),
           json_mode, out.str());
      return report.pass ? 0 : 1;
    }

    if (cmd_mvt->parsed()) {
      ModelRef ref = resolve_model(m_group, m_file);
      const QuotientModel& M = ref.get();
      RatVec q = parse_center(m_center, M.m());
      ExprPtr f = parse_expression(m_f, *M.slice());
      auto report = check_mean_value(M, f, q, cfg);
      std::ostringstream out;
      out << "mean value: model=" << ref.label << " f=" << m_f << "\n";
      for (const auto& s : report.samples)
        out << "  lambda=" << format_double(s.lambda)
            << " dist=" << format_double(s.distance)
            << " |f(p)-f(q)|=" << format_double(s.remainder)
            << " sup=" << format_double(s.sup_factor) << "\n";
      for (const auto& [k, v] : report.estimated_constants)
        out << k << " = " << format_double(v) << "\n";
      if (report.degenerate_count)
        out << "degenerate samples: " << report.degenerate_count << "\n";
      out << (report.pass ? "PASS" : "FAIL") << "\n";
      print_meta(out, seed, &cfg);
      emit(envelope("mvt",
                    Json{{"model", ref.label}, {"f", m_f}, {"center", m_center}},
                    remainder_report_to_json(report), report.pass,
                    meta_json(seed, &cfg)),
           json_mode, out.str());
      return report.pass ? 0 : 1;
    }

    if (cmd_harmonic->parsed()) {
      ModelRef ref = resolve_model(h_group, h_file);
      const QuotientModel& M = ref.get();
      OperatorSpec op =
          h_op == "sublaplacian" ? sublaplacian(M) : parse_operator(h_op, M);
      auto report = check_L_harmonicity(M, op, h_nmax, h_wdeg, default_centers(M));
      std::ostringstream out;
      out << "L-harmonicity: model=" << ref.label << " L=" << op.text
          << " sigma=" << op.sigma << "\n";
      out << "kernel dimension (wdeg<=" << h_wdeg << "): " << report.kernel_dim << "\n";
      for (const auto& f : report.kernel_basis) out << "  kernel: " << f << "\n";
      out << "exact checks run: " << report.checks << "\n";
      for (const auto& v : report.violations) out << "  " << v << "\n";
      out << (report.pass ? "PASS" : "FAIL") << "\n";
      print_meta(out, seed, nullptr);
      emit(envelope("harmonic",
                    Json{{"model", ref.label},
                         {"operator", op.text},
                         {"nmax", h_nmax},
                         {"wdeg", h_wdeg}},
                    harmonic_report_to_json(report), report.pass,
                    meta_json(seed, nullptr)),
           json_mode, out.str());
      return report.pass ? 0 : 1;
    }

    if (cmd_probe->parsed()) {
      ModelRef ref = resolve_model(p_group, p_file);
      const QuotientModel& M = ref.get();
      RatVec p = parse_center(p_center, M.m());
      ExprPtr f = parse_expression(p_f, *M.slice());
      auto report = probe_analyticity(M, f, p, p_rho, p_grid, p_kmax, p_samples, cfg);
      std::ostringstream out;
      out << "analyticity probe: model=" << ref.label << " f=" << p_f
          << " rho=" << format_double(p_rho) << " kmax=" << p_kmax << "\n";
      for (int k = 1; k <= report.k_max; ++k)
        out << "  S_" << k << " = "
            << format_double(report.sup_by_degree[static_cast<size_t>(k - 1)]) << "\n";
      if (report.smallest_K)
        out << "smallest K on grid with S_k <= K^k k!: "
            << format_double(*report.smallest_K) << "\n";
      else
        out << "no grid K satisfies S_k <= K^k k!; none found\n";
      for (const auto& n : report.notes) out << "note: " << n << "\n";
      print_meta(out, seed, &cfg);
      emit(envelope("probe",
                    Json{{"model", ref.label},
                         {"f", p_f},
                         {"center", p_center},
                         {"rho", format_double(p_rho)},
                         {"kmax", p_kmax},
                         {"samples", p_samples}},
                    probe_report_to_json(report), true, meta_json(seed, &cfg)),
           json_mode, out.str());
      return 0;
    }

    if (cmd_sup->parsed()) {
      ModelRef ref = resolve_model(s_group, s_file);
      const QuotientModel& M = ref.get();
      RatVec q = parse_center(s_center, M.m());
      ExprPtr phi = parse_expression(s_phi, *M.slice());
      auto report = check_sup_transfer(M, phi, q, s_radius, s_samples, cfg);
      std::ostringstream out;
      out << "sup transfer: model=" << ref.label << " phi=" << s_phi
          << " r=" << format_double(s_radius) << " N=" << s_samples << "\n";
      out << "sup over B_M = " << format_double(report.sup_on_M) << "\n";
      out << "sup over B_G = " << format_double(report.sup_on_G) << "\n";
      out << "relative gap = " << format_double(report.rel_gap) << " (<= 0.05)\n";
      if (report.lift_failures) out << "lift failures: " << report.lift_failures << "\n";
      out << (report.pass ? "PASS" : "FAIL") << "\n";
      print_meta(out, seed, &cfg);
      emit(envelope("suptransfer",
                    Json{{"model", ref.label},
                         {"phi", s_phi},
                         {"center", s_center},
                         {"radius", format_double(s_radius)},
                         {"samples", s_samples}},
                    sup_transfer_report_to_json(report), report.pass,
                    meta_json(seed, &cfg)),
           json_mode, out.str());
      return report.pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
