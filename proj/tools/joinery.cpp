// Batch front end: load system/coupling files, run an operation, emit a
// machine-readable JSON report. Exit 0 = success / property holds,
// 1 = checked property fails, 2 = input error.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "joinery/averages.hpp"
#include "joinery/config.hpp"
#include "joinery/coupling.hpp"
#include "joinery/io.hpp"
#include "joinery/partition.hpp"
#include "joinery/satedness.hpp"
#include "joinery/simplex.hpp"
#include "joinery/system.hpp"
#include "joinery/torus.hpp"

namespace fs = std::filesystem;
using namespace joinery;

namespace {

int g_exit = 0;
bool g_pretty = false;

void emit(const Json& j) { std::cout << (g_pretty ? j.dump(2) : j.dump()) << "\n"; }

std::vector<long> parse_word(const std::string& text) {
  std::vector<long> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

std::vector<int> parse_labels(const std::string& text) {
  std::vector<int> out;
  for (long v : parse_word(text)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<Observable> load_functions(const SystemPtr& sys, const fs::path& path) {
  Json j = load_json_file(path);
  const Json& list = j.is_array() ? j : j.at("functions");
  std::vector<Observable> fs_list;
  for (const auto& entry : list) fs_list.push_back(observable_from_json(sys, entry));
  return fs_list;
}

Json cyclotomic_to_json(const Cyclotomic& z) {
  if (auto parts = z.gaussian_parts()) {
    return Json{{"re", format_rational(parts->first)},
                {"im", format_rational(parts->second)}};
  }
  Json coeffs = Json::array();
  for (const auto& c : z.coeffs()) coeffs.push_back(format_rational(c));
  return Json{{"order", z.order()}, {"coeffs", std::move(coeffs)}};
}

Json coupling_report(const Coupling& c) { return coupling_to_json(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joinery: exact factor/joining workbench on finite systems "
               "with a floating-point torus lab"};
  app.require_subcommand(1);
  app.add_flag("--pretty", g_pretty, "indent JSON output");

  RunConfig cfg = RunConfig::from_env();

  // ---- system-check ----
  std::string sc_path;
  auto* sc = app.add_subcommand("system-check", "validate a system file");
  sc->add_option("path", sc_path)->required();
  sc->callback([&] {
    ValidationReport report = validate_system(
        system_data_from_json(load_json_file(sc_path)));
    emit(Json{{"ok", report.ok()}, {"issues", report.issues}});
    g_exit = report.ok() ? 0 : 1;
  });

  // ---- factor ----
  std::string f_path, f_word, f_labels;
  auto* factor = app.add_subcommand("factor", "factor machinery");
  auto* f_iso = factor->add_subcommand("isotropy", "orbit partition of a word");
  f_iso->add_option("path", f_path)->required();
  f_iso->add_option("--word", f_word, "comma-separated exponents")->required();
  f_iso->callback([&] {
    SystemPtr sys = system_from_json(load_json_file(f_path));
    emit(partition_to_json(isotropy_partition(sys, parse_word(f_word))));
  });
  auto* f_lc = factor->add_subcommand("largest-c", "largest C-factor");
  f_lc->add_option("path", f_path)->required();
  f_lc->callback([&] {
    SystemPtr sys = system_from_json(load_json_file(f_path));
    Partition p = largest_c_factor(sys);
    Json j = partition_to_json(p);
    j["is_c_system"] = p.separates_points();
    emit(j);
  });
  auto* f_q = factor->add_subcommand("quotient", "quotient by a partition");
  f_q->add_option("path", f_path)->required();
  f_q->add_option("--labels", f_labels, "comma-separated block labels")->required();
  f_q->callback([&] {
    SystemPtr sys = system_from_json(load_json_file(f_path));
    Partition p(sys, parse_labels(f_labels));
    if (auto v = invariance_violation(p)) {
      emit(Json{{"error", "partition not invariant"},
                {"witness", Json{{"block", v->block}, {"map", v->map_index}}}});
      g_exit = 1;
      return;
    }
    Quotient q = factor_quotient(sys, p);
    emit(Json{{"system", system_to_json(*q.system)},
              {"assignment", q.projection.assignment()}});
  });

  // ---- joining ----
  std::string j_path, j_path2, j_labels, j_coupling, j_words;
  long j_bound = cfg.lp_bound;
  auto* joining = app.add_subcommand("joining", "coupling machinery");
  auto* j_f = joining->add_subcommand("furstenberg", "Furstenberg self-joining");
  j_f->add_option("path", j_path)->required();
  j_f->callback([&] {
    SystemPtr sys = system_from_json(load_json_file(j_path));
    emit(coupling_report(furstenberg_self_joining(sys, cfg.period_cap)));
  });
  auto* j_r = joining->add_subcommand(
      "relindep", "relatively independent self-joining over a partition");
  j_r->add_option("path", j_path)->required();
  j_r->add_option("--labels", j_labels)->required();
  j_r->callback([&] {
    SystemPtr sys = system_from_json(load_json_file(j_path));
    Partition p(sys, parse_labels(j_labels));
    emit(coupling_report(rel_indep_self_joining(sys, p)));
  });
  auto* j_c = joining->add_subcommand("check", "check a coupling equivariance");
  j_c->add_option("--coupling", j_coupling)->required();
  j_c->add_option("--words", j_words,
                  "semicolon-separated per-slot words, e.g. '1,0;0,1'")
      ->required();
  j_c->callback([&] {
    fs::path path(j_coupling);
    Coupling c = coupling_from_json(load_json_file(path), path.parent_path());
    ProductWord word;
    std::string cur;
    for (char ch : j_words + ";") {
      if (ch == ';') {
        if (!cur.empty()) word.push_back(parse_word(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    EquivarianceReport r = check_equivariance(c, word);
    Json j{{"holds", r.holds},
           {"max_discrepancy", format_rational(r.max_discrepancy)}};
    j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
    emit(j);
    g_exit = r.holds ? 0 : 1;
  });
  auto* j_fal = joining->add_subcommand("falsify", "satedness falsifier");
  j_fal->add_option("path-x", j_path)->required();
  j_fal->add_option("path-y", j_path2)->required();
  j_fal->add_option("--bound", j_bound, "max product tuples");
  j_fal->callback([&] {
    SystemPtr x = system_from_json(load_json_file(j_path));
    SystemPtr y = system_from_json(load_json_file(j_path2));
    FalsifierResult r = satedness_falsifier(x, y, j_bound);
    Json j;
    j["optimal_value"] =
        format_rational(r.witness ? r.witness->value : Rational(0));
    j["lp_pivots"] = r.lp_pivots;
    if (r.witness) {
      j["witness"] = Json{{"f_point", r.witness->f_point},
                          {"g_point", r.witness->g_point},
                          {"coupling", coupling_to_json(r.witness->coupling)}};
    } else {
      j["witness"] = nullptr;
    }
    emit(j);
  });

  // ---- average ----
  std::string a_path, a_functions;
  long a_n = 0, a_h = 0;
  bool a_exact_limit = false, a_vdc = false;
  auto* avg = app.add_subcommand("average", "multiple ergodic averages");
  avg->add_option("path", a_path)->required();
  avg->add_option("functions", a_functions)->required();
  avg->add_option("--n", a_n, "number of steps N (default: the period P)");
  avg->add_flag("--exact-limit", a_exact_limit,
                "cross-check A_P against the exact limit");
  avg->add_flag("--vdc", a_vdc, "emit Van der Corput quantities");
  avg->add_option("--h", a_h, "H for --vdc (default 5)");
  avg->callback([&] {
    SystemPtr sys = system_from_json(load_json_file(a_path));
    std::vector<Observable> fs_list = load_functions(sys, a_functions);
    Integer period = sys->period();
    long n = a_n > 0 ? a_n : period.get_si();

    if (a_vdc) {
      long h = a_h > 0 ? a_h : 5;
      std::vector<Observable> us = twisted_products(sys, fs_list, n + h);
      VdcExact v = vdc_quantities(us, n, h);
      emit(Json{{"N", n},
                {"H", h},
                {"lhs_sq", format_rational(v.lhs_sq)},
                {"corr", cyclotomic_to_json(v.corr)},
                {"rhs_bound", format_rational(v.rhs_bound)},
                {"holds", v.lhs_sq <= v.rhs_bound}});
      g_exit = v.lhs_sq <= v.rhs_bound ? 0 : 1;
      return;
    }

    Observable a_n_obs = multiple_average(sys, fs_list, n);
    ProjectionCheck check = limit_equals_projected(sys, fs_list, cfg.period_cap);
    Json j{{"N", n},
           {"P", period.get_str()},
           {"A_N", observable_to_json(a_n_obs)},
           {"A_limit", observable_to_json(check.limit)},
           {"discrepancy_sq", format_rational(check.discrepancy_sq)}};
    if (a_exact_limit) {
      Observable at_period = multiple_average(sys, fs_list, period.get_si());
      bool agrees = (at_period - check.limit).norm_sq().is_zero();
      j["A_P_equals_limit"] = agrees;
      if (!agrees) g_exit = 1;
    }
    emit(j);
  });

  // ---- torus ----
  auto* torus = app.add_subcommand("torus", "floating-point torus lab");
  double t_alpha = 0.6180339887498949;  // (sqrt(5)-1)/2
  long t_n = 10'000'000;
  double t_tol = 1e-8;
  int t_maxfreq = 8;
  auto* t_ab = torus->add_subcommand("annexb", "factor-stability experiment");
  t_ab->add_option("--alpha", t_alpha);
  t_ab->add_option("--n", t_n, "budget for the Weyl scans");
  t_ab->add_option("--tol", t_tol);
  t_ab->add_option("--max-freq", t_maxfreq);
  t_ab->callback([&] {
    AnnexBReport r = annexb_experiment(t_alpha, t_n, t_tol, t_maxfreq);
    Json weyl = Json::array();
    for (const auto& w : r.weyl)
      weyl.push_back(Json{{"freq", w.freq},
                          {"n", w.n_used},
                          {"value", w.value},
                          {"bound", w.bound}});
    Json j{{"alpha", r.alpha},
           {"checks",
            Json{{"invariance_2x_minus_y",
                  r.invariance_2x_minus_y ? "exact" : "failed"},
                 {"y_action_equality",
                  r.y_action_equality ? "exact" : "failed"},
                 {"weyl", std::move(weyl)}}},
           {"verdict", r.verdict
                           ? "factor of a C-system that is not a C-system"
                           : "experiment failed"}};
    if (r.resonant) j["diagnostic"] = r.diagnostic;
    if (!r.weyl_ok && !r.resonant) {
      j["diagnostic"] = r.diagnostic;
      j["required_n"] = r.required_n;
    }
    emit(j);
    g_exit = r.verdict ? 0 : 1;
  });
  std::string t_freq = "1", t_rotation;
  auto* t_w = torus->add_subcommand("weyl", "exponential sum magnitude");
  t_w->add_option("--freq", t_freq, "comma-separated integer vector");
  t_w->add_option("--rotation", t_rotation, "comma-separated rotation vector")
      ->required();
  t_w->add_option("--n", t_n)->required();
  t_w->callback([&] {
    std::vector<long> freq = parse_word(t_freq);
    std::vector<double> rotation;
    for (const std::string& part : [&] {
           std::vector<std::string> parts;
           std::string cur;
           for (char c : t_rotation + ",") {
             if (c == ',') {
               if (!cur.empty()) parts.push_back(cur);
               cur.clear();
             } else
               cur += c;
           }
           return parts;
         }())
      rotation.push_back(std::stod(part));
    WeylResult r = weyl_sum(freq, rotation, t_n);
    emit(Json{{"theta", r.theta},
              {"value", r.value},
              {"bound", r.bound},
              {"resonant", r.resonant}});
    g_exit = r.resonant ? 1 : 0;
  });
  std::string t_system, t_functions;
  int t_grid = 64;
  auto* t_avg = torus->add_subcommand("average", "grid multiple average");
  t_avg->add_option("--system", t_system)->required();
  t_avg->add_option("--functions", t_functions)->required();
  t_avg->add_option("--grid", t_grid);
  t_avg->add_option("--n", t_n)->required();
  t_avg->callback([&] {
    Json sj = load_json_file(t_system);
    TorusSystem sys = TorusSystem::translations(
        sj.at("rotations").get<std::vector<std::vector<double>>>());
    Json fj = load_json_file(t_functions);
    std::vector<FourierObservable> fs_list;
    const Json& list = fj.is_array() ? fj : fj.at("functions");
    for (const auto& entry : list) {
      std::vector<FourierTerm> terms;
      for (const auto& t : entry.at("terms"))
        terms.push_back(FourierTerm{
            t.at("freq").get<std::vector<long>>(),
            {t.value("re", 0.0), t.value("im", 0.0)}});
      fs_list.emplace_back(sys.dim, std::move(terms));
    }
    TorusAverageReport r = torus_multiple_average(sys, fs_list, t_grid, t_n);
    emit(Json{{"grid", r.grid},
              {"N", r.n_steps},
              {"l2_norm", r.l2_norm},
              {"l2_norm_2N", r.l2_norm_2n},
              {"cauchy_increment", r.cauchy_increment},
              {"max_abs", r.max_abs}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    emit(Json{{"error", e.what()}});
    return e.kind() == ErrorKind::invalid_input ? 2 : 1;
  } catch (const std::exception& e) {
    emit(Json{{"error", e.what()}});
    return 2;
  }
  return g_exit;
}
