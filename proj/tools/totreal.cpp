// totreal: heights of algebraic numbers, equidistribution experiments, and
// lower-bound certificates for the Weil height of totally real numbers.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "totreal/report.hpp"
#include "totreal/verify.hpp"

using namespace totreal;
using nlohmann::json;

namespace {

struct GlobalOptions {
  bool json_out = false;
  int precision = 128;
  double tol = 1e-9;
};

QuadratureConfig quad_config(const GlobalOptions& g) {
  QuadratureConfig cfg;
  cfg.abs_tol = static_cast<long double>(g.tol);
  cfg.rel_tol = static_cast<long double>(g.tol);
  return cfg;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void print_kv(const char* key, const std::string& value) {
  std::printf("%-18s %s\n", key, value.c_str());
}

std::string fmt(long double v, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return buf;
}

bool poly_has_root_in(const IntPolynomial& poly, std::initializer_list<long> points) {
  for (long v : points) {
    mpz_class acc = 0;
    for (std::size_t k = poly.coeffs.size(); k-- > 0;) acc = acc * v + poly.coeffs[k];
    if (acc == 0) return true;
  }
  return false;
}

// ---- height ----

RunReport cmd_height(const GlobalOptions& g, const std::string& poly_text, bool list_roots) {
  const auto t0 = std::chrono::steady_clock::now();
  const IntPolynomial poly = parse_polynomial(poly_text);
  const MahlerResult mahler = mahler_measure(poly, g.precision);
  const HeightValue height = weil_height(poly, g.precision);
  const bool tot_real = is_totally_real(poly, 1e-20L, g.precision);

  RunReport rep;
  rep.command = "height";
  rep.inputs = {{"poly", poly_text}, {"precision", g.precision}};
  rep.results = {{"polynomial", poly.to_string()},
                 {"degree", poly.degree()},
                 {"value", static_cast<double>(height.value)},
                 {"mahler_measure", static_cast<double>(mahler.value)},
                 {"log_mahler", static_cast<double>(mahler.log_value)},
                 {"totally_real", tot_real},
                 {"precision_bits", height.precision_bits}};
  rep.error_estimates = {{"mahler_log", static_cast<double>(mahler.error_bound)}};
  if (list_roots) {
    const RootSet rs = roots(poly, g.precision);
    json arr = json::array();
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
      arr.push_back({{"re", static_cast<double>(rs.roots[i].re)},
                     {"im", static_cast<double>(rs.roots[i].im)},
                     {"radius", static_cast<double>(rs.radii[i])}});
    rep.results["roots"] = arr;
  }
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

void render_height(const RunReport& rep) {
  print_kv("polynomial:", rep.results["polynomial"].get<std::string>());
  print_kv("degree:", std::to_string(rep.results["degree"].get<int>()));
  print_kv("height:", fmt(rep.results["value"].get<double>()));
  print_kv("mahler_measure:", fmt(rep.results["mahler_measure"].get<double>()));
  print_kv("totally_real:", rep.results["totally_real"].get<bool>() ? "yes" : "no");
  print_kv("precision_bits:", std::to_string(rep.results["precision_bits"].get<int>()));
  if (rep.results.contains("roots")) {
    std::printf("roots:\n");
    for (const auto& r : rep.results["roots"])
      std::printf("  % .15g %+.15gi   (radius %.2g)\n", r["re"].get<double>(),
                  r["im"].get<double>(), r["radius"].get<double>());
  }
}

// ---- bound ----

json bound_errors_json(const BoundReport& rep) {
  return {{"circle", static_cast<double>(rep.circle_error)},
          {"energy", static_cast<double>(rep.energy_error)},
          {"bound", static_cast<double>(rep.bound_error)}};
}

RunReport cmd_bound(const GlobalOptions& g, double p, int lip_density) {
  const auto t0 = std::chrono::steady_clock::now();
  const BoundReport rep = lower_bound(static_cast<long double>(p), quad_config(g), lip_density);
  RunReport out;
  out.command = "bound";
  out.inputs = {{"p", p}, {"tol", g.tol}, {"lip_density", lip_density}};
  out.results = bound_report_json(rep);
  out.error_estimates = bound_errors_json(rep);
  out.wall_time_ms = elapsed_ms(t0);
  return out;
}

void render_bound(const json& r, const json& err) {
  print_kv("p:", fmt(r["p"].get<double>()));
  print_kv("circle_integral:", fmt(r["circle_integral"].get<double>()) + "  (err " +
                                   fmt(err["circle"].get<double>(), 3) + ")");
  print_kv("energy:", fmt(r["energy"].get<double>()) + "  (err " +
                          fmt(err["energy"].get<double>(), 3) + ")");
  print_kv("main_term:", fmt(r["main_term"].get<double>()));
  print_kv("bound:", fmt(r["bound"].get<double>()));
  print_kv("lipschitz:", "[" + fmt(r["lipschitz_lower"].get<double>()) + ", " +
                             fmt(r["lipschitz_upper"].get<double>()) + "]");
  if (!r["converged"].get<bool>()) print_kv("warning:", "quadrature did not converge");
}

// ---- sweep ----

RunReport cmd_sweep(const GlobalOptions& g, double lo, double hi, double step,
                    const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sweep(static_cast<long double>(lo), static_cast<long double>(hi),
                          static_cast<long double>(step), quad_config(g));
  RunReport rep;
  rep.command = "sweep";
  rep.inputs = {{"lo", lo}, {"hi", hi}, {"step", step}, {"tol", g.tol}};
  if (!out_path.empty()) rep.inputs["out"] = out_path;
  json arr = json::array();
  double max_err = 0;
  for (const auto& pt : rows) {
    json row = bound_report_json(pt.report);
    row["ok"] = pt.ok;
    if (!pt.ok) row["error"] = pt.error;
    arr.push_back(row);
    max_err = std::max(max_err, static_cast<double>(pt.report.bound_error));
  }
  rep.results = {{"rows", arr}, {"count", rows.size()}};
  rep.error_estimates = {{"max_bound_error", max_err}};

  if (!out_path.empty()) {
    std::ofstream csv(out_path);
    if (!csv) throw std::runtime_error("cannot open output file: " + out_path);
    csv << sweep_csv_header() << "\n";
    for (const auto& pt : rows) csv << sweep_csv_row(pt) << "\n";
  }
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

void render_sweep(const RunReport& rep) {
  std::printf("%8s %16s %16s %16s %16s %10s\n", "p", "circle_integral", "energy", "main_term",
              "bound", "err");
  for (const auto& row : rep.results["rows"]) {
    if (row["ok"].get<bool>())
      std::printf("%8.4g %16.10g %16.10g %16.10g %16.10g %10.2g\n", row["p"].get<double>(),
                  row["circle_integral"].get<double>(), row["energy"].get<double>(),
                  row["main_term"].get<double>(), row["bound"].get<double>(),
                  0.0 + row.value("bound_error", 0.0));
    else
      std::printf("%8.4g  failed: %s\n", row["p"].get<double>(),
                  row["error"].get<std::string>().c_str());
  }
  if (rep.inputs.contains("out"))
    print_kv("csv:", rep.inputs["out"].get<std::string>());
}

// ---- optimize ----

RunReport cmd_optimize(const GlobalOptions& g, double lo, double hi, double ptol,
                       int lip_density) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [p_star, rep] =
      optimize_exponent(static_cast<long double>(lo), static_cast<long double>(hi),
                        static_cast<long double>(ptol), quad_config(g), lip_density);
  RunReport out;
  out.command = "optimize";
  out.inputs = {{"lo", lo}, {"hi", hi}, {"ptol", ptol}, {"tol", g.tol}};
  out.results = bound_report_json(rep);
  out.results["p_star"] = static_cast<double>(p_star);
  out.error_estimates = bound_errors_json(rep);
  out.wall_time_ms = elapsed_ms(t0);
  return out;
}

// ---- az ----

RunReport cmd_az(const GlobalOptions& g, int depth, const std::string& seed_text) {
  const auto t0 = std::chrono::steady_clock::now();
  Rational seed{1, 1};
  const int fields = std::sscanf(seed_text.c_str(), "%lld/%lld", &seed.num, &seed.den);
  if (fields < 1) throw std::invalid_argument("seed must be a rational number, n or n/d");
  if (fields == 1) seed.den = 1;
  if (seed.den == 0) throw std::invalid_argument("seed denominator must be nonzero");
  const auto seq = smyth_height_sequence(depth, seed);
  RunReport rep;
  rep.command = "az";
  rep.inputs = {{"depth", depth}, {"seed", seed_text}};
  json table = json::array();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    json row = {{"depth", seq[k].first}, {"estimate", static_cast<double>(seq[k].second)}};
    if (k > 0)
      row["gap"] = static_cast<double>(seq[k].second - seq[k - 1].second);
    table.push_back(row);
  }
  rep.results = {{"estimate", static_cast<double>(seq.back().second)},
                 {"depth", depth},
                 {"points", 1LL << depth},
                 {"table", table}};
  rep.error_estimates = {
      {"last_gap", depth > 0
                       ? static_cast<double>(seq[depth].second - seq[depth - 1].second)
                       : 0.0}};
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

void render_az(const RunReport& rep) {
  std::printf("%6s %18s %14s\n", "depth", "estimate", "gap");
  for (const auto& row : rep.results["table"]) {
    if (row.contains("gap"))
      std::printf("%6d %18.12f %14.3g\n", row["depth"].get<int>(),
                  row["estimate"].get<double>(), row["gap"].get<double>());
    else
      std::printf("%6d %18.12f %14s\n", row["depth"].get<int>(), row["estimate"].get<double>(),
                  "-");
  }
  print_kv("estimate:", fmt(rep.results["estimate"].get<double>(), 12));
}

// ---- corpus ----

RunReport cmd_corpus(const GlobalOptions& g, const std::string& family, int min_n, int max_n,
                     long long base, int max_depth, double p, double c) {
  const auto t0 = std::chrono::steady_clock::now();
  const TestFunction tf(static_cast<long double>(p));
  const QuadratureConfig cfg = quad_config(g);

  std::vector<std::pair<long long, IntPolynomial>> members;  // (family parameter, polynomial)
  if (family == "cyclotomic") {
    for (int n = min_n; n <= max_n; ++n)
      members.emplace_back(n, family_polynomial(Family::roots_of_unity(n)));
  } else if (family == "radical") {
    for (int n = 1; n <= max_n; ++n)
      members.emplace_back(n, family_polynomial(Family::radical(base, n)));
  } else {
    for (int d = 0; d <= max_depth; ++d)
      members.emplace_back(d, family_polynomial(Family::smyth_preimages(d)));
  }

  const long double circle = circle_integral(tf, cfg).value;
  json arr = json::array();
  std::vector<IntPolynomial> c_fit_corpus;
  double min_tr_height = -1;
  for (const auto& [param, poly] : members) {
    const long double h = weil_height(poly, g.precision).value;
    const long double avg = galois_average(poly, tf, g.precision);
    const bool tot_real = is_totally_real(poly, 1e-20L, g.precision);
    arr.push_back({{"param", param},
                   {"degree", poly.degree()},
                   {"height", static_cast<double>(h)},
                   {"average", static_cast<double>(avg)},
                   {"discrepancy", static_cast<double>(std::fabs(avg - circle))},
                   {"totally_real", tot_real}});
    if (poly.degree() >= 2) c_fit_corpus.push_back(poly);
    if (tot_real && !poly_has_root_in(poly, {0, 1, -1}))
      min_tr_height = min_tr_height < 0
                          ? static_cast<double>(h)
                          : std::min(min_tr_height, static_cast<double>(h));
  }

  RunReport rep;
  rep.command = "corpus";
  rep.inputs = {{"family", family}, {"p", p}, {"c", c}, {"precision", g.precision}};
  if (family == "cyclotomic") rep.inputs.update({{"min_n", min_n}, {"max_n", max_n}});
  if (family == "radical") rep.inputs.update({{"base", base}, {"max_n", max_n}});
  if (family == "smyth") rep.inputs["max_depth"] = max_depth;
  rep.results = {{"members", arr},
                 {"count", members.size()},
                 {"circle_integral", static_cast<double>(circle)}};
  if (!c_fit_corpus.empty()) {
    const EmpiricalC fit = empirical_c(c_fit_corpus, tf, cfg);
    rep.results["empirical_c"] = static_cast<double>(fit.c);
  }
  if (min_tr_height >= 0) rep.results["min_totally_real_height"] = min_tr_height;
  rep.error_estimates = json::object();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

void render_corpus(const RunReport& rep) {
  std::printf("%8s %8s %14s %14s %14s %6s\n", "param", "degree", "height", "average",
              "discrepancy", "real");
  for (const auto& row : rep.results["members"])
    std::printf("%8lld %8d %14.9f %14.9f %14.9f %6s\n", row["param"].get<long long>(),
                row["degree"].get<int>(), row["height"].get<double>(),
                row["average"].get<double>(), row["discrepancy"].get<double>(),
                row["totally_real"].get<bool>() ? "yes" : "no");
  if (rep.results.contains("empirical_c"))
    print_kv("empirical_c:", fmt(rep.results["empirical_c"].get<double>()));
  if (rep.results.contains("min_totally_real_height"))
    print_kv("min_tr_height:", fmt(rep.results["min_totally_real_height"].get<double>()));
}

// ---- verify ----

RunReport cmd_verify(bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto criteria = run_acceptance();
  RunReport rep;
  rep.command = "verify";
  rep.inputs = json::object();
  json arr = json::array();
  bool all_pass = true;
  for (const auto& c : criteria) {
    if (!quiet)
      std::printf("%s  %2d %-26s %s  [%.2f s]\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                  c.detail.c_str(), c.seconds);
    all_pass = all_pass && c.pass;
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"pass", c.pass},
                   {"detail", c.detail},
                   {"seconds", c.seconds}});
  }
  if (!quiet)
    std::printf("%s: %zu criteria\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", criteria.size());
  rep.results = {{"criteria", arr}, {"all_pass", all_pass}};
  rep.error_estimates = json::object();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heights, equidistribution experiments, and lower-bound certificates for\n"
               "totally real algebraic numbers"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file (flags win)");

  GlobalOptions g;
  app.add_flag("--json", g.json_out, "emit a JSON report instead of tables");
  app.add_option("--precision", g.precision, "root-finding target precision in bits")
      ->check(CLI::Range(24, 226))
      ->capture_default_str();
  app.add_option("--tol", g.tol, "quadrature tolerance (absolute and relative)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* height = app.add_subcommand("height", "Weil height of an algebraic number");
  std::string poly_text;
  bool list_roots = false;
  height->add_option("--poly", poly_text, "polynomial text or ascending coefficient list")
      ->required();
  height->add_flag("--roots", list_roots, "include the root list");

  auto* bound = app.add_subcommand("bound", "height lower bound certificate at one exponent");
  double bound_p = 3.0;
  int lip_density = 128;
  bound->add_option("--p", bound_p, "test function exponent")
      ->required()
      ->check(CLI::Validator(
          [](std::string& s) {
            return std::stod(s) > 1.0 ? std::string() : std::string("exponent must exceed 1");
          },
          "P>1"));
  bound->add_option("--lip-density", lip_density, "Lipschitz sampling grid density")
      ->check(CLI::Range(8, 4096))
      ->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "certificate over an exponent grid");
  double sw_lo = 2, sw_hi = 5, sw_step = 0.25;
  std::string sw_out;
  sweep_cmd->add_option("--lo", sw_lo, "grid start (exclusive of 1)")->required();
  sweep_cmd->add_option("--hi", sw_hi, "grid end")->required();
  sweep_cmd->add_option("--step", sw_step, "grid step")->required();
  sweep_cmd->add_option("--out", sw_out, "write rows as CSV to this path");

  auto* opt_cmd = app.add_subcommand("optimize", "maximize the bound over the exponent");
  double op_lo = 2, op_hi = 5, op_ptol = 1e-4;
  int op_density = 128;
  opt_cmd->add_option("--lo", op_lo, "bracket start")->capture_default_str();
  opt_cmd->add_option("--hi", op_hi, "bracket end")->capture_default_str();
  opt_cmd->add_option("--ptol", op_ptol, "bracket width tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  opt_cmd->add_option("--lip-density", op_density, "Lipschitz sampling grid density")
      ->check(CLI::Range(8, 4096))
      ->capture_default_str();

  auto* az_cmd =
      app.add_subcommand("az", "dynamical pairing estimate by backward iteration of x - 1/x");
  int az_depth = 12;
  std::string az_seed = "1";
  az_cmd->add_option("--depth", az_depth, "backward iteration depth (2^depth points)")
      ->required()
      ->check(CLI::Range(0, kDefaultDepthCap));
  az_cmd->add_option("--seed", az_seed, "rational seed, as n or n/d")->capture_default_str();

  auto* corpus_cmd = app.add_subcommand("corpus", "height/average table over a polynomial family");
  std::string family = "cyclotomic";
  int co_min_n = 1, co_max_n = 64, co_depth = 6;
  long long co_base = 2;
  double co_p = 3.0, co_c = 0.0;
  corpus_cmd->add_option("--family", family, "cyclotomic | radical | smyth")
      ->required()
      ->check(CLI::IsMember({"cyclotomic", "radical", "smyth"}));
  corpus_cmd->add_option("--min-n", co_min_n)->check(CLI::Range(1, 4096))->capture_default_str();
  corpus_cmd->add_option("--max-n", co_max_n)->check(CLI::Range(1, 4096))->capture_default_str();
  corpus_cmd->add_option("--base", co_base)->check(CLI::Range(2LL, 1000000LL))
      ->capture_default_str();
  corpus_cmd->add_option("--max-depth", co_depth)->check(CLI::Range(0, 8))->capture_default_str();
  corpus_cmd->add_option("--p", co_p, "test function exponent")
      ->check(CLI::Validator(
          [](std::string& s) {
            return std::stod(s) > 1.0 ? std::string() : std::string("exponent must exceed 1");
          },
          "P>1"))
      ->capture_default_str();
  corpus_cmd->add_option("--c", co_c, "constant in the discrepancy inequality")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");

  // global flags remain usable after the subcommand name
  for (auto* sub : {height, bound, sweep_cmd, opt_cmd, az_cmd, corpus_cmd, verify_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunReport rep;
    bool ok = true;
    if (height->parsed()) {
      rep = cmd_height(g, poly_text, list_roots);
      if (!g.json_out) render_height(rep);
    } else if (bound->parsed()) {
      rep = cmd_bound(g, bound_p, lip_density);
      ok = rep.results["converged"].get<bool>();
      if (!g.json_out) render_bound(rep.results, rep.error_estimates);
    } else if (sweep_cmd->parsed()) {
      if (!(sw_lo > 1) || !(sw_hi >= sw_lo) || !(sw_step > 0)) {
        std::cerr << "usage error: sweep requires 1 < lo <= hi and step > 0\n";
        return 2;
      }
      rep = cmd_sweep(g, sw_lo, sw_hi, sw_step, sw_out);
      for (const auto& row : rep.results["rows"]) ok = ok && row["ok"].get<bool>();
      if (!g.json_out) render_sweep(rep);
    } else if (opt_cmd->parsed()) {
      if (!(op_lo > 1) || !(op_hi > op_lo)) {
        std::cerr << "usage error: optimize requires 1 < lo < hi\n";
        return 2;
      }
      rep = cmd_optimize(g, op_lo, op_hi, op_ptol, op_density);
      if (!g.json_out) {
        print_kv("p_star:", fmt(rep.results["p_star"].get<double>()));
        render_bound(rep.results, rep.error_estimates);
      }
    } else if (az_cmd->parsed()) {
      rep = cmd_az(g, az_depth, az_seed);
      if (!g.json_out) render_az(rep);
    } else if (corpus_cmd->parsed()) {
      if (co_min_n > co_max_n) {
        std::cerr << "usage error: corpus requires min-n <= max-n\n";
        return 2;
      }
      rep = cmd_corpus(g, family, co_min_n, co_max_n, co_base, co_depth, co_p, co_c);
      if (!g.json_out) render_corpus(rep);
    } else if (verify_cmd->parsed()) {
      rep = cmd_verify(g.json_out);
      ok = rep.results["all_pass"].get<bool>();
    }
    if (g.json_out) std::cout << json(rep).dump(2) << "\n";
    return ok ? 0 : 1;
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
