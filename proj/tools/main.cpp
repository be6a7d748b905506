#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polywave/errors.hpp"
#include "polywave/factorization.hpp"
#include "polywave/filterbank.hpp"
#include "polywave/subdivision.hpp"
#include "polywave/symbols.hpp"

namespace {

using namespace polywave;

int grid_from_env() {
  const char* s = std::getenv("POLYWAVE_GRID");
  if (!s) return 512;
  try {
    const int g = std::stoi(s);
    if (g < 64) throw std::invalid_argument("grid");
    return g;
  } catch (const std::exception&) {
    throw std::invalid_argument("POLYWAVE_GRID must be an integer >= 64");
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + out_path);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

double bezout_residual(const RealPolynomial& p, const RealPolynomial& q) {
  double worst = 0.0;
  const RealPolynomial pr = compose(p, RealPolynomial{{1.0, -1.0}});
  const RealPolynomial qr = compose(q, RealPolynomial{{1.0, -1.0}});
  for (int i = 0; i < 200; ++i) {
    const double x = static_cast<double>(i) / 199.0;
    worst = std::max(worst, std::abs(p(x) * q(x) + pr(x) * qr(x) - 1.0));
  }
  return worst;
}

LaurentPolynomial reversed_mask(const LaurentPolynomial& g) {
  LaurentPolynomial r;
  r.lo = 0;
  r.coeffs.assign(g.coeffs.rbegin(), g.coeffs.rend());
  return r;
}

// Independent classical (xi = 0) filter: Bezout solve for P = (1-x)^N, Riesz
// factorization of 4*Q(sin^2(w/2)), reversed to the max-phase branch, times
// ((z+1)/2)^N.
LaurentPolynomial classical_mask_oracle(int order) {
  RealPolynomial p = RealPolynomial::constant(1.0);
  for (int i = 0; i < order; ++i) p = multiply(p, RealPolynomial{{1.0, -1.0}});
  const RealPolynomial q = bezout_solve(p);
  const RealPolynomial qtilde = cos_substitute(q);
  LaurentPolynomial m2 = riesz_factor(qtilde, 4.0);
  m2 = reversed_mask(m2);
  return multiply(m1_factor({order, 0.0, 0}), m2);
}

struct CheckRow {
  std::string name;
  double value;
  double bound;
  bool lower_bound;  // pass iff value >= bound instead of <=
  bool pass;
};

CheckRow upper(const std::string& name, double value, double tol) {
  return {name, value, tol, false, value <= tol};
}

CheckRow lower(const std::string& name, double value, double bound) {
  return {name, value, bound, true, value >= bound};
}

int run_filters(int order, double xi, int level, const std::string& out_path) {
  const SymbolContext ctx{order, xi, level};
  const SubdivisionSymbol sym = a_symbol(ctx);
  const RefinementMask mask = refinement_mask(ctx);
  const SymbolReport rep = verify_symbol(sym, grid_from_env());
  const double bez = bezout_residual(
      p_polynomial(FrequencyVector::polyharmonic(order, xi), level), q_polynomial_closed_form(ctx));

  const bool pass = rep.pass && bez <= 1e-10 && mask.qmf_residual <= 1e-9 &&
                    mask.factorization_residual <= 1e-9;

  nlohmann::json j;
  j["kind"] = "filters";
  j["N"] = order;
  j["xi"] = xi;
  j["level"] = level;
  j["symbol"] = {{"lo", sym.a.lo}, {"coeffs", sym.a.coeffs}};
  j["mask"] = {{"lo", mask.g.lo}, {"coeffs", mask.g.coeffs}};
  j["diagnostics"] = {{"qmf_residual", mask.qmf_residual},
                      {"factorization_residual", mask.factorization_residual},
                      {"bezout_residual", bez},
                      {"symmetry_defect", rep.symmetry_defect},
                      {"interpolatory_defect", rep.interpolatory_defect},
                      {"min_circle_value", rep.min_circle_value},
                      {"grid_size", rep.grid_size},
                      {"pass", pass}};
  emit(j.dump(2), out_path);
  return pass ? 0 : 1;
}

int check_mask_file(const std::string& path, int grid) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "check-file: " << e.what() << '\n';
    return 1;
  }
  try {
    LaurentPolynomial g;
    const auto& mask = j.contains("mask") ? j.at("mask") : j;
    g.lo = mask.at("lo").get<int>();
    g.coeffs = mask.at("coeffs").get<std::vector<double>>();
    const SymbolContext ctx{j.at("N").get<int>(), j.at("xi").get<double>(),
                            j.at("level").get<int>()};
    const double qmf = qmf_residual(g);
    const double fac = factorization_residual(g, a_symbol(ctx).a, grid);
    const bool pass = qmf <= 1e-9 && fac <= 1e-9;
    std::cout << "check-file qmf_residual " << qmf << (qmf <= 1e-9 ? " PASS" : " FAIL") << '\n';
    std::cout << "check-file factorization_residual " << fac << (fac <= 1e-9 ? " PASS" : " FAIL")
              << '\n';
    return pass ? 0 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "check-file: " << e.what() << '\n';
    return 1;
  }
}

int run_verify(int order, double xi, int level, const std::string& check_file,
               const std::string& out_path) {
  const int grid = grid_from_env();
  if (!check_file.empty()) return check_mask_file(check_file, grid);

  const SymbolContext ctx{order, xi, level};
  const SubdivisionSymbol sym = a_symbol(ctx);
  const RefinementMask mask = refinement_mask(ctx);
  const SymbolReport rep = verify_symbol(sym, grid);
  std::vector<CheckRow> rows;
  rows.push_back(upper("symmetry_defect", rep.symmetry_defect, 1e-10));
  rows.push_back(upper("interpolatory_defect", rep.interpolatory_defect, 1e-10));
  rows.push_back(lower("min_circle_value", rep.min_circle_value, -1e-12));

  const FrequencyVector lams = FrequencyVector::polyharmonic(order, xi);
  const RealPolynomial q_closed = q_polynomial_closed_form(ctx);
  rows.push_back(upper("bezout_residual", bezout_residual(p_polynomial(lams, level), q_closed),
                       1e-10));
  {
    const RealPolynomial q_num = bezout_solve(p_polynomial(lams, level));
    double rel = 0.0, scale = 0.0;
    for (double c : q_closed.coeffs) scale = std::max(scale, std::abs(c));
    for (int i = 0; i < order; ++i)
      rel = std::max(rel, std::abs(q_closed.at(i) - q_num.at(i)) / scale);
    rows.push_back(upper("closed_form_vs_bezout", rel, 1e-9));
  }
  rows.push_back(upper("qmf_residual", mask.qmf_residual, 1e-9));
  rows.push_back(upper("factorization_residual", mask.factorization_residual, 1e-9));

  {
    std::vector<int> powers, signs;
    for (int l = 0; l < order; ++l) {
      powers.push_back(l);
      signs.push_back(1);
    }
    rows.push_back(upper("reproduction_error", reproduction_error(lams, powers, signs, level, 3),
                         1e-9));
  }

  {
    // Finer than the tabulation criterion: the Riemann quadrature error of
    // the Gram integral decays like 4^-L and needs the extra depth.
    const int L = 12;
    const DyadicGridFunction phi = tabulate_father_raw(order, xi, level, L);
    const long step = 1L << L;
    const long len = static_cast<long>(phi.values.size());
    const double h = 1.0;  // unit-grid inner products after undoing the 2^m scale
    const double amp = std::exp2(-level);
    double gram = 0.0;
    for (int s = 0; s < 2 * order; ++s) {
      double acc = 0.0;
      for (long i = 0; i + s * step < len; ++i)
        acc += amp * phi.values[static_cast<std::size_t>(i)] * amp *
               phi.values[static_cast<std::size_t>(i + s * step)];
      acc *= h / static_cast<double>(step);
      gram = std::max(gram, std::abs(acc - (s == 0 ? 1.0 : 0.0)));
    }
    rows.push_back(upper("gram_defect", gram, 1e-5));
  }

  if (xi == 0.0) {
    const LaurentPolynomial oracle = classical_mask_oracle(order);
    double diff = 0.0;
    for (int i = 0; i < 2 * order; ++i) diff = std::max(diff, std::abs(mask.g.at(i) - oracle.at(i)));
    rows.push_back(upper("classical_limit_match", diff, 1e-9));
  }

  bool all = true;
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckRow& r : rows) {
    all = all && r.pass;
    std::cout << r.name << ' ' << r.value << (r.lower_bound ? " >= " : " <= ") << r.bound << ' '
              << (r.pass ? "PASS" : "FAIL") << '\n';
    checks.push_back({{"name", r.name},
                      {"value", r.value},
                      {"bound", r.bound},
                      {"lower_bound", r.lower_bound},
                      {"pass", r.pass}});
  }
  nlohmann::json j;
  j["kind"] = "verify";
  j["N"] = order;
  j["xi"] = xi;
  j["level"] = level;
  j["grid_size"] = grid;
  j["checks"] = std::move(checks);
  j["pass"] = all;
  if (!out_path.empty()) emit(j.dump(2), out_path);
  else
    std::cout << j.dump(2) << '\n';
  return all ? 0 : 1;
}

int run_cascade(int order, double xi, int level, int L, const std::string& out_prefix) {
  const std::string prefix = out_prefix.empty() ? "cascade" : out_prefix;
  const DyadicGridFunction fund = fundamental_function(order, xi, level, L);
  const DyadicGridFunction father = cascade_father(order, xi, level, L);
  const DyadicGridFunction mother = mother_wavelet(order, xi, level, L);
  const std::vector<std::pair<std::string, const DyadicGridFunction*>> files = {
      {prefix + "_fundamental.csv", &fund},
      {prefix + "_father.csv", &father},
      {prefix + "_mother.csv", &mother}};
  for (const auto& [path, f] : files) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    write_csv(*f, os);
    if (!os) throw std::runtime_error("write failed: " + path);
    std::cout << path << '\n';
  }
  return 0;
}

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

int run_analyze(int order, double xi, int base_level, int depth, const std::string& in_path,
                const std::string& out_path) {
  if (has_suffix(in_path, ".pgm")) {
    std::ifstream is(in_path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file: " + in_path);
    const ImageBuffer img = read_pgm(is);
    emit(image_pyramid_to_json(analyze_2d(img, order, depth, base_level)), out_path);
  } else {
    std::ifstream is(in_path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file: " + in_path);
    const std::vector<double> signal = read_signal_csv(is);
    const FilterBankPlan plan = FilterBankPlan::create(order, xi, base_level, depth);
    PyramidRecord rec{order, xi, base_level, depth, analyze_1d(signal, plan)};
    emit(pyramid_record_to_json(rec), out_path);
  }
  return 0;
}

std::string render_signal(const std::vector<double>& signal) {
  std::ostringstream ss;
  write_signal_csv(signal, ss);
  return ss.str();
}

std::string render_image(const ImageBuffer& img) {
  std::ostringstream ss;
  write_pgm(img, ss, /*binary=*/true);
  return ss.str();
}

int run_synthesize(const std::string& in_path, const std::string& out_path) {
  const std::string text = slurp(in_path);
  nlohmann::json probe;
  try {
    probe = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pyramid: ") + e.what());
  }
  const std::string kind = probe.value("kind", "");
  if (kind == "pyramid2d") {
    emit(render_image(synthesize_2d(image_pyramid_from_json(text))), out_path);
  } else if (kind == "pyramid1d") {
    const PyramidRecord rec = pyramid_record_from_json(text);
    const FilterBankPlan plan =
        FilterBankPlan::create(rec.order, rec.xi, rec.base_level, rec.depth);
    emit(render_signal(synthesize_1d(rec.pyramid, plan)), out_path);
  } else {
    throw ParseError("pyramid: unknown kind field");
  }
  return 0;
}

int run_denoise(int order, double xi, int base_level, int depth, double tau,
                const std::string& mode_name, const std::string& in_path,
                const std::string& out_path) {
  const ThresholdMode mode = mode_name == "hard" ? ThresholdMode::hard : ThresholdMode::soft;
  if (has_suffix(in_path, ".pgm")) {
    std::ifstream is(in_path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file: " + in_path);
    const ImageBuffer img = read_pgm(is);
    const ImagePyramid pyr = threshold_denoise(analyze_2d(img, order, depth, base_level), tau, mode);
    emit(render_image(synthesize_2d(pyr)), out_path);
  } else {
    std::ifstream is(in_path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file: " + in_path);
    const std::vector<double> signal = read_signal_csv(is);
    const FilterBankPlan plan = FilterBankPlan::create(order, xi, base_level, depth);
    const CoefficientPyramid pyr = threshold_denoise(analyze_1d(signal, plan), tau, mode);
    emit(render_signal(synthesize_1d(pyr, plan)), out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyharmonic non-stationary wavelet toolbox"};
  app.require_subcommand(1);

  int order = 2, level = 0, base_level = 0, depth = 1, resolution = 8;
  double xi = 0.0, tau = 0.0;
  std::string mode_name = "soft", in_path, out_path, check_file;

  const auto add_order = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--N", order, "construction order N")->check(CLI::Range(1, 10));
    if (required) opt->required();
  };
  const auto add_xi = [&](CLI::App* cmd) {
    cmd->add_option("--xi", xi, "frequency parameter xi")->check(CLI::NonNegativeNumber);
  };

  CLI::App* filters = app.add_subcommand("filters", "emit symbol + mask JSON with diagnostics");
  add_order(filters, true);
  add_xi(filters);
  filters->add_option("--level", level, "refinement level")->check(CLI::Range(0, 30));
  filters->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite for one (N, xi, level)");
  add_order(verify, true);
  add_xi(verify);
  verify->add_option("--level", level, "refinement level")->check(CLI::Range(0, 30));
  verify->add_option("--check-file", check_file, "verify a previously emitted filter JSON");
  verify->add_option("--out", out_path, "JSON report file (default stdout)");

  CLI::App* cascade = app.add_subcommand("cascade", "tabulate the wavelet triple as CSV");
  add_order(cascade, true);
  add_xi(cascade);
  cascade->add_option("--level", level, "base level m")->check(CLI::Range(0, 30));
  cascade->add_option("--L", resolution, "dyadic resolution depth")->check(CLI::Range(1, 16));
  cascade->add_option("--out", out_path, "output file prefix (default 'cascade')");

  CLI::App* analyze = app.add_subcommand("analyze", "decompose a CSV signal or PGM image");
  add_order(analyze, true);
  add_xi(analyze);
  analyze->add_option("--depth,-J", depth, "transform depth J")->check(CLI::Range(1, 16));
  analyze->add_option("--base-level", base_level, "coarsest mask level m0")->check(CLI::Range(0, 30));
  analyze->add_option("--in", in_path, "input CSV or PGM")->required();
  analyze->add_option("--out", out_path, "pyramid JSON output (default stdout)");

  CLI::App* synthesize = app.add_subcommand("synthesize", "invert a pyramid JSON");
  synthesize->add_option("--in", in_path, "pyramid JSON input")->required();
  synthesize->add_option("--out", out_path, "signal CSV / image PGM output (default stdout)");

  CLI::App* denoise = app.add_subcommand("denoise", "analyze, threshold, synthesize");
  add_order(denoise, true);
  add_xi(denoise);
  denoise->add_option("--depth,-J", depth, "transform depth J")->check(CLI::Range(1, 16));
  denoise->add_option("--base-level", base_level, "coarsest mask level m0")->check(CLI::Range(0, 30));
  denoise->add_option("--tau", tau, "shrinkage threshold")->required()->check(CLI::NonNegativeNumber);
  denoise->add_option("--mode", mode_name, "hard or soft")
      ->check(CLI::IsMember({"hard", "soft"}));
  denoise->add_option("--in", in_path, "input CSV or PGM")->required();
  denoise->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (filters->parsed()) return run_filters(order, xi, level, out_path);
    if (verify->parsed()) return run_verify(order, xi, level, check_file, out_path);
    if (cascade->parsed()) return run_cascade(order, xi, level, resolution, out_path);
    if (analyze->parsed()) return run_analyze(order, xi, base_level, depth, in_path, out_path);
    if (synthesize->parsed()) return run_synthesize(in_path, out_path);
    if (denoise->parsed())
      return run_denoise(order, xi, base_level, depth, tau, mode_name, in_path, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
