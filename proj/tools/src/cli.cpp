#include "htype_cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "htype/biradial.hpp"
#include "htype/error.hpp"
#include "htype/gelfand.hpp"
#include "htype/group.hpp"
#include "htype/group_io.hpp"
#include "htype/harmonic.hpp"
#include "htype/poisson.hpp"

namespace htype::cli {

using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("not a number: '{}'", s));
  }
  if (used != s.size()) throw std::invalid_argument(fmt::format("not a number: '{}'", s));
  return v;
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) throw std::invalid_argument(fmt::format("not an integer: '{}'", s));
  return static_cast<int>(v);
}

json group_json(const HTypeGroup& g) { return json::parse(group_to_json(g)); }

// Emits `content` to stdout or to out_dir/name.
void emit(const RunConfig& cfg, const std::string& name, const std::string& content, std::ostream& out) {
  if (cfg.out_dir.empty()) {
    out << content;
    return;
  }
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  f << content;
  out << path.string() << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

BiradialProfile parse_profile(const HTypeGroup& g, const std::string& spec, const RunConfig& cfg) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "gaussian") return gaussian_profile(g, arg.empty() ? 1.0 : to_double(arg));
  if (kind == "bump") return bump_profile(g, arg.empty() ? 1.0 : to_double(arg));
  if (kind == "poisson") return PoissonKernel(g, arg.empty() ? 1.0 : to_double(arg), cfg.transform_tol * 0.1).profile();
  if (kind == "csv") return read_profile_csv(g, arg);
  throw std::invalid_argument(fmt::format("unknown profile '{}' (gaussian[:w], bump[:r], poisson[:a], csv:path)", spec));
}

GroupElement parse_point(const HTypeGroup& g, const std::string& text) {
  const auto v = parse_list(text);
  if (static_cast<int>(v.size()) != g.dim_v() + g.k())
    throw std::invalid_argument(fmt::format("point needs {} coordinates (X then Z), got {}", g.dim_v() + g.k(), v.size()));
  GroupElement n = g.identity();
  for (int i = 0; i < g.dim_v(); ++i) n.X(i) = v[i];
  for (int i = 0; i < g.k(); ++i) n.Z(i) = v[g.dim_v() + i];
  return n;
}

std::string svg_plot(const TangentialTable& t) {
  const double W = 640, H = 400, L = 70, R = 20, T = 30, B = 50;
  double lo = 1e300, hi = -1e300;
  for (const auto& row : t.deviation)
    for (double v : row)
      if (v > 0) {
        lo = std::min(lo, std::log10(v));
        hi = std::max(hi, std::log10(v));
      }
  if (lo > hi) lo = hi = 0;
  lo = std::floor(lo);
  hi = std::ceil(hi);
  if (hi == lo) hi = lo + 1;
  const double rlo = std::log2(t.radii.front()), rhi = std::log2(t.radii.back());
  auto px = [&](double r) { return rhi > rlo ? L + (std::log2(r) - rlo) / (rhi - rlo) * (W - L - R) : L; };
  auto py = [&](double v) { return T + (hi - std::log10(std::max(v, 1e-300))) / (hi - lo) * (H - T - B); };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      W, H);
  s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, H - B, W - R, H - B);
  s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, T, L, H - B);
  for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); ++e)
    s += fmt::format("<text x=\"{}\" y=\"{:.1f}\" text-anchor=\"end\">1e{}</text>\n", L - 6, py(std::pow(10.0, e)) + 4,
                     e);
  for (double r : t.radii)
    s += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(r), H - B + 18, num(r));
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">R (gauge)</text>\n", (L + W - R) / 2, H - 10);
  s += fmt::format("<text x=\"{}\" y=\"{}\">sup |u - alpha| on R &lt;= gauge &lt;= 2R</text>\n", L, T - 10);
  for (std::size_t i = 0; i < t.heights.size(); ++i) {
    std::string pts;
    for (std::size_t j = 0; j < t.radii.size(); ++j)
      pts += fmt::format("{:.1f},{:.1f} ", px(t.radii[j]), py(t.deviation[i][j]));
    const char* c = colors[i % 6];
    s += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", pts, c);
    s += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">a = {}</text>\n", W - R - 90, T + 16 * (i + 1), c,
                     num(t.heights[i]));
  }
  s += "</svg>\n";
  return s;
}

struct Check {
  json entries = json::array();
  bool passed = true;

  void add(const std::string& name, bool ok, json detail) {
    json e;
    e["check"] = name;
    e["passed"] = ok;
    e["detail"] = std::move(detail);
    entries.push_back(std::move(e));
    passed = passed && ok;
  }
};

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// ---- commands ------------------------------------------------------------

int cmd_group_validate(const RunConfig& cfg, std::ostream& out) {
  const HTypeGroup g = parse_group_spec(cfg.group);
  const auto rep = validate_htype(g, cfg.validation_samples, cfg.seed);
  json j;
  j["command"] = "group validate";
  j["config"] = json::parse(cfg.to_json());
  j["group"] = group_json(g);
  j["Q"] = g.Q();
  j["s"] = g.s();
  j["tolerance"] = rep.tolerance;
  j["passed"] = rep.passed;
  if (!rep.passed) j["failed_axiom"] = rep.first_failure();
  j["axioms"] = json::array();
  for (const auto& a : rep.axioms) j["axioms"].push_back({{"axiom", a.axiom}, {"residual", a.residual}, {"passed", a.passed}});
  emit(cfg, "group_validate.json", dump(j), out);
  return rep.passed ? ok : verification_failure;
}

int cmd_transform(const RunConfig& cfg, const std::string& profile_spec, const std::string& grid_text,
                  std::ostream& out) {
  const HTypeGroup g = parse_group_spec(cfg.group);
  const BiradialProfile f = parse_profile(g, profile_spec, cfg);
  const SpectrumGrid grid = parse_grid(grid_text);
  std::string csv = "branch,nu_or_mu,l,value,err_estimate\n";
  for (double nu : grid.nus)
    for (int l : grid.ls) {
      const auto r = gelfand_transform(f, SpectrumPoint::laguerre(nu, l), cfg.transform_tol);
      csv += fmt::format("laguerre,{},{},{},{}\n", num(nu), l, num(r.value), num(r.error));
    }
  for (double mu : grid.mus) {
    const auto r = gelfand_transform(f, SpectrumPoint::bessel(mu), cfg.transform_tol);
    csv += fmt::format("bessel,{},,{},{}\n", num(mu), num(r.value), num(r.error));
  }
  emit(cfg, "transform.csv", csv, out);
  return ok;
}

int cmd_poisson_hat(const RunConfig& cfg, double a, const std::string& grid_text, const std::string& variant,
                    bool with_oracle, std::ostream& out) {
  if (variant != "corrected" && variant != "paper" && variant != "both")
    throw std::invalid_argument("--variant must be corrected, paper or both");
  const HTypeGroup g = parse_group_spec(cfg.group);
  const PoissonKernel P(g, a);
  const SpectrumGrid grid = parse_grid(grid_text);
  std::string csv = "branch,nu_or_mu,l,closed_form,oracle,rel_err\n";
  auto row = [&](const std::string& branch, double param, const std::string& l, double cf, const SpectrumPoint& p) {
    if (!with_oracle) {
      csv += fmt::format("{},{},{},{},,\n", branch, num(param), l, num(cf));
      return;
    }
    const auto o = poisson_hat_oracle(P, p, cfg.transform_tol);
    csv += fmt::format("{},{},{},{},{},{}\n", branch, num(param), l, num(cf), num(o.value), num(rel(cf, o.value)));
  };
  for (double nu : grid.nus)
    for (int l : grid.ls) {
      const auto p = SpectrumPoint::laguerre(nu, l);
      if (variant != "paper")
        row("laguerre", nu, std::to_string(l), poisson_hat_laguerre(P, nu, l, LaguerreVariant::corrected), p);
      if (variant != "corrected")
        row("laguerre_paper", nu, std::to_string(l), poisson_hat_laguerre(P, nu, l, LaguerreVariant::paper), p);
    }
  for (double mu : grid.mus) row("bessel", mu, "", poisson_hat_bessel(P, mu), SpectrumPoint::bessel(mu));
  emit(cfg, "poisson_hat.csv", csv, out);
  return ok;
}

int cmd_poisson_verify(const RunConfig& cfg, std::ostream& out) {
  const HTypeGroup g = parse_group_spec(cfg.group);
  json j;
  j["command"] = "poisson verify";
  j["config"] = json::parse(cfg.to_json());
  j["group"] = group_json(g);
  Check c;

  const auto axioms = validate_htype(g, cfg.validation_samples, cfg.seed);
  {
    json d;
    for (const auto& a : axioms.axioms) d[a.axiom] = a.residual;
    c.add("htype_axioms", axioms.passed, d);
  }
  if (!axioms.passed) {
    j["passed"] = false;
    j["failed_axiom"] = axioms.first_failure();
    j["checks"] = c.entries;
    emit(cfg, "poisson_verify.json", dump(j), out);
    return verification_failure;
  }

  const PoissonKernel P(g, 1.0);
  j["c_norm"] = P.c_norm();
  {
    json d = json::array();
    bool okn = true;
    for (double a : {0.5, 1.0, 2.0}) {
      const auto r = l1_norm(P.at_height(a).profile(), 1e-9);
      okn = okn && std::abs(r.value - 1.0) <= 1e-6;
      d.push_back({{"a", a}, {"l1", r.value}, {"err", r.error}});
    }
    c.add("unit_mass", okn, d);
  }
  {
    const double cf = poisson_hat_bessel(P, 0.0);
    const auto o = poisson_hat_oracle(P, SpectrumPoint::bessel(0.0), cfg.transform_tol);
    c.add("bessel_zero_is_one", cf == 1.0 && std::abs(o.value - 1.0) <= 1e-4, {{"closed_form", cf}, {"oracle", o.value}});
  }
  {
    json d = json::array();
    bool okc = true;
    for (double nu : {0.5, 1.0})
      for (int l : {0, 1, 2}) {
        const double cf = poisson_hat_laguerre(P, nu, l);
        const double o = poisson_hat_oracle(P, SpectrumPoint::laguerre(nu, l), cfg.transform_tol).value;
        okc = okc && rel(cf, o) <= 1e-3;
        d.push_back({{"nu", nu}, {"l", l}, {"closed_form", cf}, {"oracle", o}, {"rel_err", rel(cf, o)}});
      }
    for (double mu : {0.5, 1.0}) {
      const double cf = poisson_hat_bessel(P, mu);
      const double o = poisson_hat_oracle(P, SpectrumPoint::bessel(mu), cfg.transform_tol).value;
      okc = okc && rel(cf, o) <= 1e-4;
      d.push_back({{"mu", mu}, {"closed_form", cf}, {"oracle", o}, {"rel_err", rel(cf, o)}});
    }
    c.add("closed_form_vs_oracle", okc, d);
  }
  {
    const PoissonKernel P2 = P.at_height(2.0);
    json d = json::array();
    bool okd = true;
    for (double nu : {0.5, 1.0})
      for (int l : {0, 1}) {
        const double lhs = poisson_hat_oracle(P2, SpectrumPoint::laguerre(nu, l), cfg.transform_tol).value;
        const double rhs = poisson_hat_oracle(P, SpectrumPoint::laguerre(2.0 * nu, l), cfg.transform_tol).value;
        okd = okd && rel(lhs, rhs) <= 1e-6;
        d.push_back({{"nu", nu}, {"l", l}, {"P2_hat", lhs}, {"P1_hat_at_2nu", rhs}});
      }
    c.add("height_scaling", okd, d);
  }
  {
    json d = json::array();
    bool okz = true;
    Vector w = Vector::Zero(g.k());
    w(0) = 1.0;
    for (double x : {0.0, 1.0})
      for (double nu : {0.5, 1.0}) {
        Vector X = Vector::Zero(g.dim_v());
        X(0) = x;
        try {
          const auto z = partial_fourier_z(P, X, nu, w, 1e-8);
          const auto b = z_fourier_beta(P, x, nu);
          const bool good = std::abs(z.imag) <= 1e-10 && rel(b.value, z.value) <= 1e-4;
          okz = okz && good;
          d.push_back({{"x", x}, {"nu", nu}, {"reduced", z.value}, {"direct", z.direct}, {"beta", b.value}});
        } catch (const ConsistencyError& e) {
          okz = false;
          d.push_back({{"x", x}, {"nu", nu}, {"error", e.what()}});
        }
      }
    c.add("central_fourier", okz, d);
    bool printed_consistent = true;
    Vector X = Vector::Zero(g.dim_v());
    X(0) = 1.0;
    try {
      partial_fourier_z(P, X, 1.0, w, 1e-8, ReducedExponent::printed);
    } catch (const ConsistencyError&) {
      printed_consistent = false;
    }
    j["printed_reduced_exponent_consistent"] = printed_consistent;
  }
  {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> A(0.5, 2.0), rho(-2.0, 2.0);
    json d = json::array();
    bool okl = true;
    for (int r : {1, 2})
      for (int i = 0; i < 5; ++i) {
        const double a = A(rng), z = rho(rng);
        const auto chk = laplace_identity(a, z, r);
        const double e = std::max(std::abs(chk.lhs.real() - chk.rhs.real()), std::abs(chk.lhs.imag() - chk.rhs.imag()));
        okl = okl && e <= 1e-8;
        d.push_back({{"r", r}, {"A", a}, {"rho", z}, {"max_abs_diff", e}});
      }
    c.add("laplace_identity", okl, d);
  }
  j["passed"] = c.passed;
  j["checks"] = c.entries;
  emit(cfg, "poisson_verify.json", dump(j), out);
  return c.passed ? ok : verification_failure;
}

int cmd_harmonic_demo(const RunConfig& cfg, double alpha, double bump_radius, const std::string& heights,
                      const std::string& radii, const std::string& svg, const std::string& route, std::ostream& out) {
  if (route != "support" && route != "recentered") throw std::invalid_argument("--route must be recentered or support");
  const ExtensionRoute r = route == "support" ? ExtensionRoute::support : ExtensionRoute::recentered;
  const HTypeGroup g = parse_group_spec(cfg.group);
  const PoissonKernel P(g);
  const auto datum = BoundaryDatum::bump_plus(g, alpha, bump_radius);
  const auto t = tangential_demo(datum, P, parse_list(heights), parse_list(radii), cfg.quad_tol, r);
  std::string csv = "a,R,deviation,err_estimate\n";
  for (std::size_t i = 0; i < t.heights.size(); ++i)
    for (std::size_t j = 0; j < t.radii.size(); ++j)
      csv += fmt::format("{},{},{},{}\n", num(t.heights[i]), num(t.radii[j]), num(t.deviation[i][j]), num(t.error[i][j]));
  emit(cfg, "harmonic_demo.csv", csv, out);
  if (!svg.empty()) {
    if (cfg.out_dir.empty()) {
      std::ofstream f(svg, std::ios::binary);
      if (!f) throw std::runtime_error(fmt::format("cannot write {}", svg));
      f << svg_plot(t);
    } else {
      emit(cfg, svg, svg_plot(t), out);
    }
  }
  bool dec = true;
  for (bool d : t.decreasing) dec = dec && d;
  return dec ? ok : verification_failure;
}

int cmd_harmonic_residual(const RunConfig& cfg, double alpha, double bump_radius, const std::string& point, double a,
                          const std::string& steps, std::ostream& out) {
  const HTypeGroup g = parse_group_spec(cfg.group);
  const PoissonKernel P(g);
  const auto datum = BoundaryDatum::bump_plus(g, alpha, bump_radius);
  const GroupElement n = point.empty() ? g.identity() : parse_point(g, point);
  const Field u = extension_field(datum, P, 1e-12, ExtensionRoute::support);
  const auto rows = richardson_table(g, u, {n, a}, parse_list(steps));
  std::string csv = "h,residual,ratio,noise\n";
  for (const auto& r : rows)
    csv += fmt::format("{},{},{},{}\n", num(r.h), num(r.residual), std::isnan(r.ratio) ? "" : num(r.ratio), num(r.noise));
  emit(cfg, "harmonic_residual.csv", csv, out);
  return ok;
}

int cmd_report(const RunConfig& cfg, const std::string& heights, std::ostream& out) {
  const HTypeGroup g = parse_group_spec(cfg.group);
  json j;
  j["command"] = "report";
  j["config"] = json::parse(cfg.to_json());
  j["group"] = group_json(g);
  const auto axioms = validate_htype(g, cfg.validation_samples, cfg.seed);
  j["htype_axioms_passed"] = axioms.passed;
  if (!axioms.passed) {
    j["failed_axiom"] = axioms.first_failure();
    emit(cfg, "report.json", dump(j), out);
    return verification_failure;
  }
  const PoissonKernel P(g);
  j["c_norm"] = P.c_norm();
  const std::vector<double> nus{0.5, 1.0, 2.0};
  json per_height = json::array();
  json patterns = json::object();
  double corrected_min = 1e300, oracle_max = 0.0, paper_max = 0.0, l0_diff = 0.0;
  for (double a : parse_list(heights)) {
    const auto rep = erratum_report(P.at_height(a), nus, 5, cfg.transform_tol);
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"nu", r.nu}, {"l", r.l}, {"paper", r.paper}, {"corrected", r.corrected}, {"oracle", r.oracle}});
    json pat = json::object();
    for (std::size_t i = 0; i < nus.size(); ++i) pat[num(nus[i])] = rep.sign_pattern[i];
    patterns[num(a)] = pat;
    per_height.push_back({{"a", a},
                          {"sign_pattern", pat},
                          {"paper_max_rel_err", rep.paper_max_rel_err},
                          {"corrected_max_rel_err", rep.corrected_max_rel_err},
                          {"l0_paper_vs_corrected", rep.l0_max_rel_diff},
                          {"rows", rows}});
    corrected_min = std::min(corrected_min, rep.corrected_min_abs);
    oracle_max = std::max(oracle_max, rep.corrected_max_rel_err);
    paper_max = std::max(paper_max, rep.paper_max_rel_err);
    l0_diff = std::max(l0_diff, rep.l0_max_rel_diff);
  }
  j["paper_variant_sign_pattern"] = patterns;
  j["corrected_variant_min_abs"] = corrected_min;
  j["oracle_max_rel_err"] = oracle_max;
  j["paper_variant_max_rel_err"] = paper_max;
  j["l0_paper_vs_corrected_max_rel_diff"] = l0_diff;
  j["sign_pattern_legend"] = "per nu, one character per l = 0..5: '+' paper variant has the oracle's sign, '-' opposite";
  j["erratum"] = per_height;
  emit(cfg, "report.json", dump(j), out);
  return (oracle_max <= 1e-3 && corrected_min > 0.0) ? ok : verification_failure;
}

}  // namespace

void RunConfig::check() const {
  if (!(transform_tol > 0.0) || !(quad_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (validation_samples < 1) throw std::invalid_argument("validation_samples must be at least 1");
}

std::string RunConfig::to_json() const {
  json j;
  j["group"] = group;
  j["transform_tol"] = transform_tol;
  j["quad_tol"] = quad_tol;
  j["seed"] = seed;
  j["validation_samples"] = validation_samples;
  j["out_dir"] = out_dir;
  return j.dump();
}

void merge_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument(fmt::format("cannot read config file {}", path));
  const json j = json::parse(f);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "group")
      cfg.group = v.is_string() ? v.get<std::string>() : v.dump();
    else if (key == "transform_tol")
      cfg.transform_tol = v.get<double>();
    else if (key == "quad_tol")
      cfg.quad_tol = v.get<double>();
    else if (key == "seed")
      cfg.seed = v.get<std::uint64_t>();
    else if (key == "validation_samples")
      cfg.validation_samples = v.get<int>();
    else if (key == "out_dir")
      cfg.out_dir = v.get<std::string>();
    else
      throw std::invalid_argument(fmt::format("unknown config key '{}'", key));
  }
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> v;
  for (const auto& s : split(text, ',')) v.push_back(to_double(s));
  return v;
}

SpectrumGrid parse_grid(std::string_view text) {
  SpectrumGrid g;
  for (const auto& part : split(text, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(fmt::format("grid part '{}' lacks '='", part));
    const std::string key = trim(part.substr(0, eq));
    const std::string val = part.substr(eq + 1);
    if (key == "nu") {
      g.nus = parse_list(val);
    } else if (key == "mu") {
      g.mus = parse_list(val);
    } else if (key == "l") {
      g.ls.clear();
      for (const auto& item : split(val, ',')) {
        const auto c = item.find(':');
        if (c == std::string::npos) {
          g.ls.push_back(to_int(item));
        } else {
          const int lo = to_int(trim(item.substr(0, c))), hi = to_int(trim(item.substr(c + 1)));
          if (hi < lo) throw std::invalid_argument(fmt::format("empty l range '{}'", item));
          for (int l = lo; l <= hi; ++l) g.ls.push_back(l);
        }
      }
    } else {
      throw std::invalid_argument(fmt::format("unknown grid key '{}'", key));
    }
  }
  if (!g.nus.empty() && g.ls.empty()) g.ls = {0};
  return g;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) { return fmt::format("{}", v); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic analysis on H-type groups", "htype"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, group, out_dir;
  double transform_tol = 0.0, quad_tol = 0.0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--group", group, "group descriptor: heisenberg:R, quaternionic:N or JSON");
  app.add_option("--out-dir", out_dir, "write outputs into this directory (overrides HTYPE_OUT_DIR)");
  app.add_option("--transform-tol", transform_tol, "absolute tolerance of transform quadratures");
  app.add_option("--quad-tol", quad_tol, "absolute tolerance of harmonic-extension quadratures");
  app.add_option("--seed", seed, "seed for pseudo-random validation points");

  auto* group_cmd = app.add_subcommand("group", "group utilities")->require_subcommand(1)->fallthrough();
  auto* validate = group_cmd->add_subcommand("validate", "check the H-type axioms")->fallthrough();

  auto* transform = app.add_subcommand("transform", "Gelfand transform of a biradial profile")->fallthrough();
  std::string profile = "gaussian", grid = "nu=0.5,1,2;l=0:2;mu=0,0.5,1";
  transform->add_option("--profile", profile, "gaussian[:w], bump[:r], poisson[:a] or csv:path")->capture_default_str();
  transform->add_option("--grid", grid, "spectrum grid, e.g. nu=0.5,1;l=0:5;mu=0,1")->capture_default_str();

  auto* poisson = app.add_subcommand("poisson", "Poisson kernel")->require_subcommand(1)->fallthrough();
  auto* hat = poisson->add_subcommand("hat", "closed-form Gelfand transform against the oracle")->fallthrough();
  double a = 1.0;
  std::string hat_grid = "nu=0.5,1,2;l=0:5;mu=0,0.5,1,2", variant = "corrected";
  bool no_oracle = false;
  hat->add_option("--a", a, "height")->capture_default_str();
  hat->add_option("--grid", hat_grid, "spectrum grid")->capture_default_str();
  hat->add_option("--variant", variant, "corrected, paper or both")->capture_default_str();
  hat->add_flag("--no-oracle", no_oracle, "skip the brute-force columns");
  auto* verify = poisson->add_subcommand("verify", "run the consistency suite")->fallthrough();

  auto* harmonic = app.add_subcommand("harmonic", "harmonic extension")->require_subcommand(1)->fallthrough();
  auto* demo = harmonic->add_subcommand("demo", "convergence table at infinity")->fallthrough();
  double alpha = 0.5, bump_radius = 1.0;
  std::string heights = "0.5,1,2", radii = "4,8,16", svg, route = "recentered";
  demo->add_option("--alpha", alpha, "limit value of the boundary data")->capture_default_str();
  demo->add_option("--bump-radius", bump_radius, "radius of the bump added to alpha")->capture_default_str();
  demo->add_option("--heights", heights, "comma-separated heights a")->capture_default_str();
  demo->add_option("--radii", radii, "comma-separated gauge radii R")->capture_default_str();
  demo->add_option("--svg", svg, "also write an SVG plot to this file");
  demo->add_option("--route", route, "recentered or support")->capture_default_str();
  auto* residual = harmonic->add_subcommand("residual", "Laplace-Beltrami residual of u = phi * P_a")->fallthrough();
  std::string point, steps = "0.2,0.1,0.05";
  double res_a = 1.0;
  residual->add_option("--alpha", alpha, "limit value of the boundary data")->capture_default_str();
  residual->add_option("--bump-radius", bump_radius, "radius of the bump")->capture_default_str();
  residual->add_option("--point", point, "X and Z coordinates, comma separated (default: identity)");
  residual->add_option("--a", res_a, "height")->capture_default_str();
  residual->add_option("--steps", steps, "finite-difference steps")->capture_default_str();

  auto* report = app.add_subcommand("report", "JSON bundle with the erratum adjudication")->fallthrough();
  std::string report_heights = "1";
  report->add_option("--heights", report_heights, "heights for the erratum grid")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  auto failure = [&](const std::string& type, const std::string& msg, int code) {
    json j;
    j["error"] = type;
    j["message"] = msg;
    err << j.dump() << '\n';
    return code;
  };

  try {
    if (!config_path.empty()) merge_config_file(cfg, config_path);
    if (const char* env = std::getenv("HTYPE_OUT_DIR"); env && *env) cfg.out_dir = env;
    if (!group.empty()) cfg.group = group;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (app.count("--transform-tol")) cfg.transform_tol = transform_tol;
    if (app.count("--quad-tol")) cfg.quad_tol = quad_tol;
    if (app.count("--seed")) cfg.seed = seed;
    cfg.check();

    if (validate->parsed()) return cmd_group_validate(cfg, out);
    if (transform->parsed()) return cmd_transform(cfg, profile, grid, out);
    if (hat->parsed()) return cmd_poisson_hat(cfg, a, hat_grid, variant, !no_oracle, out);
    if (verify->parsed()) return cmd_poisson_verify(cfg, out);
    if (demo->parsed()) return cmd_harmonic_demo(cfg, alpha, bump_radius, heights, radii, svg, route, out);
    if (residual->parsed()) return cmd_harmonic_residual(cfg, alpha, bump_radius, point, res_a, steps, out);
    if (report->parsed()) return cmd_report(cfg, report_heights, out);
    return failure("usage", "no command", usage_error);
  } catch (const AxiomError& e) {
    return failure("axiom", e.what(), verification_failure);
  } catch (const ConsistencyError& e) {
    return failure("consistency", e.what(), verification_failure);
  } catch (const QuadratureError& e) {
    return failure("quadrature", e.what(), verification_failure);
  } catch (const TruncationError& e) {
    return failure("truncation", e.what(), verification_failure);
  } catch (const DimensionError& e) {
    return failure("dimension", e.what(), usage_error);
  } catch (const DomainError& e) {
    return failure("domain", e.what(), usage_error);
  } catch (const nlohmann::json::exception& e) {
    return failure("config", e.what(), usage_error);
  } catch (const std::invalid_argument& e) {
    return failure("usage", e.what(), usage_error);
  } catch (const std::exception& e) {
    return failure("runtime", e.what(), verification_failure);
  }
}

}  // namespace htype::cli
