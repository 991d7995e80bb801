// Command-line front end.
//
// Exit codes: 0 success, 1 check failure, 2 usage or parse error,
// 3 numerical failure (integrator stops, degenerate geometry).

#include "asymptotica/construct.hpp"
#include "asymptotica/monodromy.hpp"
#include "asymptotica/surfaces.hpp"
#include "asymptotica/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace asym;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  json doc = json::object();
  std::optional<std::string> csv;  // absent: CSV not offered by the command
  std::string text;
  int code = kOk;
};

// ---------------------------------------------------------------------------
// Argument helpers

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::array<std::string, 3> three(const std::string& s, const char* what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError(std::string(what) + " needs three comma-separated components");
  return {parts[0], parts[1], parts[2]};
}

double number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used == 0 || used != s.size()) throw UsageError(std::string(what) + ": '" + s + "' is not a number");
  return v;
}

Vec3d vec3(const std::string& s, const char* what) {
  const auto p = three(s, what);
  return {number(p[0], what), number(p[1], what), number(p[2], what)};
}

std::array<Expr, 3> exprs3(const std::string& s, const char* what) {
  const auto p = three(s, what);
  return {parse(p[0]), parse(p[1]), parse(p[2])};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json mat_json(const Mat2& m) { return json::array({{num(m[0][0]), num(m[0][1])}, {num(m[1][0]), num(m[1][1])}}); }

// ---------------------------------------------------------------------------
// Curves and fields

struct CurveArgs {
  std::string curve;  // built-in name or "g1,g2,g3"
  double x0 = 0.0, x1 = 2.0 * std::numbers::pi;
  bool closed = false;
};

Curve load_curve(const CurveArgs& a) {
  if (a.curve.find(',') == std::string::npos) return Curve::builtin(a.curve);
  return Curve::from_exprs(exprs3(a.curve, "--curve"), a.x0, a.x1, a.closed);
}

struct FieldArgs {
  std::string field = "t1";
  std::string xi;  // "xi1,xi2,xi3" overrides --field
  CurveArgs curve;
  bool curve_given = false;
  std::string l1 = "cos(x)", H = "1";
  double radius = 0.1;
};

const std::vector<std::string> kAmbientNames{"circle-example", "flat", "zero-monodromy", "contact"};

std::string default_curve_for(const std::string& field) {
  if (field == "circle-example") return "circle";
  if (field == "zero-monodromy") return "line";
  return "t1";
}

struct LoadedField {
  std::shared_ptr<ChartField> chart;
  std::optional<AmbientField> ambient;
  std::string description;
};

AmbientField load_ambient(const FieldArgs& a) {
  if (!a.xi.empty()) return AmbientField(exprs3(a.xi, "--xi"));
  if (std::find(kAmbientNames.begin(), kAmbientNames.end(), a.field) == kAmbientNames.end())
    throw UsageError("'" + a.field + "' is not an ambient field; choose one of circle-example, flat, zero-monodromy, "
                     "contact or give --xi");
  return builtin_ambient_field(a.field);
}

LoadedField load_field(FieldArgs a) {
  if (a.xi.empty() && a.field == "t1") {
    if (a.curve_given) throw UsageError("field t1 carries its own core curve; drop --curve");
    T1Options o;
    o.l1 = parse(a.l1);
    o.H = parse(a.H);
    return {std::make_shared<TubularField>(build_t1(o), a.radius), std::nullopt,
            "t1 (l1 = " + to_string(o.l1) + ", H = " + to_string(o.H) + ")"};
  }
  AmbientField amb = load_ambient(a);
  if (!a.curve_given) a.curve.curve = default_curve_for(a.xi.empty() ? a.field : "");
  const Curve core = load_curve(a.curve);
  const std::string desc = a.xi.empty() ? a.field : "xi = (" + a.xi + ")";
  return {std::make_shared<AmbientChartField>(amb, TubularChart(core, a.radius)), amb, desc};
}

void add_curve_options(CLI::App* c, CurveArgs& a, bool* given = nullptr) {
  auto* opt = c->add_option("--curve", a.curve, "Core curve: t1, circle, line, or 'g1,g2,g3' in x");
  if (given) opt->each([given](const std::string&) { *given = true; });
  c->add_option("--x0", a.x0, "Parameter interval start for expression curves");
  c->add_option("--x1", a.x1, "Parameter interval end for expression curves");
  c->add_flag("--closed", a.closed, "Expression curve is periodic on [x0, x1]");
}

void add_field_options(CLI::App* c, FieldArgs& a, bool with_t1 = true) {
  c->add_option("--field", a.field, "Field: t1, circle-example, flat, zero-monodromy, contact");
  c->add_option("--xi", a.xi, "Ambient field 'xi1,xi2,xi3' in x, y, z (overrides --field)");
  add_curve_options(c, a.curve, &a.curve_given);
  if (with_t1) {
    c->add_option("--l1", a.l1, "t1 field: coefficient l1(x)");
    c->add_option("--H", a.H, "t1 field: prescribed f(x,0,0) = H(x)");
  }
  c->add_option("--radius", a.radius, "Tube radius")->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------------------
// Commands

struct ClassifyArgs {
  FieldArgs field;
  int nx = 64, ny = 5, nz = 5;
  double tol = kParabolicTol;
};

Report cmd_classify(ClassifyArgs a) {
  const LoadedField lf = load_field(a.field);
  const Curve& core = lf.chart->chart().core();
  const double r = lf.chart->chart().radius();
  std::map<std::string, int> counts;
  for (PointClass c : {PointClass::Hyperbolic, PointClass::Elliptic, PointClass::Parabolic, PointClass::FullyDegenerate})
    counts[std::string(name(c))] = 0;
  int singular = 0;
  std::ostringstream csv;
  csv << "x,y,z,e,f,g,K,class\n";
  csv.precision(12);
  auto lin = [](double lo, double hi, int n, int i) { return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1); };
  const double xend = core.closed() ? core.x1() - core.period() / a.nx : core.x1();
  for (int i = 0; i < a.nx; ++i)
    for (int j = 0; j < a.ny; ++j)
      for (int k = 0; k < a.nz; ++k) {
        const double x = lin(core.x0(), xend, a.nx, i), y = lin(-r, r, a.ny, j), z = lin(-r, r, a.nz, k);
        try {
          const Reduced d = reduce(*lf.chart, x, y, z);
          const PointClass pc = classify(d.e, d.f, d.g, a.tol);
          ++counts[std::string(name(pc))];
          csv << x << ',' << y << ',' << z << ',' << d.e << ',' << d.f << ',' << d.g << ','
              << d.e * d.g - d.f * d.f << ',' << name(pc) << '\n';
        } catch (const ReductionSingular&) {
          ++singular;
          csv << x << ',' << y << ',' << z << ",,,,,ReductionSingular\n";
        }
      }
  Report rep;
  rep.doc = {{"command", "classify"}, {"field", lf.description}, {"radius", r},
             {"grid", {a.nx, a.ny, a.nz}}, {"parabolic_tol", a.tol}, {"counts", counts},
             {"reduction_singular", singular}, {"total", a.nx * a.ny * a.nz}};
  rep.csv = csv.str();
  std::ostringstream t;
  t << "field " << lf.description << ", tube radius " << r << ", grid " << a.nx << "x" << a.ny << "x" << a.nz << "\n";
  for (const auto& [k, v] : counts) t << "  " << k << ": " << v << "\n";
  if (singular) t << "  ReductionSingular: " << singular << "\n";
  rep.text = t.str();
  return rep;
}

struct PoincareArgs {
  FieldArgs field;
  std::optional<double> period;
  double hyperbolic_tol = kHyperbolicTol;
  bool fd_check = false;
  double fd_h = 1e-5;
  double atol = 1e-10, rtol = 1e-10;
};

Report cmd_poincare(PoincareArgs a) {
  const LoadedField lf = load_field(a.field);
  const Curve& core = lf.chart->chart().core();
  const double period = a.period.value_or(core.period());
  MonodromyOptions mo;
  mo.hyperbolic_tol = a.hyperbolic_tol;
  mo.ode.atol = a.atol;
  mo.ode.rtol = a.rtol;
  const MonodromyResult m = monodromy(*lf.chart, period, mo);

  json eig = json::array();
  for (const auto& l : m.eigenvalues) eig.push_back({{"re", num(l.real())}, {"im", num(l.imag())}, {"abs", num(std::abs(l))}});
  Report rep;
  rep.doc = {{"command", "poincare"},
             {"field", lf.description},
             {"period", period},
             {"Q", mat_json(m.Q)},
             {"eigenvalues", eig},
             {"modulus_gap", {num(m.modulus_gap[0]), num(m.modulus_gap[1])}},
             {"hyperbolic", m.hyperbolic},
             {"hyperbolic_tol", m.hyperbolic_tol},
             {"trace_integral", num(m.trace_integral)},
             {"diagonal_integrals_ode", {num(m.diagonal_ode[0]), num(m.diagonal_ode[1])}},
             {"diagonal_integrals_quadrature", {num(m.diagonal_quadrature[0]), num(m.diagonal_quadrature[1])}},
             {"liouville_rel_error", num(m.liouville_rel_error)},
             {"max_liouville_checkpoint_error", num(m.max_liouville_checkpoint_error)},
             {"steps", {{"accepted", m.stats.accepted}, {"rejected", m.stats.rejected}}}};
  std::ostringstream t;
  t.precision(10);
  t << "field " << lf.description << ", period " << period << "\n"
    << "Q = [[" << m.Q[0][0] << ", " << m.Q[0][1] << "], [" << m.Q[1][0] << ", " << m.Q[1][1] << "]]\n"
    << "eigenvalues: " << m.eigenvalues[0] << ", " << m.eigenvalues[1] << "\n"
    << "hyperbolic: " << (m.hyperbolic ? "yes" : "no") << " (tolerance " << m.hyperbolic_tol << ")\n"
    << "diagonal integrals: ode " << m.diagonal_ode[0] << ", " << m.diagonal_ode[1] << "; quadrature "
    << m.diagonal_quadrature[0] << ", " << m.diagonal_quadrature[1] << "\n"
    << "Liouville relative error: " << m.liouville_rel_error << "\n";
  std::ostringstream csv;
  csv.precision(15);
  csv << "quantity,value\nQ11," << m.Q[0][0] << "\nQ12," << m.Q[0][1] << "\nQ21," << m.Q[1][0] << "\nQ22," << m.Q[1][1]
      << "\n";

  if (a.fd_check) {
    const ChartBinarySystem sys(*lf.chart);
    FlowOptions fo;
    fo.radius = lf.chart->chart().radius();
    fo.ode.atol = a.atol;
    fo.ode.rtol = a.rtol;
    const Mat2 fd = fd_poincare_derivative(sys, core.x0(), period, a.fd_h, fo);
    double max_rel = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const double dev = std::abs(fd[i][j] - m.Q[i][j]);
        max_rel = std::max(max_rel, dev / std::max(std::abs(m.Q[i][j]), 1e-300));
        ok = ok && dev <= std::max(1e-4 * std::abs(m.Q[i][j]), 1e-8);
      }
    rep.doc["fd_check"] = {{"h", a.fd_h}, {"jacobian", mat_json(fd)}, {"max_rel_deviation", num(max_rel)}, {"pass", ok}};
    t << "finite-difference Jacobian (h = " << a.fd_h << "): [[" << fd[0][0] << ", " << fd[0][1] << "], [" << fd[1][0]
      << ", " << fd[1][1] << "]]\nmax relative deviation: " << max_rel << (ok ? " (PASS)" : " (FAIL)") << "\n";
    csv << "FD11," << fd[0][0] << "\nFD12," << fd[0][1] << "\nFD21," << fd[1][0] << "\nFD22," << fd[1][1] << "\n";
    if (!ok) rep.code = kCheckFailed;
  }
  rep.text = t.str();
  rep.csv = csv.str();
  return rep;
}

struct VerifyArgs {
  std::vector<std::string> only;
  bool inject_failure = false;
  std::optional<std::uint64_t> seed;
};

Report cmd_verify(const VerifyArgs& a) {
  verify::Context ctx;
  ctx.inject_failure = a.inject_failure;
  ctx.seeds = a.seed ? std::vector<std::uint64_t>{*a.seed, *a.seed + 1, *a.seed + 2} : verify::default_seeds();
  std::vector<int> ids;
  for (const std::string& s : a.only)
    for (const std::string& part : split(s, ',')) {
      const int id = verify::resolve(part);
      if (id == 0) throw UsageError("unknown check '" + part + "'");
      ids.push_back(id);
    }
  const auto results = verify::run(ctx, ids);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.started).count();

  Report rep;
  json checks = json::array();
  std::ostringstream t, csv;
  csv << "id,tag,status,seconds\n";
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    json metrics = json::array();
    for (const auto& m : r.metrics)
      metrics.push_back({{"name", m.name}, {"value", num(m.value)}, {"target", num(m.target)},
                         {"tolerance", num(m.tolerance)}, {"pass", m.passed}});
    json c = {{"id", r.id}, {"tag", r.tag}, {"title", r.title}, {"pass", r.passed},
              {"seconds", r.seconds}, {"metrics", metrics}, {"notes", r.notes}};
    if (!r.error.empty()) c["error"] = r.error;
    checks.push_back(c);
    t << (r.passed ? "PASS" : "FAIL") << "  " << r.id << " " << r.tag << "  " << r.title << "  (" << fmt(r.seconds)
      << " s)\n";
    for (const auto& m : r.metrics)
      if (!m.passed) t << "        " << m.name << " = " << fmt(m.value) << " (target " << fmt(m.target) << ")\n";
    if (!r.error.empty()) t << "        error: " << r.error << "\n";
    csv << r.id << ',' << r.tag << ',' << (r.passed ? "PASS" : "FAIL") << ',' << r.seconds << '\n';
  }
  t << (all ? "all checks passed" : "some checks failed") << " in " << fmt(total) << " s\n";
  json seeds = ctx.seeds;
  rep.doc = {{"command", "verify-paper"}, {"pass", all}, {"seconds", total}, {"seeds", seeds},
             {"inject_failure", a.inject_failure}, {"checks", checks}};
  rep.text = t.str();
  rep.csv = csv.str();
  rep.code = all ? kOk : kCheckFailed;
  return rep;
}

struct IntegrateArgs {
  FieldArgs field;
  std::string surface;  // "arnold:m,n" integrates the surface equation instead
  std::string start = "0,0,0";
  std::optional<double> x1;
  double branch = 0.0;
  double atol = 1e-10, rtol = 1e-10;
  std::string svg;
};

struct SurfaceSpec {
  int m, n;
};

SurfaceSpec parse_surface(const std::string& s) {
  if (s.rfind("arnold:", 0) != 0) throw UsageError("surface must be 'arnold:m,n'");
  const auto mn = split(s.substr(7), ',');
  if (mn.size() != 2) throw UsageError("surface must be 'arnold:m,n'");
  const SurfaceSpec r{static_cast<int>(number(mn[0], "m")), static_cast<int>(number(mn[1], "n"))};
  if (!(1 < r.m && r.m < r.n)) throw UsageError("arnold:m,n needs 1 < m < n");
  return r;
}

void write_svg(const std::string& path, const std::vector<Vec3d>& core, const std::vector<Vec3d>& line) {
  double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
  for (const auto* pts : {&core, &line})
    for (const Vec3d& p : *pts)
      for (int i = 0; i < 2; ++i) {
        lo[i] = std::min(lo[i], p[static_cast<std::size_t>(i)]);
        hi[i] = std::max(hi[i], p[static_cast<std::size_t>(i)]);
      }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});
  const double size = 600.0, pad = 20.0, s = (size - 2 * pad) / span;
  auto poly = [&](const std::vector<Vec3d>& pts, const char* style) {
    std::ostringstream os;
    os << "  <polyline fill=\"none\" " << style << " points=\"";
    for (const Vec3d& p : pts) os << pad + (p[0] - lo[0]) * s << ',' << size - pad - (p[1] - lo[1]) * s << ' ';
    os << "\"/>\n";
    return os.str();
  };
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n"
    << poly(core, "stroke=\"#999\" stroke-width=\"1\"") << poly(line, "stroke=\"#c00\" stroke-width=\"1.5\"")
    << "</svg>\n";
}

Report cmd_integrate(IntegrateArgs a) {
  const Vec3d st = vec3(a.start, "--start");
  std::unique_ptr<BinarySystem> sys;
  std::optional<LoadedField> lf;
  std::optional<ParamSurface> surface;
  std::string desc;
  double x0 = st[0], x1 = 0.0, radius = a.field.radius;
  if (!a.surface.empty()) {
    const SurfaceSpec sp = parse_surface(a.surface);
    surface = arnold_surface(sp.m, sp.n, 2).surface;
    sys = std::make_unique<SurfaceBinarySystem>(*surface);
    desc = a.surface;
    x1 = a.x1.value_or(0.5);
  } else {
    lf = load_field(a.field);
    sys = std::make_unique<ChartBinarySystem>(*lf->chart);
    desc = lf->description;
    const Curve& core = lf->chart->chart().core();
    x1 = a.x1.value_or(x0 + core.period());
  }
  FlowOptions fo;
  fo.radius = radius;
  fo.ode.atol = a.atol;
  fo.ode.rtol = a.rtol;
  const FlowResult fr = integrate_asymptotic(*sys, x0, st[1], st[2], x1, a.branch, fo);

  auto ambient = [&](const PathSample& p) {
    return surface ? (*surface)(p.x, p.y) : lf->chart->chart().alpha(p.x, p.y, p.z);
  };
  Report rep;
  json samples = json::array();
  std::ostringstream csv;
  csv.precision(15);
  csv << "x,y,z,p,X,Y,Z\n";
  std::vector<Vec3d> line;
  for (const PathSample& p : fr.path.samples) {
    const Vec3d q = ambient(p);
    line.push_back(q);
    samples.push_back({num(p.x), num(p.y), num(p.z), num(p.p), num(q[0]), num(q[1]), num(q[2])});
    csv << p.x << ',' << p.y << ',' << p.z << ',' << p.p << ',' << q[0] << ',' << q[1] << ',' << q[2] << '\n';
  }
  const PathSample end = fr.path.samples.empty() ? PathSample{x0, st[1], st[2], 0.0} : fr.path.samples.back();
  rep.doc = {{"command", "integrate"},
             {"system", desc},
             {"status", std::string(name(fr.status))},
             {"message", fr.message},
             {"start", {x0, st[1], st[2]}},
             {"end", {num(end.x), num(end.y), num(end.z)}},
             {"x1", x1},
             {"max_residual", num(fr.path.max_residual)},
             {"steps", {{"accepted", fr.path.stats.accepted}, {"rejected", fr.path.stats.rejected}}},
             {"columns", {"x", "y", "z", "p", "X", "Y", "Z"}},
             {"samples", samples}};
  std::ostringstream t;
  t.precision(10);
  t << desc << ": " << name(fr.status) << (fr.message.empty() ? "" : " (" + fr.message + ")") << "\n"
    << "end (x, y, z) = (" << end.x << ", " << end.y << ", " << end.z << "), " << fr.path.samples.size()
    << " samples, max residual " << fr.path.max_residual << "\n";
  rep.text = t.str();
  rep.csv = csv.str();
  if (!a.svg.empty()) {
    std::vector<Vec3d> core;
    for (int i = 0; i <= 256; ++i) {
      const double x = x0 + (x1 - x0) * i / 256.0;
      core.push_back(surface ? (*surface)(x, 0.0) : lf->chart->chart().alpha(x, 0.0, 0.0));
    }
    write_svg(a.svg, core, line);
  }
  if (fr.status != FlowStatus::Completed) rep.code = kNumerical;
  return rep;
}

struct CurvatureArgs {
  FieldArgs field;
  std::string point = "1,0,0", direction = "0,1,0";
  bool project = false;
};

Report cmd_curvature(CurvatureArgs a) {
  const AmbientField xi = load_ambient(a.field);
  const Vec3d p = vec3(a.point, "--point"), dr = vec3(a.direction, "--direction");
  NormalCurvatureOptions o;
  o.project = a.project;
  const double kn = normal_curvature(xi, p, dr, o) + 0.0;  // no "-0" in reports
  Report rep;
  rep.doc = {{"command", "curvature"}, {"point", {p[0], p[1], p[2]}}, {"direction", {dr[0], dr[1], dr[2]}},
             {"projected", a.project}, {"normal_curvature", num(kn)}};
  rep.text = "k_n = " + fmt(kn) + "\n";
  rep.csv = "k_n\n" + fmt(kn) + "\n";
  return rep;
}

struct IntegrabilityArgs {
  FieldArgs field;
  std::string point = "1,0,0";
  int grid = 0;  // > 0: also scan a grid over the box
  double half = 1.0;
  double tol = 1e-10;
};

Report cmd_integrability(IntegrabilityArgs a) {
  const AmbientField xi = load_ambient(a.field);
  const Vec3d p = vec3(a.point, "--point");
  const double d = integrability_defect(xi, p);
  Report rep;
  rep.doc = {{"command", "integrability"}, {"point", {p[0], p[1], p[2]}}, {"defect", num(d)}};
  std::ostringstream csv, t;
  csv.precision(15);
  csv << "x,y,z,defect\n" << p[0] << ',' << p[1] << ',' << p[2] << ',' << d << '\n';
  t << "<xi, curl xi>(" << p[0] << ", " << p[1] << ", " << p[2] << ") = " << fmt(d) << "\n";
  if (a.grid > 0) {
    double worst = 0.0;
    for (int i = 0; i < a.grid; ++i)
      for (int j = 0; j < a.grid; ++j)
        for (int k = 0; k < a.grid; ++k) {
          auto c = [&](int n) { return a.grid == 1 ? 0.0 : -a.half + 2.0 * a.half * n / (a.grid - 1); };
          const Vec3d q{c(i), c(j), c(k)};
          try {
            const double v = integrability_defect(xi, q);
            worst = std::max(worst, std::abs(v));
            csv << q[0] << ',' << q[1] << ',' << q[2] << ',' << v << '\n';
          } catch (const ZeroField&) {
            csv << q[0] << ',' << q[1] << ',' << q[2] << ",\n";
          }
        }
    const bool integrable = worst <= a.tol;
    rep.doc["grid"] = {{"n", a.grid}, {"half_width", a.half}, {"max_abs_defect", worst}, {"tol", a.tol},
                       {"integrable", integrable}};
    t << "max |<xi, curl xi>| over the grid: " << fmt(worst) << (integrable ? " (integrable)" : " (not integrable)")
      << "\n";
  }
  rep.text = t.str();
  rep.csv = csv.str();
  return rep;
}

struct StarlikeArgs {
  CurveArgs curve{"t1"};
  std::string polygon;  // "x1,y1;x2,y2;..."
  int samples = 256;
};

Report cmd_starlike(const StarlikeArgs& a) {
  StarlikeResult r;
  std::string desc;
  if (!a.polygon.empty()) {
    std::vector<std::array<double, 2>> poly;
    for (const std::string& v : split(a.polygon, ';')) {
      const auto xy = split(v, ',');
      if (xy.size() != 2) throw UsageError("--polygon vertices must be 'x,y' separated by ';'");
      poly.push_back({number(xy[0], "--polygon"), number(xy[1], "--polygon")});
    }
    r = starlike_polygon(poly);
    desc = "polygon with " + std::to_string(poly.size()) + " vertices";
  } else {
    r = is_starlike_projection(load_curve(a.curve), a.samples);
    desc = "projection of " + a.curve.curve;
  }
  Report rep;
  json kernel = json::array();
  std::ostringstream csv;
  csv.precision(15);
  csv << "x,y\n";
  for (const auto& v : r.kernel) {
    kernel.push_back({v[0], v[1]});
    csv << v[0] << ',' << v[1] << '\n';
  }
  rep.doc = {{"command", "starlike"}, {"input", desc}, {"starlike", r.starlike}, {"kernel", kernel}};
  rep.doc["star_point"] = r.star_point ? json{(*r.star_point)[0], (*r.star_point)[1]} : json(nullptr);
  std::ostringstream t;
  t << desc << ": " << (r.starlike ? "starlike" : "not starlike");
  if (r.star_point) t << ", star point (" << (*r.star_point)[0] << ", " << (*r.star_point)[1] << ")";
  t << "\n";
  rep.text = t.str();
  rep.csv = csv.str();
  return rep;
}

struct ArnoldArgs {
  std::string surface = "arnold:2,3";
  int samples = 64;
  double u_max = 0.5;
  std::string grid_csv;
  int grid = 21;
};

Report cmd_arnold(const ArnoldArgs& a) {
  const SurfaceSpec sp = parse_surface(a.surface);
  const ArnoldSurface s = arnold_surface(sp.m, sp.n, a.samples, a.u_max);
  const ArnoldReport& r = s.report;
  Report rep;
  std::ostringstream csv;
  csv.precision(15);
  csv << "u,e,f,f_bracket,f_closed_form\n";
  json rows = json::array();
  double e_max = 0.0, f_dev = 0.0;
  for (std::size_t i = 0; i < r.u.size(); ++i) {
    const double fc = f_on_curve(sp.m, sp.n, r.u[i]);
    csv << r.u[i] << ',' << r.e[i] << ',' << r.f[i] << ',' << r.f_br[i] << ',' << fc << '\n';
    rows.push_back({r.u[i], r.e[i], r.f[i], r.f_br[i], fc});
    e_max = std::max(e_max, std::abs(r.e[i]));
    f_dev = std::max(f_dev, std::abs(r.f_br[i] - fc) / std::max(1.0, std::abs(fc)));
  }
  json comps = json::array();
  for (const Expr& c : s.surface.components()) comps.push_back(to_string(c));
  rep.doc = {{"command", "arnold-surface"}, {"m", sp.m}, {"n", sp.n}, {"rotating", sp.n == sp.m + 1},
             {"f00", num(r.f00)}, {"max_abs_e_on_curve", num(e_max)}, {"max_rel_f_deviation", num(f_dev)},
             {"components", comps}, {"columns", {"u", "e", "f", "f_bracket", "f_closed_form"}}, {"samples", rows}};
  std::ostringstream t;
  t.precision(12);
  t << a.surface << (sp.n == sp.m + 1 ? " (rotating)" : " (non-rotating)") << "\n"
    << "f(0,0) = [beta_u, beta_v, beta_uv](0,0) = " << r.f00 << "\n"
    << "max |e(u,0)| = " << e_max << ", max relative deviation of f(u,0) from the closed form = " << f_dev << "\n";
  rep.text = t.str();
  rep.csv = csv.str();
  if (!a.grid_csv.empty()) {
    std::ofstream g(a.grid_csv);
    if (!g) throw UsageError("cannot write " + a.grid_csv);
    g.precision(15);
    g << "u,v,X,Y,Z\n";
    for (int i = 0; i < a.grid; ++i)
      for (int j = 0; j < a.grid; ++j) {
        const double u = -a.u_max + 2 * a.u_max * i / (a.grid - 1), v = -a.u_max + 2 * a.u_max * j / (a.grid - 1);
        const Vec3d p = s.surface(u, v);
        g << u << ',' << v << ',' << p[0] << ',' << p[1] << ',' << p[2] << '\n';
      }
  }
  return rep;
}

struct SymbolArgs {
  CurveArgs curve{"t1"};
  double at = 0.0;
  int max_order = 8;
};

Report cmd_symbol(const SymbolArgs& a) {
  const TypeSymbol s = finite_type_symbol(load_curve(a.curve), a.at, a.max_order);
  Report rep;
  rep.doc = {{"command", "symbol"}, {"curve", a.curve.curve}, {"x", a.at}, {"m", s.m}, {"n", s.n},
             {"rotating", s.rotating}};
  rep.text = "{1, " + std::to_string(s.m) + ", " + std::to_string(s.n) + "}" + (s.rotating ? " rotating" : "") + "\n";
  rep.csv = "m,n,rotating\n" + std::to_string(s.m) + "," + std::to_string(s.n) + "," + (s.rotating ? "1" : "0") + "\n";
  return rep;
}

// ---------------------------------------------------------------------------

bool wants_json(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string s = argv[i];
    if (s == "--format=json" || (s == "--format" && i + 1 < argc && std::string(argv[i + 1]) == "json")) return true;
  }
  return false;
}

int fail(bool json_mode, int code, const std::string& kind, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  if (json_mode)
    std::cout << json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic lines of plane fields: classification, flows, return maps and checks"};
  app.require_subcommand(1);
  std::string format = "text", output;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    c->add_option("-o,--output", output, "Write the report to a file instead of standard output");
  };

  ClassifyArgs ca;
  ca.field.radius = 0.01;
  auto* c_classify = app.add_subcommand("classify", "Classify points of a tube grid (CSV: x,y,z,e,f,g,K,class)");
  add_field_options(c_classify, ca.field);
  c_classify->add_option("--nx", ca.nx, "Samples along the curve")->check(CLI::PositiveNumber);
  c_classify->add_option("--ny", ca.ny, "Samples in y")->check(CLI::PositiveNumber);
  c_classify->add_option("--nz", ca.nz, "Samples in z")->check(CLI::PositiveNumber);
  c_classify->add_option("--parabolic-tol", ca.tol, "Relative band for eg - f^2 = 0")->check(CLI::PositiveNumber);
  add_common(c_classify);

  PoincareArgs pa;
  auto* c_poincare = app.add_subcommand("poincare", "Return-map derivative along the core curve (CSV: quantity,value)");
  add_field_options(c_poincare, pa.field);
  c_poincare->add_option("--period", pa.period, "Length of the closed line (default: curve period)")
      ->check(CLI::PositiveNumber);
  c_poincare->add_option("--hyperbolic-tol", pa.hyperbolic_tol, "Band around the unit circle")
      ->check(CLI::PositiveNumber);
  c_poincare->add_flag("--fd-check", pa.fd_check, "Compare with a central-difference return map; exit 1 on mismatch");
  c_poincare->add_option("--fd-h", pa.fd_h, "Finite-difference step")->check(CLI::PositiveNumber);
  c_poincare->add_option("--atol", pa.atol, "Integrator absolute tolerance")->check(CLI::PositiveNumber);
  c_poincare->add_option("--rtol", pa.rtol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
  add_common(c_poincare);

  VerifyArgs va;
  auto* c_verify = app.add_subcommand("verify-paper", "Run the reproduction checks 1-9 (CSV: id,tag,status,seconds)");
  c_verify->add_option("--only", va.only, "Checks to run, by number or tag (t1-eigen, t1-integrals, fd, lac, t5, "
                                          "rotating, circle, gauge, properties)");
  c_verify->add_flag("--inject-failure", va.inject_failure, "Test hook: perturb checked quantities");
  c_verify->add_option("--seed", va.seed, "Base property-test seed (default: ASYMPTOTICA_SEED or 0)");
  add_common(c_verify);

  IntegrateArgs ia;
  auto* c_integrate = app.add_subcommand("integrate", "Integrate an asymptotic line (CSV: x,y,z,p,X,Y,Z)");
  add_field_options(c_integrate, ia.field);
  c_integrate->add_option("--surface", ia.surface, "Use the surface equation of 'arnold:m,n' (start is u,v,0)");
  c_integrate->add_option("--start", ia.start, "Start point x,y,z in chart coordinates");
  c_integrate->add_option("--to", ia.x1, "End value of x (default: one period)");
  c_integrate->add_option("--branch", ia.branch, "Initial slope hint selecting the branch");
  c_integrate->add_option("--atol", ia.atol, "Integrator absolute tolerance")->check(CLI::PositiveNumber);
  c_integrate->add_option("--rtol", ia.rtol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
  c_integrate->add_option("--svg", ia.svg, "Also write an SVG polyline of the xy-projection");
  add_common(c_integrate);

  CurvatureArgs ka;
  ka.field.field = "circle-example";
  auto* c_curv = app.add_subcommand("curvature", "Normal curvature k_n(p, dr) of an ambient field");
  add_field_options(c_curv, ka.field, false);
  c_curv->add_option("--point", ka.point, "Point x,y,z");
  c_curv->add_option("--direction", ka.direction, "Direction dr in the plane");
  c_curv->add_flag("--project", ka.project, "Project dr onto the plane first");
  add_common(c_curv);

  IntegrabilityArgs ga;
  ga.field.field = "circle-example";
  auto* c_int = app.add_subcommand("integrability", "Integrability defect <xi, curl xi> (CSV: x,y,z,defect)");
  add_field_options(c_int, ga.field, false);
  c_int->add_option("--point", ga.point, "Point x,y,z");
  c_int->add_option("--grid", ga.grid, "Also scan an n^3 grid over [-w, w]^3")->check(CLI::NonNegativeNumber);
  c_int->add_option("--half-width", ga.half, "Grid half-width w")->check(CLI::PositiveNumber);
  c_int->add_option("--tol", ga.tol, "Integrable when the grid maximum is at most this")->check(CLI::PositiveNumber);
  add_common(c_int);

  StarlikeArgs sa;
  auto* c_star = app.add_subcommand("starlike", "Starlike test of a projected curve or polygon (CSV: kernel x,y)");
  add_curve_options(c_star, sa.curve);
  c_star->add_option("--polygon", sa.polygon, "Polygon 'x1,y1;x2,y2;...' instead of a curve");
  c_star->add_option("--samples", sa.samples, "Samples of the projected curve")->check(CLI::Range(3, 1 << 20));
  add_common(c_star);

  ArnoldArgs aa;
  auto* c_arn = app.add_subcommand("arnold-surface", "Rotating-type surface data on v = 0 (CSV: u,e,f,f_bracket,f_closed_form)");
  c_arn->add_option("--surface", aa.surface, "Surface 'arnold:m,n' with 1 < m < n");
  c_arn->add_option("--samples", aa.samples, "Samples of u")->check(CLI::Range(2, 1 << 20));
  c_arn->add_option("--u-max", aa.u_max, "Sample |u| <= u_max")->check(CLI::PositiveNumber);
  c_arn->add_option("--grid-csv", aa.grid_csv, "Also write a surface sample grid u,v,X,Y,Z");
  c_arn->add_option("--grid", aa.grid, "Grid points per side")->check(CLI::Range(2, 4096));
  add_common(c_arn);

  SymbolArgs ya;
  auto* c_sym = app.add_subcommand("symbol", "Finite-type symbol {1, m, n} of a curve at a point (CSV: m,n,rotating)");
  add_curve_options(c_sym, ya.curve);
  c_sym->add_option("--at", ya.at, "Curve parameter");
  c_sym->add_option("--max-order", ya.max_order, "Highest derivative examined")->check(CLI::Range(3, 24));
  add_common(c_sym);

  const bool json_mode = wants_json(argc, argv);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return kOk;  // --help
    if (json_mode) std::cout << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}, {"exit_code", kUsage}}.dump(2) << "\n";
    return kUsage;
  }

  Report rep;
  try {
    if (c_classify->parsed()) rep = cmd_classify(ca);
    else if (c_poincare->parsed()) rep = cmd_poincare(pa);
    else if (c_verify->parsed()) rep = cmd_verify(va);
    else if (c_integrate->parsed()) rep = cmd_integrate(ia);
    else if (c_curv->parsed()) rep = cmd_curvature(ka);
    else if (c_int->parsed()) rep = cmd_integrability(ga);
    else if (c_star->parsed()) rep = cmd_starlike(sa);
    else if (c_arn->parsed()) rep = cmd_arnold(aa);
    else if (c_sym->parsed()) rep = cmd_symbol(ya);
  } catch (const UsageError& e) {
    return fail(json_mode, kUsage, "usage", e.what());
  } catch (const ParseError& e) {
    return fail(json_mode, kUsage, "parse", std::string("parse error: ") + e.what());
  } catch (const UnboundVariable& e) {
    return fail(json_mode, kUsage, "parse", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(json_mode, kUsage, "usage", e.what());
  } catch (const std::out_of_range& e) {
    return fail(json_mode, kUsage, "usage", e.what());
  } catch (const std::exception& e) {
    return fail(json_mode, kNumerical, "numerical", e.what());
  }

  std::string body;
  if (format == "json") {
    body = rep.doc.dump(2) + "\n";
  } else if (format == "csv") {
    if (!rep.csv) return fail(false, kUsage, "usage", "CSV output is not offered by this command");
    body = *rep.csv;
  } else {
    body = rep.text;
  }
  if (output.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(output);
    if (!f) return fail(json_mode, kUsage, "usage", "cannot write " + output);
    f << body;
  }
  if (rep.code == kNumerical && format != "json") std::cerr << "error: " << rep.doc.value("message", "") << "\n";
  return rep.code;
}
