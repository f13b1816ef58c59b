// cubeshift: command line front end. Thin dispatch over the library; every
// number printed is the library's value verbatim (doubles round-trip via
// %.17g, exact values carry a decimal string with its precision).
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubeshift/circle.hpp"
#include "cubeshift/density.hpp"
#include "cubeshift/forms.hpp"
#include "cubeshift/reduction.hpp"
#include "cubeshift/solver.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cubeshift;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Inline shift list, comma separated; a "surd:" head owns the next three
// commas, so "surd:0,1,2,2,1/2" is the two shifts (sqrt 2)/2 and 1/2.
std::vector<std::string> split_specs(const std::string& text) {
  auto tokens = split(text, ',');
  std::vector<std::string> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].rfind("surd:", 0) == 0) {
      if (i + 3 >= tokens.size()) throw SpecError("surd needs four fields: " + tokens[i]);
      out.push_back(tokens[i] + ',' + tokens[i + 1] + ',' + tokens[i + 2] + ',' +
                    tokens[i + 3]);
      i += 3;
    } else {
      out.push_back(tokens[i]);
    }
  }
  return out;
}

// --form FILE wins; otherwise --shifts is an inline comma list of specs.
ShiftedCubeForm load_form(const std::string& form_path, const std::string& shifts) {
  if (!form_path.empty() && !shifts.empty())
    throw SpecError("give --form or --shifts, not both");
  if (!form_path.empty()) return ShiftedCubeForm::from_json(slurp(form_path));
  if (!shifts.empty()) return ShiftedCubeForm::from_strings(split_specs(shifts));
  throw SpecError("need --form FILE or --shifts s1,s2,...");
}

// reduce takes its shifts as a JSON file per the documented interface, but an
// inline comma list is accepted too when the argument is not a readable file.
ShiftedCubeForm load_form_file_or_inline(const std::string& arg) {
  if (arg.empty()) throw SpecError("need --shifts FILE or --shifts s1,s2,...");
  if (std::filesystem::exists(arg)) return ShiftedCubeForm::from_json(slurp(arg));
  return ShiftedCubeForm::from_strings(split_specs(arg));
}

// Command-line convenience: a bare decimal literal ("0.5", "3e-2") stands for
// the exact decimal spec "dec:...". Form files keep the strict grammar.
RealSpec parse_real(const std::string& text) {
  if (text.rfind("dec:", 0) != 0 && text.rfind("surd:", 0) != 0) {
    bool dot = text.find('.') != std::string::npos;
    bool exp = text.find_first_of("eE") != std::string::npos &&
               text.find('/') == std::string::npos;
    if (dot || exp) return RealSpec::parse("dec:" + text);
  }
  return RealSpec::parse(text);
}

Rat parse_rat(const std::string& text, const char* what) {
  RealSpec r = parse_real(text);
  FieldReal v = r.exact();
  if (!v.is_rational())
    throw SpecError(std::string(what) + " must be rational, got " + text);
  return v.as_rational();
}

double parse_double(const std::string& text) { return parse_real(text).approx(); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Exact value as JSON: double approximation plus a correctly rounded decimal
// with its digit count, so nothing downstream has to re-round.
json exact_num(const FieldReal& v, int digits = 24) {
  return json{{"approx", v.to_double()}, {"decimal", v.decimal(digits)}, {"precision", digits}};
}

json box_json(const SearchBox& box) {
  json rows = json::array();
  for (auto& [lo, hi] : box.ranges) rows.push_back(json::array({lo, hi}));
  return rows;
}

json solutions_json(const std::vector<SolutionRecord>& sols) {
  json rows = json::array();
  for (auto& s : sols)
    rows.push_back(json{{"x", s.x}, {"value", exact_num(s.value)},
                        {"deviation", exact_num(s.deviation)}});
  return rows;
}

void emit(const json& j) { std::printf("%s\n", j.dump(2).c_str()); }

// ---------------------------------------------------------------------------
// solve / count

struct SolveOpts {
  std::string form, shifts, system, tau, eta, box;
  std::string method = "mitm";
};

void run_solve(const SolveOpts& o) {
  Window w(parse_real(o.tau), parse_real(o.eta));
  json out{{"op", "solve"}, {"method", o.method}, {"tau", o.tau}, {"eta", o.eta}};
  if (!o.system.empty()) {
    if (!o.form.empty() || !o.shifts.empty())
      throw SpecError("--system excludes --form/--shifts");
    CubicSystem h = CubicSystem::from_json(slurp(o.system));
    if (o.box.empty()) throw SpecError("--system needs an explicit --box");
    SearchBox box = SearchBox::parse(o.box, h.s());
    out["s"] = h.s();
    out["box"] = box_json(box);
    std::vector<SolutionRecord> sols;
    if (o.method == "brute") {
      sols = brute_force_solve(h, w, box);
    } else {
      EnumResult r = mitm_solve(h, w, box, true);
      sols = std::move(r.solutions);
    }
    out["count"] = sols.size();
    out["solutions"] = solutions_json(sols);
  } else {
    ShiftedCubeForm f = load_form(o.form, o.shifts);
    SearchBox box = o.box.empty() ? default_box(f, w) : SearchBox::parse(o.box, f.s());
    out["s"] = f.s();
    out["box"] = box_json(box);
    std::vector<SolutionRecord> sols;
    if (o.method == "brute") {
      sols = brute_force_solve(f, w, box);
    } else {
      EnumResult r = mitm_solve(f, w, box, true);
      sols = std::move(r.solutions);
    }
    out["count"] = sols.size();
    out["solutions"] = solutions_json(sols);
  }
  emit(out);
}

struct CountOpts {
  std::string form, shifts, tau, eta, box, bin_width;
  std::string method = "mitm";
};

void run_count(const CountOpts& o) {
  ShiftedCubeForm f = load_form(o.form, o.shifts);
  Window w(parse_real(o.tau), parse_real(o.eta));
  json out{{"op", "count"}, {"method", o.method}, {"s", f.s()}, {"tau", o.tau}, {"eta", o.eta}};
  if (o.method == "histogram") {
    if (o.bin_width.empty()) throw SpecError("histogram method needs --bin-width");
    if (!o.box.empty()) throw SpecError("histogram counts over the derived box; drop --box");
    CountBracket br = histogram_count(f, w, parse_rat(o.bin_width, "--bin-width"));
    out["bracket"] = json{{"lower", br.lower},
                          {"upper", br.upper},
                          {"bin_width", br.bin_width.get_str()}};
  } else if (o.box.empty()) {
    out["count"] = count_window(f, w);
  } else {
    SearchBox box = SearchBox::parse(o.box, f.s());
    out["box"] = box_json(box);
    out["count"] = mitm_solve(f, w, box, false).count;
  }
  emit(out);
}

// ---------------------------------------------------------------------------
// moments

struct MomentOpts {
  std::string lemma, mu1, mu2, h1, h2, eta;
  double p = 0, c = 2;
};

CubicPolynomial parse_cubic(const std::string& text, const char* what) {
  auto parts = split_specs(text);  // surd-aware, same as --shifts
  if (parts.size() != 4) throw SpecError(std::string(what) + " wants b3,b2,b1,b0");
  CubicPolynomial h{parse_real(parts[0]), parse_real(parts[1]),
                    parse_real(parts[2]), parse_real(parts[3])};
  h.validate();
  return h;
}

void run_moments(const MomentOpts& o) {
  Rat eta = parse_rat(o.eta, "--eta");
  MomentCount mc;
  if (o.lemma == "2.2") {
    if (o.mu1.empty() || o.mu2.empty()) throw SpecError("--lemma 2.2 needs --mu1 and --mu2");
    mc = count_S4_shifted(parse_real(o.mu1), parse_real(o.mu2), o.p, eta);
  } else if (o.lemma == "2.3") {
    if (o.h1.empty() || o.h2.empty()) throw SpecError("--lemma 2.3 needs --h1 and --h2");
    mc = count_S4_general(parse_cubic(o.h1, "--h1"), parse_cubic(o.h2, "--h2"), o.c, o.p, eta);
  } else {
    throw SpecError("--lemma must be 2.2 or 2.3");
  }
  json out{{"op", "moments"},
           {"lemma", o.lemma},
           {"P", o.p},
           {"eta", eta.get_str()},
           {"count", mc.count},
           {"diagonal", mc.diagonal},
           {"ranges",
            json{{"primary", json::array({mc.ranges.primary.first, mc.ranges.primary.second})},
                 {"secondary",
                  json::array({mc.ranges.secondary.first, mc.ranges.secondary.second})},
                 {"secondary_exponent",
                  std::to_string(mc.ranges.exp_num) + "/" + std::to_string(mc.ranges.exp_den)}}}};
  emit(out);
}

// ---------------------------------------------------------------------------
// density

struct DensityOpts {
  std::string form, shifts, eta, range;
  int profile = 0;
};

void run_density(const DensityOpts& o) {
  ShiftedCubeForm f = load_form(o.form, o.shifts);
  RealSpec eta = parse_real(o.eta);
  auto parts = split(o.range, ':');
  if (parts.size() != 2) throw SpecError("--range wants A:B");
  Rat a = parse_rat(parts[0], "--range A");
  Rat b = parse_rat(parts[1], "--range B");
  if (o.profile > 0) {
    if (a != 0) throw SpecError("--profile runs on [0, N]; use --range 0:N");
    DensityProfile dp = density_profile(f, b, eta, o.profile);
    // CSV uses the side that cannot overstate the unrepresented set; the JSON
    // summary carries both certified sides.
    std::printf("prefix,represented_measure,unrepresented_measure,fraction\n");
    for (size_t k = 0; k < dp.prefixes.size(); ++k)
      std::printf("%s,%s,%s,%s\n", fmt(dp.prefixes[k]).c_str(), fmt(dp.rep_hi[k]).c_str(),
                  fmt(dp.prefixes[k] - dp.rep_hi[k]).c_str(),
                  fmt(dp.unrep_fraction_lo[k]).c_str());
    json out{{"op", "density"},      {"mode", "profile"},
             {"eta", o.eta},         {"n", b.get_str()},
             {"prefixes", dp.prefixes}, {"represented_lo", dp.rep_lo},
             {"represented_hi", dp.rep_hi}, {"unrep_fraction_lo", dp.unrep_fraction_lo},
             {"unrep_fraction_hi", dp.unrep_fraction_hi}, {"truncated", dp.truncated},
             {"n_used", dp.n_used}};
    emit(out);
    return;
  }
  IntervalSet set = represented_set(f, a, b, eta);
  MeasureBracket un = unrepresented_measure(f, a, b, eta);
  json ivals = json::array();
  for (auto& iv : set.intervals) ivals.push_back(json::array({iv.lo, iv.hi}));
  json out{{"op", "density"},
           {"mode", "range"},
           {"eta", o.eta},
           {"range", json::array({a.get_str(), b.get_str()})},
           {"intervals", ivals},
           {"represented_measure", json{{"lo", set.measure_lo}, {"hi", set.measure_hi}}},
           {"unrepresented_measure", json{{"lo", un.lo}, {"hi", un.hi}}},
           {"points", set.points},
           {"exact_rechecks", set.exact_rechecks}};
  emit(out);
}

// ---------------------------------------------------------------------------
// kernels

struct KernelOpts {
  std::string eta, delta = "0", kind = "K", t, grid;
  bool check_fourier = false;
};

// Closed transforms: every kernel is a product/difference of Fejer factors,
// so its transform is a triangle, a trapezoid, or a scaled triangle.
double expected_transform(KernelKind kind, const KernelParams& p, double t) {
  double a = std::fabs(t);
  auto tri = [](double x, double width) { return x >= width ? 0.0 : 1.0 - x / width; };
  switch (kind) {
    case KernelKind::K: return tri(a, p.eta);
    case KernelKind::Kdouble: return 0.5 * tri(a, 2 * p.eta);
    case KernelKind::K1: return tri(a, p.delta) / p.delta;
    case KernelKind::K2plus: return (2 * p.eta + p.delta) * tri(a, 2 * p.eta + p.delta);
    case KernelKind::K2minus: return (2 * p.eta - p.delta) * tri(a, 2 * p.eta - p.delta);
    case KernelKind::Kplus:
      if (a <= p.eta) return 1;
      return a >= p.eta + p.delta ? 0.0 : (p.eta + p.delta - a) / p.delta;
    case KernelKind::Kminus:
      if (a <= p.eta - p.delta) return 1;
      return a >= p.eta ? 0.0 : (p.eta - a) / p.delta;
  }
  throw SpecError("unreachable kernel kind");
}

void run_kernels(const KernelOpts& o) {
  KernelParams p;
  p.eta = parse_double(o.eta);
  p.delta = parse_double(o.delta);
  KernelKind kind = parse_kernel_kind(o.kind);
  CosSum ker = make_kernel(kind, p);
  if (o.check_fourier) {
    double lo = -3 * p.eta, hi = 3 * p.eta;
    int n = 25;
    if (!o.grid.empty()) {
      auto parts = split(o.grid, ':');
      if (parts.size() != 3) throw SpecError("--grid wants lo:hi:n");
      lo = parse_double(parts[0]);
      hi = parse_double(parts[1]);
      n = std::stoi(parts[2]);
      if (n < 2) throw SpecError("--grid needs n >= 2");
    }
    std::printf("t,computed,expected,abs_diff\n");
    for (int i = 0; i < n; ++i) {
      double t = lo + (hi - lo) * i / (n - 1);
      FourierValue fv = kernel_fourier(t, kind, p);
      double want = expected_transform(kind, p, t);
      std::printf("%s,%s,%s,%s\n", fmt(t).c_str(), fmt(fv.value).c_str(), fmt(want).c_str(),
                  fmt(std::fabs(fv.value - want)).c_str());
    }
    return;
  }
  if (o.t.empty()) throw SpecError("need --t T or --check-fourier");
  double t = parse_double(o.t);
  FourierValue fv = kernel_fourier(t, kind, p);
  json out{{"op", "kernels"},
           {"kind", kernel_kind_name(kind)},
           {"eta", p.eta},
           {"delta", p.delta},
           {"t", t},
           {"kernel_at_t", ker.at(t)},
           {"kernel_at_zero", ker.at_zero()},
           {"decay_constant", ker.decay_constant()},
           {"fourier", json{{"value", fv.value},
                            {"err", fv.err},
                            {"expected", expected_transform(kind, p, t)}}}};
  emit(out);
}

// ---------------------------------------------------------------------------
// weyl / arcs

struct WeylOpts {
  std::string alpha, mu = "0", complete;
  double x = 0;
  int j = 1;
};

void run_weyl(const WeylOpts& o) {
  std::printf("input,value_re,value_im,abs,error_bound\n");
  if (!o.complete.empty()) {
    auto parts = split(o.complete, ',');
    if (parts.size() != 4) throw SpecError("--complete wants q,v1,v2,v3");
    int64_t q = std::stoll(parts[0]);
    ExpSum s = complete_exp_sum(q, std::stoll(parts[1]), std::stoll(parts[2]),
                                std::stoll(parts[3]));
    // terms land on a 2^-60 grid; the bound covers per-term rounding.
    double err = (double)s.terms * std::ldexp(1.0, -60);
    std::printf("S(%s),%s,%s,%s,%s\n", o.complete.c_str(), fmt(s.value.real()).c_str(),
                fmt(s.value.imag()).c_str(), fmt(std::abs(s.value)).c_str(), fmt(err).c_str());
    return;
  }
  if (o.alpha.empty()) throw SpecError("need --alpha (or --complete)");
  ExpSum s = weyl_sum(o.j, parse_real(o.alpha), parse_real(o.mu), o.x);
  double err = (double)s.terms * std::ldexp(1.0, -60);
  std::printf("f%d(%s;%s;%s),%s,%s,%s,%s\n", o.j, o.alpha.c_str(), o.mu.c_str(),
              fmt(o.x).c_str(), fmt(s.value.real()).c_str(), fmt(s.value.imag()).c_str(),
              fmt(std::abs(s.value)).c_str(), fmt(err).c_str());
}

struct ArcOpts {
  std::string alpha, p = "2", xi = "1/2", t = "1", dirichlet;
  int64_t classical = 0;
};

void run_arcs(const ArcOpts& o) {
  FieldReal alpha = parse_real(o.alpha).exact();
  std::printf("input,value,error_bound\n");
  ArcParams params{parse_rat(o.p, "--p"), parse_rat(o.xi, "--xi"), parse_rat(o.t, "--t")};
  ArcClass cls = classify_arc(alpha, params);
  std::printf("%s,%s,0\n", o.alpha.c_str(), arc_class_name(cls).c_str());
  if (!o.dirichlet.empty()) {
    RationalApprox ra = dirichlet_approx(alpha, parse_rat(o.dirichlet, "--dirichlet"));
    std::printf("%s,%s/%s,%s\n", o.alpha.c_str(), ra.a.get_str().c_str(),
                ra.q.get_str().c_str(), fmt(ra.err).c_str());
  }
  if (o.classical > 0) {
    ClassicalMembership m = classify_classical(alpha, o.classical);
    if (m.in_major)
      std::printf("%s,classical-major %s/%s,%s\n", o.alpha.c_str(), m.a.get_str().c_str(),
                  m.q.get_str().c_str(), fmt(m.err).c_str());
    else
      std::printf("%s,classical-minor,0\n", o.alpha.c_str());
  }
}

// ---------------------------------------------------------------------------
// reduce

struct ReduceOpts {
  std::string shifts, target, eta;
  int a = 0;
  int64_t radius = 0;
  bool search = false;
};

json quadratic_json(const QuadraticPolynomial& q) {
  json mat = json::array();
  for (auto& row : q.a) {
    json r = json::array();
    for (auto& v : row) r.push_back(exact_num(v));
    mat.push_back(r);
  }
  json b = json::array();
  for (auto& v : q.b) b.push_back(exact_num(v));
  return json{{"A", mat}, {"b", b}, {"c0", exact_num(q.c0)}};
}

void run_reduce(const ReduceOpts& o) {
  ShiftedCubeForm f = load_form_file_or_inline(o.shifts);
  SixCubeReduction red;
  std::string verdict;
  if (o.a != 0) {
    red = reduce_six_cubes(f, o.a);
    verdict = verdict_name(check_irrationality_poly(red.quadratic));
  } else {
    ReductionChoice choice = choose_reduction(f);
    red = choice.certificates.front();
    verdict = verdict_name(choice.verdict);
  }
  json cvec = json::array();
  for (auto& v : red.c) cvec.push_back(exact_num(v));
  json out{{"op", "reduce"},
           {"a", red.a},
           {"c", cvec},
           {"f_a", exact_num(red.f_a)},
           {"quadratic", quadratic_json(red.quadratic)},
           {"verdict", verdict}};
  if (o.search) {
    if (o.target.empty() || o.eta.empty() || o.radius <= 0)
      throw SpecError("--search needs --target, --eta and --radius");
    DenseSearchResult r = quadratic_dense_search(red.quadratic, parse_real(o.target),
                                                 parse_real(o.eta), o.radius);
    std::array<int64_t, 3> y{r.witness[0], r.witness[1], r.witness[2]};
    out["witness"] = json{{"y", r.witness},
                          {"x", substituted_point(red.a, y)},
                          {"value", exact_num(r.value)},
                          {"deviation", exact_num(r.deviation)},
                          {"within_eta", r.achieved},
                          {"visited", r.visited}};
  }
  emit(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shifted-cube solver, density, circle and reduction pipelines"};
  app.require_subcommand(1);
  int threads = 0;
  int mem_mb = 0;
  app.add_option("--threads", threads, "worker threads (CUBESHIFT_THREADS)");
  app.add_option("--mem-mb", mem_mb, "memory budget in MiB (CUBESHIFT_MEM_MB)");
  // callbacks fire at the end of parse, after the globals above are set
  auto env = [&] {
    if (threads > 0) setenv("CUBESHIFT_THREADS", std::to_string(threads).c_str(), 1);
    if (mem_mb > 0) setenv("CUBESHIFT_MEM_MB", std::to_string(mem_mb).c_str(), 1);
  };

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "enumerate x with |F(x) - tau| < eta");
  solve->add_option("--form", so.form, "form JSON file");
  solve->add_option("--shifts", so.shifts, "inline shifts s1,s2,...");
  solve->add_option("--system", so.system, "cubic system JSON file");
  solve->add_option("--tau", so.tau, "window center")->required();
  solve->add_option("--eta", so.eta, "window half-width")->required();
  solve->add_option("--box", so.box, "half-open box lo:hi,... (default derived)");
  solve->add_option("--method", so.method, "brute|mitm")
      ->check(CLI::IsMember({"brute", "mitm"}));
  solve->callback([&] { env(); run_solve(so); });

  CountOpts co;
  auto* count = app.add_subcommand("count", "count solutions, exactly or bracketed");
  count->add_option("--form", co.form, "form JSON file");
  count->add_option("--shifts", co.shifts, "inline shifts s1,s2,...");
  count->add_option("--tau", co.tau, "window center")->required();
  count->add_option("--eta", co.eta, "window half-width")->required();
  count->add_option("--box", co.box, "half-open box lo:hi,... (default derived)");
  count->add_option("--method", co.method, "mitm|histogram")
      ->check(CLI::IsMember({"mitm", "histogram"}));
  count->add_option("--bin-width", co.bin_width, "histogram bin width (rational)");
  count->callback([&] { env(); run_count(co); });

  MomentOpts mo;
  auto* moments = app.add_subcommand("moments", "fourth-moment pair counts");
  moments->add_option("--lemma", mo.lemma, "2.2 (shifted pair) | 2.3 (general pair)")
      ->required();
  moments->add_option("--P", mo.p, "range scale P")->required();
  moments->add_option("--eta", mo.eta, "window half-width (rational)")->required();
  moments->add_option("--mu1", mo.mu1, "first shift (lemma 2.2)");
  moments->add_option("--mu2", mo.mu2, "second shift (lemma 2.2)");
  moments->add_option("--h1", mo.h1, "first cubic b3,b2,b1,b0 (lemma 2.3)");
  moments->add_option("--h2", mo.h2, "second cubic b3,b2,b1,b0 (lemma 2.3)");
  moments->add_option("--c", mo.c, "primary range (P, cP] (lemma 2.3)");
  moments->callback([&] { env(); run_moments(mo); });

  DensityOpts dn;
  auto* density = app.add_subcommand("density", "represented set and its measure");
  density->add_option("--form", dn.form, "form JSON file");
  density->add_option("--shifts", dn.shifts, "inline shifts s1,s2,...");
  density->add_option("--eta", dn.eta, "window half-width")->required();
  density->add_option("--range", dn.range, "target range A:B")->required();
  density->add_option("--profile", dn.profile, "geometric prefixes (CSV + summary)");
  density->callback([&] { env(); run_density(dn); });

  KernelOpts ko;
  auto* kernels = app.add_subcommand("kernels", "window kernels and their transforms");
  kernels->add_option("--eta", ko.eta, "window half-width")->required();
  kernels->add_option("--delta", ko.delta, "majorant/minorant slack");
  kernels->add_option("--kind", ko.kind, "K|Kplus|Kminus|K1|K2plus|K2minus|Kdouble");
  kernels->add_option("--t", ko.t, "evaluate kernel and transform at t");
  kernels->add_flag("--check-fourier", ko.check_fourier, "CSV transform check on a grid");
  kernels->add_option("--grid", ko.grid, "lo:hi:n (default -3eta:3eta:25)");
  kernels->callback([&] { env(); run_kernels(ko); });

  WeylOpts wo;
  auto* weyl = app.add_subcommand("weyl", "cubic exponential sums");
  weyl->add_option("--alpha", wo.alpha, "frequency (exact spec)");
  weyl->add_option("--mu", wo.mu, "shift");
  weyl->add_option("--X", wo.x, "range scale: (j-1)X < x <= jX");
  weyl->add_option("--j", wo.j, "range index j >= 1");
  weyl->add_option("--complete", wo.complete, "complete sum q,v1,v2,v3");
  weyl->callback([&] { env(); run_weyl(wo); });

  ArcOpts ao;
  auto* arcs = app.add_subcommand("arcs", "arc classification and rational approximation");
  arcs->add_option("--alpha", ao.alpha, "point to classify (exact spec)")->required();
  arcs->add_option("--p", ao.p, "scale P > 1");
  arcs->add_option("--xi", ao.xi, "major-arc exponent 0 < xi < 1");
  arcs->add_option("--t", ao.t, "minor/trivial boundary T >= 1");
  arcs->add_option("--dirichlet", ao.dirichlet, "also approximate with q <= Q");
  arcs->add_option("--classical", ao.classical, "also test classical membership at P");
  arcs->callback([&] { env(); run_arcs(ao); });

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "six-cube to ternary quadratic reduction");
  reduce->add_option("--shifts", ro.shifts, "shift JSON file or inline s1,...,s6")
      ->required();
  reduce->add_option("--a", ro.a, "substitution parameter (default: certified choice)")
      ->check(CLI::IsMember({3, 4}));
  reduce->add_flag("--search", ro.search, "dense search on the reduced quadratic");
  reduce->add_option("--target", ro.target, "search target value");
  reduce->add_option("--eta", ro.eta, "search window half-width");
  reduce->add_option("--radius", ro.radius, "search max-norm radius");
  reduce->callback([&] { env(); run_reduce(ro); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const PrecisionError& e) {
    std::fprintf(stderr, "precision: %s\n", e.what());
    return 2;
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "budget: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
