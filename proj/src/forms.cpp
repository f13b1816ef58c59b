#include "cubeshift/forms.hpp"

#include <cmath>

#include "json.hpp"

namespace cubeshift {

using nlohmann::json;

ShiftedCubeForm ShiftedCubeForm::from_strings(const std::vector<std::string>& specs) {
  ShiftedCubeForm f;
  for (auto& s : specs) f.shifts.push_back(RealSpec::parse(s));
  if (f.shifts.empty()) throw SpecError("form needs at least one shift");
  return f;
}

ShiftedCubeForm ShiftedCubeForm::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("form json does not parse");
  if (!j.contains("shifts") || !j["shifts"].is_array())
    throw SpecError("form json needs a \"shifts\" array");
  std::vector<std::string> specs;
  for (auto& e : j["shifts"]) {
    if (!e.is_string()) throw SpecError("form json shifts must be spec strings");
    specs.push_back(e.get<std::string>());
  }
  return from_strings(specs);
}

std::string ShiftedCubeForm::to_json() const {
  json j;
  j["shifts"] = json::array();
  for (auto& m : shifts) j["shifts"].push_back(m.to_string());
  return j.dump();
}

FieldReal CubicPolynomial::eval(const FieldReal& x) const {
  FieldReal v = b3.exact();
  v = v * x + b2.exact();
  v = v * x + b1.exact();
  v = v * x + b0.exact();
  return v;
}

FieldReal CubicPolynomial::eval_int(int64_t x) const {
  return eval(FieldReal(Rat((long)x)));
}

void CubicPolynomial::validate() const {
  if (b3.exact().is_zero()) throw SpecError("cubic needs a nonzero leading coefficient");
}

void CubicPolynomial::validate_for_eval() const {
  validate();
  for (auto* c : {&b3, &b2, &b1, &b0}) c->validate_for_eval();
}

CubicSystem CubicSystem::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("system json does not parse");
  if (!j.contains("polys") || !j["polys"].is_array())
    throw SpecError("system json needs a \"polys\" array");
  CubicSystem sys;
  try {
    for (auto& e : j["polys"]) {
      CubicPolynomial p;
      p.b3 = RealSpec::parse(e.at("b3").get<std::string>());
      p.b2 = RealSpec::parse(e.value("b2", std::string("0")));
      p.b1 = RealSpec::parse(e.value("b1", std::string("0")));
      p.b0 = RealSpec::parse(e.value("b0", std::string("0")));
      p.validate();
      sys.polys.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("bad system json: ") + e.what());
  }
  if (sys.polys.empty()) throw SpecError("system needs at least one cubic");
  return sys;
}

std::string CubicSystem::to_json() const {
  json j;
  j["polys"] = json::array();
  for (auto& p : polys)
    j["polys"].push_back({{"b3", p.b3.to_string()},
                          {"b2", p.b2.to_string()},
                          {"b1", p.b1.to_string()},
                          {"b0", p.b0.to_string()}});
  return j.dump();
}

Window::Window(RealSpec t, RealSpec e) : tau(std::move(t)), eta(std::move(e)) {
  tau_exact = tau.exact();
  eta_exact = eta.exact();
  if (eta_exact.sign() <= 0) throw SpecError("window half-width eta must be positive");
}

uint64_t SearchBox::cardinality() const {
  uint64_t n = 1;
  for (auto& [lo, hi] : ranges) {
    if (hi < lo) throw SpecError("search box range with hi < lo");
    uint64_t len = (uint64_t)(hi - lo);
    if (len != 0 && n > UINT64_MAX / len) throw BudgetError("search box cardinality overflow");
    n *= len;
  }
  return n;
}

SearchBox SearchBox::parse(const std::string& text, int s) {
  SearchBox b;
  std::string cur;
  std::vector<std::string> parts;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur.push_back(c);
  }
  parts.push_back(cur);
  for (auto& p : parts) {
    auto colon = p.find(':');
    if (colon == std::string::npos) throw SpecError("box range needs lo:hi, got " + p);
    b.ranges.emplace_back(std::stoll(p.substr(0, colon)), std::stoll(p.substr(colon + 1)));
  }
  if ((int)b.ranges.size() != s)
    throw SpecError("box has " + std::to_string(b.ranges.size()) + " ranges for " +
                    std::to_string(s) + " variables");
  return b;
}

FieldReal eval_form(const ShiftedCubeForm& f, const std::vector<int64_t>& x) {
  if ((int)x.size() != f.s()) throw SpecError("dimension mismatch in eval_form");
  FieldReal acc;
  for (int i = 0; i < f.s(); ++i) {
    f.shifts[i].validate_for_eval();
    FieldReal t = FieldReal(Rat((long)x[i])) - f.shifts[i].exact();
    acc += t.cube();
  }
  return acc;
}

FieldReal eval_system(const CubicSystem& h, const std::vector<int64_t>& x) {
  if ((int)x.size() != h.s()) throw SpecError("dimension mismatch in eval_system");
  FieldReal acc;
  for (int i = 0; i < h.s(); ++i) {
    h.polys[i].validate_for_eval();
    acc += h.polys[i].eval_int(x[i]);
  }
  return acc;
}

bool in_window(const FieldReal& value, const Window& w) {
  // strict |value - tau| < eta via two exact sign tests
  return (value - w.lo()).sign() > 0 && (w.hi() - value).sign() > 0;
}

Ternary in_window(const Interval& value, const Window& w) {
  Interval lo = w.lo().enclose(value.prec());
  Interval hi = w.hi().enclose(value.prec());
  int a = value.sub(lo).sign();    // want > 0
  int b = hi.sub(value).sign();    // want > 0
  if (a == Interval::kAmbiguous || b == Interval::kAmbiguous) return Ternary::Undecidable;
  return (a > 0 && b > 0) ? Ternary::True : Ternary::False;
}

bool in_window_checked(const Interval& value, const Window& w) {
  Ternary t = in_window(value, w);
  if (t == Ternary::Undecidable)
    throw PrecisionError("window membership undecidable at precision " +
                         std::to_string(value.prec()));
  return t == Ternary::True;
}

SearchBox default_box(const ShiftedCubeForm& f, const Window& w) {
  SearchBox box;
  FieldReal bound = w.hi();
  double bd = bound.to_double();
  double cbrt_b = bd > 0 ? std::cbrt(bd) : 0.0;
  for (auto& mu_spec : f.shifts) {
    FieldReal mu = mu_spec.exact();
    int64_t lo = to_i64(mu.floor());
    // hi = largest x with (x - mu)^3 <= tau + eta; exact comparisons make the
    // box never truncate the window regardless of double rounding in cbrt.
    int64_t hi = lo + (int64_t)std::ceil(cbrt_b) + 3;
    auto val = [&](int64_t x) { return (FieldReal(Rat((long)x)) - mu).cube(); };
    while (hi > lo && val(hi).cmp(bound) > 0) --hi;
    while (val(hi + 1).cmp(bound) <= 0) ++hi;
    box.ranges.emplace_back(lo, hi);
  }
  return box;
}

}  // namespace cubeshift
