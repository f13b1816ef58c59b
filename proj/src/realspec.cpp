#include "cubeshift/realspec.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace cubeshift {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit((unsigned char)c)) return false;
  return true;
}

bool parse_int(const std::string& s, Int& out) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  if (!all_digits(t)) return false;
  out = Int(t, 10);  // explicit base: GMP would read a leading 0 as octal
  if (neg) out = -out;
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else
      cur.push_back(c);
  }
  out.push_back(cur);
  return out;
}

}  // namespace

RealSpec RealSpec::parse(const std::string& s) {
  if (s.rfind("surd:", 0) == 0) {
    auto parts = split(s.substr(5), ',');
    if (parts.size() != 4) throw SpecError("surd needs four fields: " + s);
    Surd sd;
    Int d;
    if (!parse_int(parts[0], sd.p) || !parse_int(parts[1], sd.q) ||
        !parse_int(parts[2], d) || !parse_int(parts[3], sd.r))
      throw SpecError("malformed surd: " + s);
    if (d <= 1 || !d.fits_ulong_p()) throw SpecError("surd radicand out of range: " + s);
    sd.d = d.get_ui();
    if (squarefree_split(sd.d).second == 1)
      throw SpecError("surd radicand is a perfect square: " + s);
    if (sd.r <= 0) throw SpecError("surd denominator must be positive: " + s);
    return RealSpec(sd);
  }
  if (s.rfind("dec:", 0) == 0) {
    std::string body = s.substr(4);
    Decimal dec;
    dec.declared_irrational = false;
    dec.exponent = 0;
    if (body.size() >= 4 && body.substr(body.size() - 4) == "!irr") {
      dec.declared_irrational = true;
      body = body.substr(0, body.size() - 4);
    }
    std::string mant = body;
    auto epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
      mant = body.substr(0, epos);
      Int e;
      if (!parse_int(body.substr(epos + 1), e) || !e.fits_slong_p())
        throw SpecError("malformed decimal exponent: " + s);
      dec.exponent = e.get_si();
    }
    std::string t = mant;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    auto dot = t.find('.');
    std::string ip = (dot == std::string::npos) ? t : t.substr(0, dot);
    std::string fp = (dot == std::string::npos) ? "" : t.substr(dot + 1);
    if (t.find('.', dot + 1) != std::string::npos || (ip.empty() && fp.empty()) ||
        (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw SpecError("malformed decimal: " + s);
    Int digits((ip + fp).empty() ? std::string("0") : (ip + fp), 10);
    long shift = dec.exponent - (long)fp.size();
    if (shift > 100000 || shift < -100000) throw SpecError("decimal exponent out of range: " + s);
    Rat v(digits);
    if (shift > 0)
      for (long i = 0; i < shift; ++i) v *= 10;
    else
      for (long i = 0; i < -shift; ++i) v /= 10;
    dec.value = neg ? Rat(-v) : v;
    dec.value.canonicalize();
    dec.mantissa = mant;
    return RealSpec(dec);
  }
  // rational: "n" or "p/q"
  auto parts = split(s, '/');
  if (parts.size() > 2) throw SpecError("malformed rational: " + s);
  Int num, den(1);
  if (!parse_int(parts[0], num)) throw SpecError("malformed rational: " + s);
  if (parts.size() == 2 && (!parse_int(parts[1], den) || den <= 0))
    throw SpecError("malformed rational denominator: " + s);
  Rat q(num, den);
  q.canonicalize();
  return RealSpec(Rational{q});
}

std::string RealSpec::to_string() const {
  if (auto* r = std::get_if<Rational>(&v_)) return r->value.get_str();
  if (auto* s = std::get_if<Surd>(&v_)) {
    std::ostringstream os;
    os << "surd:" << s->p << "," << s->q << "," << s->d << "," << s->r;
    return os.str();
  }
  auto& d = std::get<Decimal>(v_);
  std::ostringstream os;
  os << "dec:" << d.mantissa;
  if (d.exponent) os << "e" << d.exponent;
  if (d.declared_irrational) os << "!irr";
  return os.str();
}

FieldReal RealSpec::exact() const {
  if (auto* r = std::get_if<Rational>(&v_)) return FieldReal(r->value);
  if (auto* s = std::get_if<Surd>(&v_)) {
    Rat pr(s->p), qr(s->q), rr(s->r);
    return FieldReal(pr / rr) + FieldReal::surd(qr / rr, s->d);
  }
  return FieldReal(std::get<Decimal>(v_).value);
}

bool RealSpec::declared_irrational() const {
  if (auto* d = std::get_if<Decimal>(&v_)) return d->declared_irrational;
  if (auto* s = std::get_if<Surd>(&v_)) return s->q != 0;  // genuinely irrational
  return false;
}

int RealSpec::significant_digits() const {
  auto* d = std::get_if<Decimal>(&v_);
  if (!d) return 0;
  int count = 0;
  bool seen = false;
  for (char c : d->mantissa) {
    if (!std::isdigit((unsigned char)c)) continue;
    if (c != '0') seen = true;
    if (seen) ++count;
  }
  return count;
}

void RealSpec::validate_for_eval() const {
  if (is_decimal() && significant_digits() < 30)
    throw SpecError("decimal parameter needs >= 30 significant digits for form "
                    "evaluation, got " +
                    std::to_string(significant_digits()));
}

}  // namespace cubeshift
