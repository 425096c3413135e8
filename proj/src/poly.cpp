#include "rjm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rjm {

namespace {

constexpr std::string_view family_prefix(Family f) {
  switch (f) {
    case Family::A: return "a";
    case Family::B: return "b";
    case Family::M: return "m";
    case Family::Alpha: return "alpha";
    case Family::Omega: return "omega";
  }
  return "?";
}

// Simple cursor over the text form.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string_view take_while(auto pred) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw PolyError("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                    std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw PolyError("empty rational literal");
  std::size_t start = s.front() == '-' ? 1 : 0;
  bool seen_slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash && i > start && i + 1 < s.size()) {
      seen_slash = true;
    } else if (!is_digit(s[i])) {
      throw PolyError("invalid rational literal '" + std::string(text) + "'");
    }
  }
  if (start == s.size()) throw PolyError("invalid rational literal '" + std::string(text) + "'");
  Rational q;
  if (q.set_str(s, 10) != 0) throw PolyError("invalid rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw PolyError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string SymbolId::name() const {
  return std::string(family_prefix(family)) + std::to_string(index);
}

SymbolId SymbolId::parse(std::string_view text) {
  std::size_t split = 0;
  while (split < text.size() && is_alpha(text[split])) ++split;
  std::string_view prefix = text.substr(0, split);
  std::string_view digits = text.substr(split);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), is_digit) || digits.size() > 9) {
    throw PolyError("invalid symbol '" + std::string(text) + "'");
  }
  for (Family f : {Family::A, Family::B, Family::M, Family::Alpha, Family::Omega}) {
    if (prefix == family_prefix(f)) {
      return {f, static_cast<std::uint32_t>(std::stoul(std::string(digits)))};
    }
  }
  throw PolyError("unknown symbol family in '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& x, const Factor& y) { return x.first < y.first; });
  for (const auto& [s, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == s) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(s, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::of(SymbolId s, std::uint32_t exponent) {
  return Monomial(std::vector<Factor>{{s, exponent}});
}

std::uint32_t Monomial::exponent(SymbolId s) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), s,
                             [](const Factor& f, SymbolId key) { return f.first < key; });
  return (it != factors_.end() && it->first == s) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + rhs.factors_.size());
  auto i = factors_.begin();
  auto j = rhs.factors_.begin();
  while (i != factors_.end() || j != rhs.factors_.end()) {
    if (j == rhs.factors_.end() || (i != factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.degree_ = degree_ + rhs.degree_;
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [s, e] : factors_) {
    if (!out.empty()) out += '*';
    out += s.name();
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool CanonicalOrder::operator()(const Monomial& lhs, const Monomial& rhs) const {
  if (lhs.degree() != rhs.degree()) return lhs.degree() > rhs.degree();
  const auto& x = lhs.factors();
  const auto& y = rhs.factors();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].first != y[i].first) return x[i].first < y[i].first;
    if (x[i].second != y[i].second) return x[i].second > y[i].second;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

Poly Poly::symbol(SymbolId s, std::uint32_t exponent) { return Poly(Monomial::of(s, exponent)); }

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<SymbolId> Poly::symbols() const {
  std::set<SymbolId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [s, e] : m.factors()) out.insert(s);
  }
  return out;
}

bool Poly::uses_only(std::initializer_list<Family> families) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [s, e] : m.factors()) {
      if (std::find(families.begin(), families.end(), s.family) == families.end()) return false;
    }
  }
  return true;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  Poly out;
  for (const auto& [m1, c1] : lhs.terms_) {
    for (const auto& [m2, c2] : rhs.terms_) {
      out.add_term(m1 * m2, Rational(c1 * c2));
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) {
  *this = *this * rhs;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += rjm::to_string(c);
    if (!m.is_unit()) out += '*' + m.to_string();
  }
  return out;
}

Poly Poly::parse(std::string_view text) {
  Scanner sc(text);
  Poly out;
  if (sc.done()) sc.fail("empty input");
  bool first = true;
  while (!sc.done()) {
    int sign = 1;
    if (!first) {
      if (sc.consume('+')) {
      } else if (sc.consume('-')) {
        sign = -1;
      } else {
        sc.fail("expected '+' or '-' between terms");
      }
    }
    first = false;
    while (true) {
      if (sc.consume('-')) {
        sign = -sign;
      } else if (!sc.consume('+')) {
        break;
      }
    }
    Rational coeff = 1;
    std::vector<Monomial::Factor> factors;
    bool have_factor = false;
    do {
      char c = sc.peek();
      if (is_digit(c)) {
        std::string_view num = sc.take_while([](char ch) { return is_digit(ch); });
        std::string lit(num);
        if (sc.consume('/')) {
          std::string_view den = sc.take_while([](char ch) { return is_digit(ch); });
          if (den.empty()) sc.fail("missing denominator");
          lit += '/';
          lit += den;
        }
        coeff *= parse_rational(lit);
      } else if (is_alpha(c)) {
        std::string_view name =
            sc.take_while([](char ch) { return is_alpha(ch) || is_digit(ch); });
        SymbolId s = SymbolId::parse(name);
        std::uint32_t e = 1;
        if (sc.consume('^')) {
          std::string_view ex = sc.take_while([](char ch) { return is_digit(ch); });
          if (ex.empty() || ex.size() > 9) sc.fail("bad exponent");
          e = static_cast<std::uint32_t>(std::stoul(std::string(ex)));
        }
        factors.emplace_back(s, e);
      } else {
        sc.fail("expected coefficient or symbol");
      }
      have_factor = true;
    } while (sc.consume('*'));
    if (!have_factor) sc.fail("empty term");
    out.add_term(Monomial(std::move(factors)), sign * coeff);
  }
  return out;
}

Json Poly::to_json() const {
  Json terms = Json::array();
  for (const auto& [m, c] : terms_) {
    Json mono = Json::object();
    for (const auto& [s, e] : m.factors()) mono[s.name()] = e;
    terms.push_back(Json{{"coeff", rjm::to_string(c)}, {"monomial", mono}});
  }
  return Json{{"terms", terms}};
}

Poly Poly::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw PolyError("polynomial JSON must be an object with a 'terms' array");
  }
  Poly out;
  for (const auto& t : j["terms"]) {
    if (!t.contains("coeff") || !t["coeff"].is_string()) throw PolyError("term without coeff");
    std::vector<Monomial::Factor> factors;
    if (t.contains("monomial")) {
      for (const auto& [name, e] : t["monomial"].items()) {
        if (!e.is_number_unsigned() || e.get<std::uint32_t>() == 0) {
          throw PolyError("exponents must be positive integers");
        }
        factors.emplace_back(SymbolId::parse(name), e.get<std::uint32_t>());
      }
    }
    out.add_term(Monomial(std::move(factors)), parse_rational(t["coeff"].get<std::string>()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free functions

Poly poly_arith(PolyOp op, const Poly& lhs, const Poly& rhs) {
  switch (op) {
    case PolyOp::Add: return lhs + rhs;
    case PolyOp::Mul: return lhs * rhs;
    case PolyOp::Scale:
      if (!rhs.is_constant()) throw PolyError("scale factor must be a constant polynomial");
      return lhs * rhs.constant();
  }
  return {};
}

Poly poly_arith(PolyOp op, const Poly& lhs, const Rational& factor) {
  return poly_arith(op, lhs, Poly(factor));
}

Poly pow(const Poly& p, std::uint32_t e) {
  Poly result(1);
  Poly base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Poly expectation_substitute(const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> factors;
    for (const auto& [s, e] : m.factors()) {
      if (s.family != Family::A && s.family != Family::B) {
        throw MixedAlgebraError("expectation_substitute expects only a/b symbols, found " +
                                s.name());
      }
      factors.emplace_back(sym_m(e), 1);
    }
    out.add_term(Monomial(std::move(factors)), c);
  }
  return out;
}

Poly substitute(const Poly& p, const std::function<std::optional<Poly>(SymbolId)>& value) {
  std::map<SymbolId, std::optional<Poly>> cache;
  std::map<std::pair<SymbolId, std::uint32_t>, Poly> powers;
  auto lookup = [&](SymbolId s) -> const std::optional<Poly>& {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, value(s)).first;
    return it->second;
  };
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [s, e] : m.factors()) {
      const auto& v = lookup(s);
      if (!v) {
        kept.emplace_back(s, e);
        continue;
      }
      auto key = std::make_pair(s, e);
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, pow(*v, e)).first;
      term *= pit->second;
    }
    if (!kept.empty()) term *= Poly(Monomial(std::move(kept)));
    out += term;
  }
  return out;
}

Poly rename(const Poly& p, const std::function<SymbolId(SymbolId)>& map) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> factors;
    factors.reserve(m.factors().size());
    for (const auto& [s, e] : m.factors()) factors.emplace_back(map(s), e);
    out.add_term(Monomial(std::move(factors)), c);
  }
  return out;
}

Rational evaluate_exact(const Poly& p, const ExactAssignment& value) {
  std::map<SymbolId, Rational> cache;
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (const auto& [s, e] : m.factors()) {
      auto it = cache.find(s);
      if (it == cache.end()) {
        auto v = value(s);
        if (!v) throw MissingSymbolError(s);
        it = cache.emplace(s, *v).first;
      }
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      pw.canonicalize();
      term *= pw;
    }
    total += term;
  }
  return total;
}

double evaluate_float(const Poly& p, const FloatAssignment& value) {
  std::map<SymbolId, double> cache;
  double total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double term = c.get_d();
    for (const auto& [s, e] : m.factors()) {
      auto it = cache.find(s);
      if (it == cache.end()) {
        auto v = value(s);
        if (!v) throw MissingSymbolError(s);
        it = cache.emplace(s, *v).first;
      }
      for (std::uint32_t k = 0; k < e; ++k) term *= it->second;
    }
    total += term;
  }
  return total;
}

std::set<std::uint32_t> index_weights(const Poly& p) {
  std::set<std::uint32_t> out;
  for (const auto& [m, c] : p.terms()) {
    std::uint32_t w = 0;
    for (const auto& [s, e] : m.factors()) w += s.index * e;
    out.insert(w);
  }
  return out;
}

}  // namespace rjm
