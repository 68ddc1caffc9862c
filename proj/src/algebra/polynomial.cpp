#include <algorithm>

#include "proofcheck/algebra.hpp"

namespace proofcheck::algebra {

Polynomial Polynomial::constant(const BigInt& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.add_term({{name, 1}}, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

BigInt Polynomial::constant_term() const { return coefficient({}); }

BigInt Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const BigInt& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      out.add_term(m, c1 * c2);
    }
  }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const auto& [m, c] : terms_) {
    BigInt a = abs(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

std::optional<Polynomial> Polynomial::divide_exact(const BigInt& d) const {
  if (d == 0) return std::nullopt;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    BigInt q = c / d;
    out.terms_.emplace(m, q);
  }
  return out;
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& value) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it == m.end()) {
      out.add_term(m, c);
      continue;
    }
    Monomial rest = m;
    rest.erase(var);
    Polynomial term;
    term.add_term(rest, c);
    out = out + term * value.pow(it->second);
  }
  return out;
}

BigInt Polynomial::evaluate(const std::map<std::string, BigInt>& env) const {
  BigInt total = 0;
  for (const auto& [m, c] : terms_) {
    BigInt v = c;
    for (const auto& [name, e] : m) {
      auto it = env.find(name);
      BigInt x = it == env.end() ? BigInt(0) : it->second;
      BigInt p;
      mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), e);
      v *= p;
    }
    total += v;
  }
  return total;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned total = 0;
    for (const auto& [v, e] : m) total += e;
    d = std::max(d, total);
  }
  return d;
}

unsigned Polynomial::degree_in(const std::string& var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  // Highest total degree first, then by monomial order.
  std::vector<std::pair<Monomial, BigInt>> ordered(terms_.begin(), terms_.end());
  auto total = [](const Monomial& m) {
    unsigned t = 0;
    for (const auto& [v, e] : m) t += e;
    return t;
  };
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](const auto& a, const auto& b) { return total(a.first) > total(b.first); });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    BigInt mag = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string factors;
    for (const auto& [v, e] : m) {
      if (!factors.empty()) factors += "*";
      factors += v;
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += factors;
    else
      out += mag.get_str() + factors;
  }
  return out;
}

}  // namespace proofcheck::algebra
