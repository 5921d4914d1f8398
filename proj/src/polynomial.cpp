#include "ysys/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "ysys/errors.hpp"

namespace ysys::poly {

Polynomial Polynomial::constant(int nvars, BigInt c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.emplace(Exponents(nvars, 0), std::move(c));
  return p;
}

Polynomial Polynomial::variable(int nvars, int v) {
  Exponents e(nvars, 0);
  e.at(v) = 1;
  return monomial(nvars, e, 1);
}

Polynomial Polynomial::monomial(int nvars, const Exponents& e, BigInt c) {
  Polynomial p(nvars);
  if (static_cast<int>(e.size()) != nvars)
    throw domain_error("monomial exponent vector has wrong length");
  if (c != 0) p.terms_.emplace(e, std::move(c));
  return p;
}

bool Polynomial::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  if (c != 1) return false;
  for (int x : e)
    if (x != 0) return false;
  return true;
}

BigInt Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool Polynomial::nonnegative() const {
  for (const auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

void Polynomial::add_term(const Exponents& e, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (nvars_ != rhs.nvars_) throw domain_error("polynomial nvars mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (nvars_ != rhs.nvars_) throw domain_error("polynomial nvars mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (nvars_ != rhs.nvars_) throw domain_error("polynomial nvars mismatch");
  Polynomial out(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::shifted(const Exponents& shift) const {
  Polynomial out(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + shift[v];
    out.terms_.emplace(e, ca);
  }
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw domain_error("polynomial pow with negative exponent");
  Polynomial out = constant(nvars_, 1);
  for (int j = 0; j < k; ++j) out = out * *this;
  return out;
}

std::optional<Polynomial> Polynomial::exact_div(const Polynomial& num,
                                                const Polynomial& den) {
  if (num.nvars_ != den.nvars_) throw domain_error("polynomial nvars mismatch");
  if (den.is_zero()) throw domain_error("division by zero polynomial");
  Polynomial q(num.nvars_);
  Polynomial r = num;
  const auto& [de, dc] = *den.terms_.rbegin();
  Exponents t(num.nvars_);
  Exponents e(num.nvars_);
  while (!r.is_zero()) {
    const auto& [re, rc] = *r.terms_.rbegin();
    for (int v = 0; v < num.nvars_; ++v) {
      t[v] = re[v] - de[v];
      if (t[v] < 0) return std::nullopt;
    }
    if (rc % dc != 0) return std::nullopt;
    BigInt qc = rc / dc;
    q.add_term(t, qc);
    for (const auto& [ed, cd] : den.terms_) {
      for (int v = 0; v < num.nvars_; ++v) e[v] = ed[v] + t[v];
      r.add_term(e, -qc * cd);
    }
  }
  return q;
}

BigInt Polynomial::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : terms_) {
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(c));
    if (g == 1) break;
  }
  return g;
}

void Polynomial::divide_by_integer(const BigInt& c) {
  if (c == 0) throw domain_error("division by zero content");
  for (auto& [e, coeff] : terms_) {
    if (coeff % c != 0) throw invariant_error("content division not exact");
    coeff /= c;
  }
}

Exponents Polynomial::min_exponents() const {
  if (terms_.empty()) throw domain_error("min_exponents of zero polynomial");
  Exponents m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (int v = 0; v < nvars_; ++v)
      if (e[v] < m[v]) m[v] = e[v];
  return m;
}

void Polynomial::divide_by_monomial(const Exponents& e) {
  TermMap out;
  for (const auto& [ea, c] : terms_) {
    Exponents ne(nvars_);
    for (int v = 0; v < nvars_; ++v) {
      ne[v] = ea[v] - e[v];
      if (ne[v] < 0) throw invariant_error("monomial division not exact");
    }
    out.emplace(std::move(ne), c);
  }
  terms_ = std::move(out);
}

double Polynomial::evaluate(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != nvars_)
    throw domain_error("evaluate: wrong number of values");
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = static_cast<double>(c);
    for (int v = 0; v < nvars_; ++v)
      if (e[v] != 0) term *= std::pow(values[v], e[v]);
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first_term)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << "-";
    first_term = false;
    BigInt a = boost::multiprecision::abs(c);
    std::vector<std::string> parts;
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      std::string name =
          v < static_cast<int>(names.size()) ? names[v] : "y" + std::to_string(v);
      if (e[v] != 1) name += "^" + std::to_string(e[v]);
      parts.push_back(std::move(name));
    }
    if (a != 1 || parts.empty()) parts.insert(parts.begin(), a.str());
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k > 0) os << "*";
      os << parts[k];
    }
  }
  return os.str();
}

}  // namespace ysys::poly
