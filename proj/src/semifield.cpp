#include "ysys/semifield.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "ysys/errors.hpp"

namespace ysys::semifield {

TropMonomial TropMonomial::generator(int nvars, int v) {
  TropMonomial m(nvars);
  m.exponents.at(v) = 1;
  return m;
}

bool TropMonomial::is_one() const {
  return std::all_of(exponents.begin(), exponents.end(),
                     [](int e) { return e == 0; });
}

TropMonomial TropMonomial::inverse() const {
  TropMonomial m = *this;
  for (int& e : m.exponents) e = -e;
  return m;
}

TropMonomial TropMonomial::pow(int k) const {
  TropMonomial m = *this;
  for (int& e : m.exponents) e *= k;
  return m;
}

TropMonomial operator*(const TropMonomial& a, const TropMonomial& b) {
  if (a.nvars() != b.nvars())
    throw domain_error("tropical monomial index sets differ");
  TropMonomial m = a;
  for (int v = 0; v < b.nvars(); ++v) m.exponents[v] += b.exponents[v];
  return m;
}

TropMonomial trop_add(const TropMonomial& a, const TropMonomial& b) {
  if (a.nvars() != b.nvars())
    throw domain_error("tropical monomial index sets differ");
  TropMonomial m = a;
  for (int v = 0; v < b.nvars(); ++v)
    m.exponents[v] = std::min(m.exponents[v], b.exponents[v]);
  return m;
}

MonomialSign monomial_sign(const TropMonomial& m) {
  bool any_pos = false, any_neg = false;
  for (int e : m.exponents) {
    if (e > 0) any_pos = true;
    if (e < 0) any_neg = true;
  }
  if (any_pos && any_neg) return MonomialSign::mixed;
  if (any_pos) return MonomialSign::positive;
  if (any_neg) return MonomialSign::negative;
  return MonomialSign::zero;
}

PosRealAssignment::PosRealAssignment(std::vector<double> v)
    : values(std::move(v)) {
  for (double x : values)
    if (!(x > 0.0) || !std::isfinite(x))
      throw domain_error("assignment values must be positive and finite");
}

PosRealAssignment PosRealAssignment::constant(int nvars, double t) {
  return PosRealAssignment(std::vector<double>(nvars, t));
}

double evaluate(const TropMonomial& m, const PosRealAssignment& a) {
  if (m.nvars() != a.nvars())
    throw domain_error("assignment does not cover the index set");
  double out = 1.0;
  for (int v = 0; v < m.nvars(); ++v)
    if (m.exponents[v] != 0) out *= std::pow(a.values[v], m.exponents[v]);
  if (!std::isfinite(out) || out <= 0.0)
    throw numeric_error("monomial evaluation left the double range; "
                        "retry with a tamer assignment");
  return out;
}

PolyInterner::Factorization PolyInterner::factorize(Polynomial p) {
  if (p.is_zero()) throw domain_error("cannot intern the zero polynomial");
  if (!p.nonnegative())
    throw invariant_error("interned polynomials must be subtraction-free");
  Factorization out;
  out.content = p.content();
  p.divide_by_integer(out.content);
  out.monomial = p.min_exponents();
  p.divide_by_monomial(out.monomial);
  if (p.is_one()) return out;
  // Trial division against the known atoms, in id order, until nothing
  // divides. Quotients are content- and monomial-free automatically.
  std::map<int, int> exponents;
  bool progress = true;
  while (progress && !p.is_one()) {
    progress = false;
    const int known = static_cast<int>(polys_.size());
    for (int k = 0; k < known && !p.is_one(); ++k) {
      if (polys_[k].term_count() > p.term_count()) continue;
      while (true) {
        if (p == polys_[k]) {
          ++exponents[nvars_ + k];
          p = Polynomial::constant(nvars_, 1);
          progress = true;
          break;
        }
        auto q = Polynomial::exact_div(p, polys_[k]);
        if (!q || !q->nonnegative()) break;
        ++exponents[nvars_ + k];
        p = std::move(*q);
        progress = true;
      }
    }
  }
  if (!p.is_one()) {
    auto it = ids_.find(p);
    int id;
    if (it != ids_.end()) {
      id = it->second;
    } else {
      id = nvars_ + static_cast<int>(polys_.size());
      trop_.push_back(p.min_exponents());
      ids_.emplace(p, id);
      polys_.push_back(std::move(p));
    }
    ++exponents[id];
  }
  out.parts.assign(exponents.begin(), exponents.end());
  return out;
}

const Polynomial& PolyInterner::atom_polynomial(int id) const {
  return polys_.at(id - nvars_);
}

const std::vector<int>& PolyInterner::atom_min_exponents(int id) const {
  return trop_.at(id - nvars_);
}

PosRational PosRational::one(std::shared_ptr<PolyInterner> ctx) {
  return PosRational(std::move(ctx), 1, 1);
}

PosRational PosRational::generator(std::shared_ptr<PolyInterner> ctx, int v) {
  if (v < 0 || v >= ctx->nvars()) throw domain_error("generator out of range");
  PosRational f(std::move(ctx), 1, 1);
  f.factors_.emplace(v, 1);
  return f;
}

PosRational PosRational::constant(std::shared_ptr<PolyInterner> ctx, BigInt num,
                                  BigInt den) {
  if (num <= 0 || den <= 0)
    throw domain_error("constants must be positive rationals");
  PosRational f(std::move(ctx), std::move(num), std::move(den));
  f.normalize_scalar();
  return f;
}

void PosRational::push_factor(int id, int exponent) {
  if (id < 0 || exponent == 0) return;
  auto [it, inserted] = factors_.try_emplace(id, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) factors_.erase(it);
  }
}

void PosRational::normalize_scalar() {
  BigInt g = boost::multiprecision::gcd(snum_, sden_);
  if (g > 1) {
    snum_ /= g;
    sden_ /= g;
  }
}

void PosRational::absorb_polynomial(Polynomial p, int exponent) {
  auto f = ctx_->factorize(std::move(p));
  for (const auto& [id, e] : f.parts) push_factor(id, e * exponent);
  for (int v = 0; v < ctx_->nvars(); ++v)
    if (f.monomial[v] != 0) push_factor(v, f.monomial[v] * exponent);
  if (exponent >= 0) {
    for (int k = 0; k < exponent; ++k) snum_ *= f.content;
  } else {
    for (int k = 0; k < -exponent; ++k) sden_ *= f.content;
  }
  normalize_scalar();
}

PosRational PosRational::inverse() const {
  PosRational f(ctx_, sden_, snum_);
  for (const auto& [id, e] : factors_) f.factors_.emplace(id, -e);
  return f;
}

PosRational PosRational::pow(int k) const {
  if (k == 0) return one(ctx_);
  PosRational f = k > 0 ? *this : inverse();
  const int reps = k > 0 ? k : -k;
  PosRational out = f;
  for (int j = 1; j < reps; ++j) out = out * f;
  return out;
}

PosRational operator*(const PosRational& a, const PosRational& b) {
  if (a.ctx_ != b.ctx_)
    throw domain_error("rational operands built over different index sets");
  PosRational f = a;
  for (const auto& [id, e] : b.factors_) f.push_factor(id, e);
  f.snum_ *= b.snum_;
  f.sden_ *= b.sden_;
  f.normalize_scalar();
  return f;
}

std::pair<Polynomial, Polynomial> PosRational::expand() const {
  const int n = ctx_->nvars();
  Polynomial num = Polynomial::constant(n, snum_);
  Polynomial den = Polynomial::constant(n, sden_);
  poly::Exponents num_mono(n, 0), den_mono(n, 0);
  for (const auto& [id, e] : factors_) {
    if (id < n) {
      if (e > 0)
        num_mono[id] += e;
      else
        den_mono[id] -= e;
      continue;
    }
    const Polynomial& p = ctx_->atom_polynomial(id);
    const int reps = e > 0 ? e : -e;
    Polynomial& side = e > 0 ? num : den;
    for (int k = 0; k < reps; ++k) side = side * p;
  }
  return {num.shifted(num_mono), den.shifted(den_mono)};
}

TropMonomial PosRational::tropical() const {
  TropMonomial m(ctx_->nvars());
  for (const auto& [id, e] : factors_) {
    if (id < ctx_->nvars()) {
      m.exponents[id] += e;
    } else {
      const auto& mins = ctx_->atom_min_exponents(id);
      for (int v = 0; v < ctx_->nvars(); ++v) m.exponents[v] += e * mins[v];
    }
  }
  return m;
}

PosRational PosRational::one_plus() const {
  auto [num, den] = expand();
  Polynomial sum = num + den;
  PosRational out(ctx_, 1, sden_);
  // Denominator factors carry over unchanged; the sum becomes one new atom.
  for (const auto& [id, e] : factors_)
    if (e < 0) out.factors_.emplace(id, e);
  out.absorb_polynomial(std::move(sum), 1);
  return out;
}

PosRational PosRational::add(const PosRational& rhs) const {
  if (ctx_ != rhs.ctx_)
    throw domain_error("rational operands built over different index sets");
  auto [na, da] = expand();
  auto [nb, db] = rhs.expand();
  PosRational out(ctx_, 1, 1);
  for (const auto& [id, e] : factors_)
    if (e < 0) out.factors_.emplace(id, e);
  for (const auto& [id, e] : rhs.factors_)
    if (e < 0) out.push_factor(id, e);
  out.sden_ = sden_ * rhs.sden_;
  out.absorb_polynomial(na * db + nb * da, 1);
  return out;
}

bool rat_equal(const PosRational& a, const PosRational& b) {
  if (a.context() != b.context())
    throw domain_error("rational operands built over different index sets");
  if (a.factors() == b.factors())
    return a.scalar_num() == b.scalar_num() && a.scalar_den() == b.scalar_den();
  auto [na, da] = a.expand();
  auto [nb, db] = b.expand();
  return rat_equal(na, da, nb, db);
}

bool rat_equal(const Polynomial& na, const Polynomial& da, const Polynomial& nb,
               const Polynomial& db) {
  return na * db == nb * da;
}

double PosRational::evaluate(const PosRealAssignment& a) const {
  if (a.nvars() != ctx_->nvars())
    throw domain_error("assignment does not cover the index set");
  double out = static_cast<double>(snum_) / static_cast<double>(sden_);
  for (const auto& [id, e] : factors_) {
    double base = id < ctx_->nvars()
                      ? a.values[id]
                      : ctx_->atom_polynomial(id).evaluate(a.values);
    out *= std::pow(base, e);
  }
  if (!std::isfinite(out) || out <= 0.0)
    throw numeric_error("rational evaluation left the double range; "
                        "retry with a tamer assignment");
  return out;
}

double evaluate(const PosRational& f, const PosRealAssignment& a) {
  return f.evaluate(a);
}

nlohmann::json to_json(const TropMonomial& m, std::span<const std::string> names) {
  nlohmann::json j = nlohmann::json::object();
  for (int v = 0; v < m.nvars(); ++v) {
    if (m.exponents[v] == 0) continue;
    std::string key =
        v < static_cast<int>(names.size()) ? names[v] : "y" + std::to_string(v);
    j[key] = m.exponents[v];
  }
  return j;
}

}  // namespace ysys::semifield
