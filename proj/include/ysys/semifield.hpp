#pragma once

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ysys/polynomial.hpp"

namespace ysys::semifield {

using poly::BigInt;
using poly::Polynomial;

enum class MonomialSign { positive, negative, zero, mixed };

/// Laurent monomial in the initial coefficients, with min-plus addition.
struct TropMonomial {
  std::vector<int> exponents;

  explicit TropMonomial(int nvars = 0) : exponents(nvars, 0) {}
  explicit TropMonomial(std::vector<int> e) : exponents(std::move(e)) {}
  static TropMonomial generator(int nvars, int v);

  int nvars() const { return static_cast<int>(exponents.size()); }
  bool is_one() const;

  TropMonomial inverse() const;
  TropMonomial pow(int k) const;
  friend TropMonomial operator*(const TropMonomial& a, const TropMonomial& b);
  bool operator==(const TropMonomial& rhs) const = default;
};

/// Min-plus addition; requires matching index sets.
TropMonomial trop_add(const TropMonomial& a, const TropMonomial& b);
MonomialSign monomial_sign(const TropMonomial& m);

/// Strictly positive finite values for the initial coefficients.
struct PosRealAssignment {
  std::vector<double> values;

  explicit PosRealAssignment(std::vector<double> v = {});
  static PosRealAssignment constant(int nvars, double t);
  int nvars() const { return static_cast<int>(values.size()); }
};

double evaluate(const TropMonomial& m, const PosRealAssignment& a);

/// Interning table for the polynomial factors appearing in
/// subtraction-free arithmetic. Atom ids 0..nvars-1 are the variables;
/// larger ids are content-free polynomials with no monomial factor.
///
/// New polynomials are factorized eagerly by trial exact division
/// against the existing atoms (rejecting quotients with negative
/// coefficients), so products of known factors split instead of
/// becoming fresh compound atoms. This is what lets long mutation
/// products cancel factor-by-factor instead of growing.
class PolyInterner {
 public:
  explicit PolyInterner(int nvars) : nvars_(nvars) {}

  struct Factorization {
    BigInt content = 1;
    poly::Exponents monomial;        // pure variable part
    std::vector<std::pair<int, int>> parts;  // (atom id, exponent)
  };

  int nvars() const { return nvars_; }
  /// p must be nonzero with nonnegative coefficients.
  Factorization factorize(Polynomial p);
  const Polynomial& atom_polynomial(int id) const;
  const std::vector<int>& atom_min_exponents(int id) const;
  std::size_t size() const { return polys_.size(); }

 private:
  int nvars_;
  std::vector<Polynomial> polys_;
  std::vector<std::vector<int>> trop_;
  std::map<Polynomial, int> ids_;
};

/// Subtraction-free rational function of the initial coefficients,
/// held as a positive rational scalar times a product of interned
/// atoms with integer exponents. The observable numerator/denominator
/// pair (both with nonnegative integer coefficients) is produced by
/// expand(); equality is cross-multiplication of those pairs and never
/// relies on any canonical form.
class PosRational {
 public:
  PosRational() = default;

  static PosRational one(std::shared_ptr<PolyInterner> ctx);
  static PosRational generator(std::shared_ptr<PolyInterner> ctx, int v);
  static PosRational constant(std::shared_ptr<PolyInterner> ctx, BigInt num,
                              BigInt den = 1);

  const std::shared_ptr<PolyInterner>& context() const { return ctx_; }
  int nvars() const { return ctx_ ? ctx_->nvars() : 0; }
  bool is_one() const { return factors_.empty() && snum_ == 1 && sden_ == 1; }

  PosRational inverse() const;
  PosRational pow(int k) const;
  friend PosRational operator*(const PosRational& a, const PosRational& b);
  PosRational one_plus() const;                  // 1 + *this
  PosRational add(const PosRational& rhs) const;  // *this + rhs

  /// (numerator, denominator), both nonnegative, denominator nonzero.
  std::pair<Polynomial, Polynomial> expand() const;
  TropMonomial tropical() const;
  double evaluate(const PosRealAssignment& a) const;

  const std::map<int, int>& factors() const { return factors_; }
  const BigInt& scalar_num() const { return snum_; }
  const BigInt& scalar_den() const { return sden_; }

 private:
  PosRational(std::shared_ptr<PolyInterner> ctx, BigInt sn, BigInt sd)
      : ctx_(std::move(ctx)), snum_(std::move(sn)), sden_(std::move(sd)) {}
  void push_factor(int id, int exponent);
  void normalize_scalar();
  void absorb_polynomial(Polynomial p, int exponent);

  std::shared_ptr<PolyInterner> ctx_;
  std::map<int, int> factors_;
  BigInt snum_ = 1;
  BigInt sden_ = 1;
};

/// Exact equality in the ambient field of rational functions.
bool rat_equal(const PosRational& a, const PosRational& b);

/// Cross-multiplication equality for explicit numerator/denominator pairs.
bool rat_equal(const Polynomial& na, const Polynomial& da, const Polynomial& nb,
               const Polynomial& db);

double evaluate(const PosRational& f, const PosRealAssignment& a);

nlohmann::json to_json(const TropMonomial& m, std::span<const std::string> names);

}  // namespace ysys::semifield
