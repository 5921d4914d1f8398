#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ysys::poly {

using BigInt = boost::multiprecision::cpp_int;

/// Exponent vector of one monomial, one entry per variable.
using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept in lexicographic order of the exponent
/// vector, which doubles as the monomial order for exact division.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, BigInt>;

  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, BigInt c);
  static Polynomial variable(int nvars, int v);
  static Polynomial monomial(int nvars, const Exponents& e, BigInt c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t term_count() const { return terms_.size(); }
  BigInt constant_term() const;
  bool nonnegative() const;

  void add_term(const Exponents& e, const BigInt& c);

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial shifted(const Exponents& shift) const;  // multiply by monomial
  Polynomial pow(int k) const;

  bool operator==(const Polynomial& rhs) const {
    return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
  }
  bool operator<(const Polynomial& rhs) const {
    if (nvars_ != rhs.nvars_) return nvars_ < rhs.nvars_;
    return terms_ < rhs.terms_;
  }

  /// Quotient of an exact division, or nullopt if rhs does not divide
  /// *this in Z[y].
  static std::optional<Polynomial> exact_div(const Polynomial& num,
                                             const Polynomial& den);

  /// gcd of the absolute values of all coefficients (0 for the zero
  /// polynomial).
  BigInt content() const;
  void divide_by_integer(const BigInt& c);

  /// Componentwise minimum of the exponent vectors over the support;
  /// this is the image of the polynomial in the min-plus semifield.
  Exponents min_exponents() const;
  void divide_by_monomial(const Exponents& e);

  double evaluate(std::span<const double> values) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  int nvars_;
  TermMap terms_;
};

}  // namespace ysys::poly
