#ifndef WONDER_POINCARE_HPP
#define WONDER_POINCARE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace wonder {

// Integer polynomial in one variable t, coefficient of t^i stored at
// index i. Coefficients are exact arbitrary-precision integers; there is
// no floating point anywhere in this calculus.
class PoincarePolynomial {
 public:
  using Int = boost::multiprecision::cpp_int;

  PoincarePolynomial() = default;  // the zero polynomial
  explicit PoincarePolynomial(std::vector<Int> coeffs);
  PoincarePolynomial(std::initializer_list<long long> coeffs);

  static PoincarePolynomial one();
  // 1 + t^2 + t^4 + ... + t^{2(terms-1)}; the Poincare polynomial of a
  // projective (terms-1)-space, and the fiber factor of a rank-`terms`
  // projective bundle.
  static PoincarePolynomial projective(int terms);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the polynomial, -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Coefficient of t^i; zero outside the stored range.
  const Int& coeff(int i) const;
  const std::vector<Int>& coefficients() const { return coeffs_; }

  // Value at t = 1 (the Euler number when the coefficients are Betti
  // numbers).
  Int at_one() const;
  // True when the coefficient vector reads the same in both directions
  // and the degree equals `expected_degree`.
  bool is_palindromic(int expected_degree) const;

  // Multiply by t^k.
  PoincarePolynomial shifted(int k) const;

  PoincarePolynomial operator+(const PoincarePolynomial& o) const;
  PoincarePolynomial operator*(const PoincarePolynomial& o) const;
  bool operator==(const PoincarePolynomial& o) const = default;

  // Renders like "1 + 5*t^2 + t^4"; "0" for the zero polynomial.
  std::string str() const;

 private:
  void normalize();
  std::vector<Int> coeffs_;
};

}  // namespace wonder

#endif
