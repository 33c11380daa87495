#include "wonder/poincare.hpp"

#include <sstream>
#include <stdexcept>

namespace wonder {

PoincarePolynomial::PoincarePolynomial(std::vector<Int> coeffs)
    : coeffs_(std::move(coeffs)) {
  normalize();
}

PoincarePolynomial::PoincarePolynomial(std::initializer_list<long long> coeffs) {
  coeffs_.assign(coeffs.begin(), coeffs.end());
  normalize();
}

void PoincarePolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PoincarePolynomial PoincarePolynomial::one() { return PoincarePolynomial{1}; }

PoincarePolynomial PoincarePolynomial::projective(int terms) {
  if (terms < 1) throw std::invalid_argument("projective: terms must be >= 1");
  std::vector<Int> c(2 * (terms - 1) + 1, 0);
  for (int i = 0; i < terms; ++i) c[2 * i] = 1;
  return PoincarePolynomial(std::move(c));
}

const PoincarePolynomial::Int& PoincarePolynomial::coeff(int i) const {
  static const Int kZero = 0;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[i];
}

PoincarePolynomial::Int PoincarePolynomial::at_one() const {
  Int s = 0;
  for (const Int& c : coeffs_) s += c;
  return s;
}

bool PoincarePolynomial::is_palindromic(int expected_degree) const {
  if (degree() != expected_degree) return false;
  int n = static_cast<int>(coeffs_.size());
  for (int i = 0; i < n; ++i)
    if (coeffs_[i] != coeffs_[n - 1 - i]) return false;
  return true;
}

PoincarePolynomial PoincarePolynomial::shifted(int k) const {
  if (k < 0) throw std::invalid_argument("shifted: negative shift");
  if (is_zero()) return {};
  std::vector<Int> c(coeffs_.size() + static_cast<size_t>(k), 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i + k] = coeffs_[i];
  return PoincarePolynomial(std::move(c));
}

PoincarePolynomial PoincarePolynomial::operator+(const PoincarePolynomial& o) const {
  std::vector<Int> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return PoincarePolynomial(std::move(c));
}

PoincarePolynomial PoincarePolynomial::operator*(const PoincarePolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Int> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return PoincarePolynomial(std::move(c));
}

std::string PoincarePolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0) {
      out << coeffs_[i];
      continue;
    }
    if (coeffs_[i] != 1) out << coeffs_[i] << "*";
    out << "t";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

}  // namespace wonder
