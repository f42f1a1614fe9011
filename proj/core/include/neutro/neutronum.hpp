#pragma once

#include <map>
#include <string>

namespace neutro {

/// A number a + b1*I1 + b2*I2 + ... built on indeterminacy symbols with
/// I_k * I_k = I_k and 0 * I_k = 0.  Index 1 is the plain indeterminacy I.
/// Zero coefficients are never stored, so a crisp number has an empty map.
///
/// Products of two different subindeterminacies are undefined and raise
/// UndefinedSubindeterminacyProduct; every other combination is linear.
class NeutroNumber {
 public:
  NeutroNumber() = default;
  explicit NeutroNumber(double a) : a_(a) {}
  NeutroNumber(double a, const std::map<int, double>& coefficients);

  /// coeff * I_k
  static NeutroNumber indeterminacy(int k = 1, double coeff = 1.0);

  [[nodiscard]] double determinate() const noexcept { return a_; }
  [[nodiscard]] double coefficient(int k) const noexcept;
  [[nodiscard]] const std::map<int, double>& indeterminate() const noexcept { return b_; }
  [[nodiscard]] bool is_crisp() const noexcept { return b_.empty(); }

  NeutroNumber operator-() const;
  friend NeutroNumber operator+(const NeutroNumber& x, const NeutroNumber& y);
  friend NeutroNumber operator-(const NeutroNumber& x, const NeutroNumber& y);
  friend NeutroNumber operator*(const NeutroNumber& x, const NeutroNumber& y);
  /// General quotient x * y^-1; see inverse().
  friend NeutroNumber operator/(const NeutroNumber& x, const NeutroNumber& y);

  [[nodiscard]] NeutroNumber scaled(double c) const;
  /// Throws DivisionByZero when c == 0.
  [[nodiscard]] NeutroNumber divided_by(double c) const;
  /// (c + d I)^-1 = 1/c - d/(c(c+d)) I, defined when c != 0 and c + d != 0
  /// and at most one index is present; NotInvertible otherwise.
  [[nodiscard]] NeutroNumber inverse() const;
  /// x^n for n >= 0 by repeated multiplication, negative n via inverse().
  [[nodiscard]] NeutroNumber pow(int n) const;

  friend bool operator==(const NeutroNumber&, const NeutroNumber&) = default;

 private:
  void drop_zeros();

  double a_ = 0.0;
  std::map<int, double> b_;
};

/// "a + b*I", "a - b*I", "a + b1*I + b2*I2" (index 1 rendered as plain I).
std::string to_string(const NeutroNumber& x);

}  // namespace neutro
