#include "neutro/neutronum.hpp"

#include <cmath>

#include "neutro/error.hpp"
#include "neutro/realset.hpp"

namespace neutro {

NeutroNumber::NeutroNumber(double a, const std::map<int, double>& coefficients)
    : a_(a), b_(coefficients) {
  for (const auto& [k, _] : b_) {
    if (k < 1) throw Error(Errc::NotSupported, "indeterminacy index must be >= 1");
  }
  drop_zeros();
}

NeutroNumber NeutroNumber::indeterminacy(int k, double coeff) { return NeutroNumber(0.0, {{k, coeff}}); }

double NeutroNumber::coefficient(int k) const noexcept {
  auto it = b_.find(k);
  return it == b_.end() ? 0.0 : it->second;
}

void NeutroNumber::drop_zeros() {
  std::erase_if(b_, [](const auto& kv) { return kv.second == 0.0; });
  if (a_ == 0.0) a_ = 0.0;  // folds -0
}

NeutroNumber NeutroNumber::operator-() const { return scaled(-1.0); }

NeutroNumber operator+(const NeutroNumber& x, const NeutroNumber& y) {
  NeutroNumber r = x;
  r.a_ += y.a_;
  for (const auto& [k, v] : y.b_) r.b_[k] += v;
  r.drop_zeros();
  return r;
}

NeutroNumber operator-(const NeutroNumber& x, const NeutroNumber& y) { return x + (-y); }

NeutroNumber operator*(const NeutroNumber& x, const NeutroNumber& y) {
  if (!x.b_.empty() && !y.b_.empty()) {
    const int k = x.b_.begin()->first;
    const bool single = x.b_.size() == 1 && y.b_.size() == 1 && y.b_.begin()->first == k;
    if (!single) {
      throw Error(Errc::UndefinedSubindeterminacyProduct,
                  "product of distinct subindeterminacies " + to_string(x) + " and " +
                      to_string(y));
    }
    // (a + bI)(c + dI) = ac + (ad + bc + bd) I, using I*I = I.
    const double b = x.b_.begin()->second;
    const double d = y.b_.begin()->second;
    return NeutroNumber(x.a_ * y.a_, {{k, x.a_ * d + b * y.a_ + b * d}});
  }
  NeutroNumber r(x.a_ * y.a_);
  for (const auto& [k, v] : x.b_) r.b_[k] += v * y.a_;
  for (const auto& [k, v] : y.b_) r.b_[k] += x.a_ * v;
  r.drop_zeros();
  return r;
}

NeutroNumber operator/(const NeutroNumber& x, const NeutroNumber& y) {
  if (y.is_crisp()) return x.divided_by(y.a_);
  return x * y.inverse();
}

NeutroNumber NeutroNumber::scaled(double c) const {
  NeutroNumber r = *this;
  r.a_ *= c;
  for (auto& [_, v] : r.b_) v *= c;
  r.drop_zeros();
  return r;
}

NeutroNumber NeutroNumber::divided_by(double c) const {
  if (c == 0.0) throw Error(Errc::DivisionByZero, "division of " + to_string(*this) + " by 0");
  NeutroNumber r = *this;
  r.a_ /= c;
  for (auto& [_, v] : r.b_) v /= c;
  r.drop_zeros();
  return r;
}

NeutroNumber NeutroNumber::inverse() const {
  if (b_.empty()) {
    if (a_ == 0.0) throw Error(Errc::DivisionByZero, "inverse of 0");
    return NeutroNumber(1.0 / a_);
  }
  if (b_.size() != 1) {
    throw Error(Errc::NotInvertible, to_string(*this) + " mixes several subindeterminacies");
  }
  const auto [k, d] = *b_.begin();
  const double c = a_;
  if (c == 0.0 || c + d == 0.0) {
    throw Error(Errc::NotInvertible, to_string(*this) + " has no inverse");
  }
  return NeutroNumber(1.0 / c, {{k, -d / (c * (c + d))}});
}

NeutroNumber NeutroNumber::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  NeutroNumber r(1.0);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

std::string to_string(const NeutroNumber& x) {
  std::string out = format_number(x.determinate());
  for (const auto& [k, v] : x.indeterminate()) {
    out += v < 0 ? " - " : " + ";
    const double mag = std::abs(v);
    if (mag != 1.0) out += format_number(mag) + "*";
    out += "I";
    if (k != 1) out += std::to_string(k);
  }
  return out;
}

}  // namespace neutro
