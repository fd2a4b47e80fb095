// Copyright 2026 The charnum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHARNUM_RATIONAL_HPP
#define CHARNUM_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace charnum {

/// Exact arbitrary-precision rational number.
///
/// Always held in lowest terms with a positive denominator. The decimal text
/// form is `num/den`, with `/den` omitted when the denominator is 1.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : v_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    v_.canonicalize();
  }
  explicit Rational(mpz_class value) : v_(std::move(value)) {}
  explicit Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

  /// Parses `num` or `num/den` in base 10 and reduces to lowest terms.
  static Rational parse(std::string_view text) {
    std::string s(text);
    const auto slash = s.find('/');
    mpz_class num;
    mpz_class den = 1;
    if (!parse_integer(s.substr(0, slash), num) ||
        (slash != std::string::npos && !parse_integer(s.substr(slash + 1), den))) {
      throw std::invalid_argument("Rational: malformed value '" + s + "'");
    }
    if (den == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// Parses a signed base-10 integer; rejects signs on empty digits, spaces, etc.
  static bool parse_integer(const std::string& s, mpz_class& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') return false;
    }
    return out.set_str(s[0] == '+' ? s.substr(1) : s, 10) == 0;
  }

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  std::string to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class v_;
};

/// Integer binomial coefficient with the vanishing convention: 0 unless 0 <= k <= n.
inline std::int64_t binomial_count(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r * (n-k+i) is divisible by i at every step
  }
  return r;
}

/// C(n, k) as a Rational; 0 when k < 0, k > n or n < 0.
inline Rational binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(std::move(r));
}

inline Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(std::move(r));
}

}  // namespace charnum

#endif  // CHARNUM_RATIONAL_HPP
