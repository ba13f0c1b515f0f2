#pragma once
// Exact rational arithmetic on 64-bit numerator/denominator with 128-bit
// overflow-checked intermediates. Every analytic quantity in this library is
// a Rational; floating point appears only at output boundaries.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fogran {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 uabs(i128 v) { return v < 0 ? ~static_cast<u128>(v) + 1 : static_cast<u128>(v); }

inline u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: integers promote implicitly
  Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  /// Accepts "3", "-4/6" (reduced), and plain decimals like "0.25".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_,
                static_cast<detail::i128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<detail::i128>(a.num_) * b.num_, static_cast<detail::i128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(static_cast<detail::i128>(a.num_) * b.den_, static_cast<detail::i128>(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  static int compare(const Rational& a, const Rational& b) {
    const detail::i128 lhs = static_cast<detail::i128>(a.num_) * b.den_;
    const detail::i128 rhs = static_cast<detail::i128>(b.num_) * a.den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }

  Rational pow(int exponent) const {
    if (exponent < 0) throw std::domain_error("negative rational exponent");
    Rational acc(1);
    for (int i = 0; i < exponent; ++i) acc *= *this;
    return acc;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  /// Largest integer <= value.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ < 0 && num_ % den_ != 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -((-*this).floor()); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "n" when integral, "n/d" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Exact decimal rendering rounded (half-up) to `sig` significant digits.
  /// Deterministic: digit generation is pure integer long division.
  std::string decimal(int sig = 12) const;

  static Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
  static Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

 private:
  static Rational make(detail::i128 n, detail::i128 d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::u128 g = detail::gcd(detail::uabs(n), static_cast<detail::u128>(d));
    if (g > 1) {
      n /= static_cast<detail::i128>(g);
      d /= static_cast<detail::i128>(g);
    }
    constexpr detail::i128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string Rational::decimal(int sig) const {
  if (sig < 1) sig = 1;
  if (num_ == 0) return "0";
  const bool neg = num_ < 0;
  detail::u128 n = detail::uabs(num_);
  const detail::u128 d = den_;

  std::string digits;
  long long exp = 0;  // value = 0.<digits> * 10^exp
  detail::u128 r = n % d;
  const detail::u128 q = n / d;
  if (q > 0) {
    digits = detail::u128_to_string(q);
    exp = static_cast<long long>(digits.size());
  } else {
    while (true) {
      r *= 10;
      const int dig = static_cast<int>(r / d);
      r %= d;
      if (dig == 0) {
        --exp;
      } else {
        digits.push_back(static_cast<char>('0' + dig));
        break;
      }
    }
  }
  while (static_cast<int>(digits.size()) < sig + 1 && r != 0) {
    r *= 10;
    digits.push_back(static_cast<char>('0' + static_cast<int>(r / d)));
    r %= d;
  }
  if (static_cast<int>(digits.size()) > sig) {
    const bool round_up = digits[sig] >= '5';
    digits.resize(sig);
    if (round_up) {
      int i = sig - 1;
      while (i >= 0 && digits[i] == '9') digits[i--] = '0';
      if (i < 0) {
        digits.insert(digits.begin(), '1');
        digits.resize(sig);
        ++exp;
      } else {
        ++digits[i];
      }
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  const long long len = static_cast<long long>(digits.size());
  std::string out;
  if (exp > 0 && exp <= 15) {
    if (exp >= len) {
      out = digits + std::string(static_cast<std::size_t>(exp - len), '0');
    } else {
      out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
    }
  } else if (exp <= 0 && exp > -6) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
  } else {
    out = digits.substr(0, 1);
    if (len > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(exp - 1);
  }
  return neg ? "-" + out : out;
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational { throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  auto eat_int = [&](bool allow_sign) -> detail::i128 {
    bool neg = false;
    if (pos < text.size() && allow_sign && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') fail();
    detail::i128 v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      if (v > static_cast<detail::i128>(INT64_MAX) * 1000000) fail();
      ++pos;
    }
    return neg ? -v : v;
  };

  if (text.empty()) fail();
  const detail::i128 head = eat_int(true);
  if (pos == text.size()) return make(head, 1);
  if (text[pos] == '/') {
    ++pos;
    const detail::i128 den = eat_int(false);
    if (pos != text.size()) fail();
    return make(head, den);
  }
  if (text[pos] == '.') {
    ++pos;
    const std::size_t frac_start = pos;
    detail::i128 frac = 0;
    detail::i128 scale = 1;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      frac = frac * 10 + (text[pos] - '0');
      scale *= 10;
      if (scale > static_cast<detail::i128>(INT64_MAX)) fail();
      ++pos;
    }
    if (pos == frac_start || pos != text.size()) fail();
    const bool neg = !text.empty() && text[0] == '-';
    detail::i128 n = head * scale + (neg ? -frac : frac);
    return make(n, scale);
  }
  return fail();
}

/// Exact binomial coefficient; throws std::overflow_error past 64-bit range.
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  detail::i128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace fogran
