#include "ccl/rational.hpp"

#include <cctype>
#include <numeric>

namespace ccl {

namespace {

// Digit bounds keep every intermediate product inside int64: the largest
// parsed magnitude is < 10^12 * 10^9, and comparisons in boost::rational
// multiply numerators with denominators <= 10^9.
constexpr int kMaxIntDigits = 12;
constexpr int kMaxFracDigits = 9;

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

long long pow10(int k) {
  long long p = 1;
  while (k-- > 0) p *= 10;
  return p;
}

}  // namespace

std::optional<Money> Money::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string s = text;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) return std::nullopt;
    if (p.size() > kMaxIntDigits || q.size() > kMaxIntDigits) return std::nullopt;
    long long num = std::stoll(p), den = std::stoll(q);
    if (den == 0) return std::nullopt;
    return Money(neg ? -num : num, den);
  }
  std::string ip = s, fp;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
    if (fp.empty()) return std::nullopt;
  }
  if (!all_digits(ip)) return std::nullopt;
  if (ip.size() > kMaxIntDigits) return std::nullopt;
  if (!fp.empty() && (!all_digits(fp) || fp.size() > kMaxFracDigits))
    return std::nullopt;
  long long num = std::stoll(ip);
  long long den = 1;
  if (!fp.empty()) {
    den = pow10(static_cast<int>(fp.size()));
    num = num * den + std::stoll(fp);
  }
  return Money(neg ? -num : num, den);
}

std::string Money::str() const {
  long long n = num(), d = den();
  if (d == 1) return std::to_string(n);
  // d is reduced, so a terminating decimal exists iff d = 2^a * 5^b.
  long long rest = d;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::to_string(n) + "/" + std::to_string(d);
  int k = std::max(twos, fives);
  long long scaled = n * (pow10(k) / d);  // exact: d divides 10^k
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = std::to_string(scaled);
  if (static_cast<int>(digits.size()) <= k)
    digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  while (digits.back() == '0') digits.pop_back();
  return (neg ? "-" : "") + digits;
}

bool Money::canonical() const {
  if (den() <= 0) return false;
  return std::gcd(num() < 0 ? -num() : num(), den()) == 1 || num() == 0;
}

}  // namespace ccl
