#include "plci/rational.hpp"

#include <cctype>
#include <sstream>

namespace plci {

std::optional<BigRat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  size_t slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    for (char c : den)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    return BigRat(BigInt(num), d);
  }
  size_t dot = text.find('.');
  std::string ipart = dot == std::string::npos ? text : text.substr(0, dot);
  std::string fpart = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (ipart.empty()) return std::nullopt;
  if (dot != std::string::npos && fpart.empty()) return std::nullopt;
  for (char c : ipart)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  for (char c : fpart)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  BigInt num(ipart);
  BigInt den = 1;
  for (char c : fpart) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return BigRat(num, den);
}

std::string rat_to_fraction(const BigRat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::string rat_to_decimal(const BigRat& q) {
  BigInt num = numerator(q), den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  // Strip factors of 2 and 5; anything left means no finite expansion.
  BigInt d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return rat_to_fraction(q);
  int shift = std::max(twos, fives);
  BigInt scaled = num;
  for (int i = twos; i < shift; ++i) scaled *= 2;
  for (int i = fives; i < shift; ++i) scaled *= 5;
  std::ostringstream digits;
  digits << scaled;
  std::string s = digits.str();
  if (shift == 0) return (neg ? "-" : "") + s;
  while (static_cast<int>(s.size()) <= shift) s.insert(s.begin(), '0');
  s.insert(s.size() - shift, ".");
  return (neg ? "-" : "") + s;
}

std::string rat_approx(const BigRat& q, int digits) {
  BigInt num = numerator(q), den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);  // round half up
  std::ostringstream os;
  os << scaled;
  std::string s = os.str();
  while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
  s.insert(s.size() - digits, ".");
  // Trim trailing zeros but keep at least one fractional digit.
  size_t last = s.find_last_not_of('0');
  if (s[last] == '.') ++last;
  s.erase(last + 1);
  return (neg ? "-" : "") + s;
}

}  // namespace plci
