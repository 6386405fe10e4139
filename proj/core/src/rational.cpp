#include "blv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace blv {

namespace {

bool looks_like_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!looks_like_integer(num) || !looks_like_integer(den))
      throw std::invalid_argument("bad rational literal: " + text);
    Rational q(s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (head.empty() || head == "+" || head == "-") head += "0";
    if (!looks_like_integer(head)) throw std::invalid_argument("bad rational literal: " + text);
    for (char ch : tail)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("bad rational literal: " + text);
    Rational q{mpz_class(head)};
    if (!tail.empty()) {
      mpz_class scale = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
      Rational fracpart(mpz_class(tail), scale);
      fracpart.canonicalize();
      bool neg = (s[0] == '-');
      q += neg ? Rational(-fracpart) : fracpart;
    }
    return q;
  }

  if (!looks_like_integer(s)) throw std::invalid_argument("bad rational literal: " + text);
  return Rational(mpz_class(s));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long long binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) stays exact because r is always a binomial coefficient.
    unsigned __int128 wide = static_cast<unsigned __int128>(r) * (n - k + i);
    wide /= i;
    if (wide > static_cast<unsigned __int128>(__LONG_LONG_MAX__))
      throw std::overflow_error("binomial coefficient overflows long long");
    r = static_cast<unsigned long long>(wide);
  }
  return static_cast<long long>(r);
}

}  // namespace blv
