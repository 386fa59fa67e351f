#include "arrow/rational.hpp"

#include <cctype>
#include <ostream>

#include "arrow/error.hpp"

namespace arrow {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw Error(ErrorCode::DomainError, "rational with zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
  }
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (is_integer()) return numerator();
  return numerator() + "/" + denominator();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainError, "division by zero");
  return Rational(mpq_class(a.value_ / b.value_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace arrow
