#include "p1qft/rat.hpp"

#include <cctype>
#include <ostream>

#include "p1qft/errors.hpp"

namespace p1qft {

Rat::Rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational", 0);
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  const std::size_t int_end = digits(i);
  if (int_end == i) throw ParseError("expected digits in rational '" + s + "'", i);
  mpz_class num(s.substr(i, int_end - i));
  mpz_class den(1);
  if (int_end < s.size()) {
    if (s[int_end] == '/') {
      const std::size_t den_end = digits(int_end + 1);
      if (den_end == int_end + 1 || den_end != s.size())
        throw ParseError("malformed denominator in '" + s + "'", int_end + 1);
      den = mpz_class(s.substr(int_end + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'", int_end + 1);
    } else if (s[int_end] == '.') {
      const std::size_t frac_end = digits(int_end + 1);
      if (frac_end != s.size()) throw ParseError("malformed decimal '" + s + "'", frac_end);
      const std::string frac = s.substr(int_end + 1);
      for (std::size_t k = 0; k < frac.size(); ++k) {
        num *= 10;
        den *= 10;
      }
      if (!frac.empty()) num += mpz_class(frac);
    } else {
      throw ParseError("unexpected character in rational '" + s + "'", int_end);
    }
  }
  if (neg) num = -num;
  return Rat(mpq_class(num, den));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rat(mpq_class(1) / q_);
}

Rat Rat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rat(mpq_class(n, d));
}

std::string Rat::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat binomial(long m, long k) {
  // m (m-1) ... (m-k+1) / k!
  Rat r(1);
  for (long j = 0; j < k; ++j) r = r * Rat(m - j, j + 1);
  return r;
}

}  // namespace p1qft
