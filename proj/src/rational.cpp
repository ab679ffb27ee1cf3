#include "rnv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rnv {

Rational frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational denominator must be nonzero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string what = "not a rational \"p\" or \"p/q\": '" + text + "'";
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
  const auto slash = text.find('/', pos);
  if (slash == std::string::npos) {
    if (!all_digits(text, pos, text.size())) throw std::invalid_argument(what);
  } else {
    if (!all_digits(text, pos, slash) || !all_digits(text, slash + 1, text.size()))
      throw std::invalid_argument(what);
  }
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument(what);
  if (q.get_den() == 0) throw std::invalid_argument("rational denominator must be nonzero");
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow_rational(const Rational& q, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), exp);
  // num/den are coprime, so their powers are as well; no canonicalization
  // needed beyond the sign convention, which pow preserves for den > 0.
  return out;
}

}  // namespace rnv
