#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace solder {

// Exact rational arithmetic. GMP keeps values canonical (reduced, positive
// denominator), which the canonical-form guarantees of the scalar ring lean on.
using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) {
  return mpz_cmp_ui(r.get_den_mpz_t(), 1) == 0;
}

// Parses "n" or "n/d" with optional leading minus. Returns nullopt on
// malformed input or zero denominator.
inline std::optional<Rational> rational_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) return std::nullopt;
  }
  if (text.back() == '/' || text.find("//") != std::string::npos)
    return std::nullopt;
  mpq_class value;
  if (value.set_str(text, 10) != 0) return std::nullopt;
  if (value.get_den() == 0) return std::nullopt;
  value.canonicalize();
  return value;
}

// Exact square root of a nonnegative rational, when one exists in Q.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  mpz_class num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

}  // namespace solder
