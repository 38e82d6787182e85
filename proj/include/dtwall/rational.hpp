#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace dtwall {

// Exact rationals throughout; no floating point anywhere in the core.
using Rat = mpq_class;
using Int = mpz_class;
using i64 = long;
static_assert(sizeof(long) == 8, "needs 64-bit long");

Rat rat(i64 num, i64 den = 1);

// Accepts "p" or "p/q" in base 10, q > 0 after canonicalization; rejects anything else.
std::optional<Rat> parse_rat(const std::string& s);

// Canonical "p" or "p/q".
std::string rat_str(const Rat& q);
// Always "p/q", including "p/1"; used by the series dump format.
std::string frac_str(const Rat& q);

bool is_integer(const Rat& q);
Int floor_int(const Rat& q);
Int ceil_int(const Rat& q);
i64 to_i64(const Int& z);

// Integer exponent; e < 0 requires base != 0.
Rat pow_rat(const Rat& base, i64 e);
Int pow_int(const Int& base, unsigned long e);

}  // namespace dtwall
