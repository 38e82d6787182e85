#include "dtwall/rational.hpp"

#include <stdexcept>

namespace dtwall {

Rat rat(i64 num, i64 den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q{Int(num), Int(den)};
  q.canonicalize();
  return q;
}

std::optional<Rat> parse_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto digits = [](const std::string& t, size_t from) {
    if (from >= t.size()) return false;
    for (size_t i = from; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  if (num.empty()) return std::nullopt;
  size_t start = (num[0] == '-' || num[0] == '+') ? 1 : 0;
  if (!digits(num, start)) return std::nullopt;
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    if (!digits(den, 0)) return std::nullopt;
    Int d(den, 10);
    if (d == 0) return std::nullopt;
  }
  Rat q;
  if (q.set_str(s, 10) != 0) return std::nullopt;
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::string frac_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Int floor_int(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

Int ceil_int(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

i64 to_i64(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("to_i64: " + z.get_str());
  return z.get_si();
}

Rat pow_rat(const Rat& base, i64 e) {
  if (e == 0) return 1;
  if (base == 0 && e < 0) throw std::invalid_argument("pow_rat: 0 to negative power");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rat out(pow_int(base.get_num(), a), pow_int(base.get_den(), a));
  out.canonicalize();
  if (e < 0) return Rat(1) / out;
  return out;
}

Int pow_int(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace dtwall
