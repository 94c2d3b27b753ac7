#ifndef PROPSIZE_RATIONAL_HPP
#define PROPSIZE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace propsize {

using Int = mpz_class;
using Index = std::int64_t;

// Exact rational number in lowest terms with positive denominator.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long v) : q_(v) {}  // NOLINT: implicit on purpose
  Rat(const Int& v) : q_(v) {}
  Rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw std::invalid_argument("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Int floor() const {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), mpq_numref(q_.get_mpq_t()), mpq_denref(q_.get_mpq_t()));
    return r;
  }
  Int ceil() const {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), mpq_numref(q_.get_mpq_t()), mpq_denref(q_.get_mpq_t()));
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.sign() == 0) throw std::invalid_argument("Rat: division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
  }
  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) >= 0; }

  // Accepts "p/q" with integer p, q (q != 0) or a finite decimal like "0.05"
  // or "-12.5"; plain integers parse as q = 1.  Anything else throws.
  static Rat parse(std::string_view s) {
    auto fail = [&] { throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'"); };
    std::string_view rest = s;
    bool neg = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
      neg = rest.front() == '-';
      rest.remove_prefix(1);
    }
    auto digits = [](std::string_view t) {
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    Rat out;
    if (auto pos = rest.find('/'); pos != std::string_view::npos) {
      std::string_view p = rest.substr(0, pos), q = rest.substr(pos + 1);
      if (!digits(p) || !digits(q)) fail();
      Int den{std::string(q)};
      if (den == 0) fail();
      out = Rat(Int{std::string(p)}, den);
    } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
      std::string_view ip = rest.substr(0, dot), fp = rest.substr(dot + 1);
      if (!digits(ip) || !digits(fp)) fail();
      Int scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
      out = Rat(Int{std::string(ip)} * scale + Int{std::string(fp)}, scale);
    } else {
      if (!digits(rest)) fail();
      out = Rat(Int{std::string(rest)});
    }
    return neg ? -out : out;
  }

  // Canonical "p/q" form, denominator always present.
  std::string to_fraction() const {
    return num().get_str() + "/" + den().get_str();
  }

  // Decimal rendering for display only; never parsed back.
  std::string to_decimal(int sig_digits = 12) const {
    mpf_class f(q_, 64 + 4 * static_cast<unsigned>(sig_digits));
    char buf[128];
    gmp_snprintf(buf, sizeof buf, "%.*Fg", sig_digits, f.get_mpf_t());
    return buf;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.to_fraction();
  }

 private:
  mpq_class q_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace propsize

#endif
