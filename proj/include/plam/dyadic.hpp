// Exact dyadic rationals num / 2^exp in lowest terms.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace plam {

class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long n) : num_(n) {}  // NOLINT(google-explicit-constructor): integers are dyadic
  Dyadic(mpz_class num, unsigned exp);

  static Dyadic half() { return Dyadic(1, 1); }
  static Dyadic pow2inv(unsigned exp) { return Dyadic(1, exp); }
  // Parses "0", "1", "3/8"; throws std::invalid_argument on anything not dyadic.
  static Dyadic parse(std::string_view text);

  const mpz_class& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  bool isZero() const { return num_ == 0; }
  mpq_class toRational() const;
  std::string toString() const;

  Dyadic halved() const { return Dyadic(num_, exp_ + 1); }

  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator*=(const Dyadic& o);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  mpz_class num_ = 0;
  unsigned exp_ = 0;
};

}  // namespace plam
