#include "plam/dyadic.hpp"

#include <stdexcept>

namespace plam {

Dyadic::Dyadic(mpz_class num, unsigned exp) : num_(std::move(num)), exp_(exp) { normalize(); }

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
  mp_bitcnt_t drop = tz < exp_ ? tz : exp_;
  if (drop > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
    exp_ -= static_cast<unsigned>(drop);
  }
}

Dyadic Dyadic::parse(std::string_view text) {
  auto fail = [&]() -> Dyadic {
    throw std::invalid_argument("not a dyadic rational: '" + std::string(text) + "'");
  };
  auto slash = text.find('/');
  std::string numText(text.substr(0, slash));
  if (numText.empty() || numText.find_first_not_of("0123456789") != std::string::npos) fail();
  mpz_class num(numText);
  if (slash == std::string_view::npos) return Dyadic(num, 0);
  std::string denText(text.substr(slash + 1));
  if (denText.empty() || denText.find_first_not_of("0123456789") != std::string::npos) fail();
  mpz_class den(denText);
  if (den <= 0) fail();
  // A denominator must be a power of two once the fraction is reduced.
  mpq_class q(num, den);
  q.canonicalize();
  const mpz_class& d = q.get_den();
  mp_bitcnt_t e = mpz_scan1(d.get_mpz_t(), 0);
  if (mpz_popcount(d.get_mpz_t()) != 1) fail();
  return Dyadic(q.get_num(), static_cast<unsigned>(e));
}

mpq_class Dyadic::toRational() const {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  mpq_class q(num_, den);
  q.canonicalize();
  return q;
}

std::string Dyadic::toString() const {
  if (exp_ == 0) return num_.get_str();
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  return num_.get_str() + "/" + den.get_str();
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (exp_ >= o.exp_) {
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), o.num_.get_mpz_t(), exp_ - o.exp_);
    num_ += t;
  } else {
    mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(), o.exp_ - exp_);
    num_ += o.num_;
    exp_ = o.exp_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) {
  Dyadic neg(-o.num_, o.exp_);
  return *this += neg;
}

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  mpz_class l = a.num_;
  mpz_class r = b.num_;
  if (a.exp_ < b.exp_) {
    mpz_mul_2exp(l.get_mpz_t(), l.get_mpz_t(), b.exp_ - a.exp_);
  } else {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), a.exp_ - b.exp_);
  }
  int c = cmp(l, r);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace plam
