#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace consensus {

  // Arbitrary-precision rational, always in lowest terms with a positive
  // denominator, so equality is structural.
  class Rational {
   public:
    Rational() = default;
    Rational(long value) : _value(value) {}  // NOLINT(runtime/explicit)
    Rational(mpz_class const& num, mpz_class const& den);
    explicit Rational(mpq_class value);

    // Accepts "p", "p/q" and finite decimals "d.ddd" (optionally signed,
    // optionally with an exponent "e-3").  Decimals convert exactly.
    // Throws InvalidArgument on anything else, including q = 0.
    static Rational parse(std::string_view text);

    [[nodiscard]] mpz_class numerator() const {
      return _value.get_num();
    }
    [[nodiscard]] mpz_class denominator() const {
      return _value.get_den();
    }
    [[nodiscard]] mpq_class const& value() const noexcept {
      return _value;
    }

    [[nodiscard]] int    sign() const noexcept {
      return sgn(_value);
    }
    [[nodiscard]] double to_double() const {
      return _value.get_d();
    }
    // Bits needed for numerator plus denominator.
    [[nodiscard]] std::size_t bit_size() const;
    // "p" for integers, otherwise "p/q".
    [[nodiscard]] std::string to_string() const;

    Rational& operator+=(Rational const& o) {
      _value += o._value;
      return *this;
    }
    Rational& operator-=(Rational const& o) {
      _value -= o._value;
      return *this;
    }
    Rational& operator*=(Rational const& o) {
      _value *= o._value;
      return *this;
    }
    Rational& operator/=(Rational const& o);

    friend Rational operator+(Rational a, Rational const& b) {
      return a += b;
    }
    friend Rational operator-(Rational a, Rational const& b) {
      return a -= b;
    }
    friend Rational operator*(Rational a, Rational const& b) {
      return a *= b;
    }
    friend Rational operator/(Rational a, Rational const& b) {
      return a /= b;
    }
    friend Rational operator-(Rational const& a) {
      return Rational(mpq_class(-a._value));
    }

    friend bool operator==(Rational const& a, Rational const& b) {
      return a._value == b._value;
    }
    friend std::strong_ordering operator<=>(Rational const& a,
                                            Rational const& b) {
      int c = cmp(a._value, b._value);
      return c < 0   ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

   private:
    mpq_class _value;
  };

  Rational abs(Rational const& r);

  inline std::ostream& operator<<(std::ostream& out, Rational const& r) {
    return out << r.to_string();
  }

}  // namespace consensus
