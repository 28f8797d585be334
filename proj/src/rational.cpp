#include "consensus/rational.hpp"

#include <charconv>
#include <regex>

#include "consensus/errors.hpp"

namespace consensus {

  namespace {
    mpz_class pow10(unsigned long e) {
      mpz_class r;
      mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
      return r;
    }

    bool parse_integer(std::string const& s, mpz_class& out) {
      // mpz accepts leading '+' only through our own handling.
      std::string body = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
      return out.set_str(body, 10) == 0;
    }
  }  // namespace

  Rational::Rational(mpz_class const& num, mpz_class const& den) {
    if (den == 0) {
      throw InvalidArgument("rational with zero denominator");
    }
    _value = mpq_class(num, den);
    _value.canonicalize();
  }

  Rational::Rational(mpq_class value) : _value(std::move(value)) {
    _value.canonicalize();
  }

  Rational Rational::parse(std::string_view text) {
    static std::regex const fraction(R"(([+-]?\d+)\s*/\s*(\d+))");
    static std::regex const decimal(
        R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");

    std::string s(text);
    // trim
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    s      = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);

    std::smatch m;
    if (std::regex_match(s, m, fraction)) {
      mpz_class num, den;
      if (!parse_integer(m[1].str(), num) || !parse_integer(m[2].str(), den)) {
        throw InvalidArgument("malformed rational '" + s + "'");
      }
      return Rational(num, den);
    }
    if (std::regex_match(s, m, decimal)
        && (m[2].length() > 0 || m[3].length() > 0)) {
      std::string digits = m[2].str() + m[3].str();
      mpz_class   mantissa;
      if (!parse_integer(digits, mantissa)) {
        throw InvalidArgument("malformed decimal '" + s + "'");
      }
      if (m[1].str() == "-") {
        mantissa = -mantissa;
      }
      long exponent = -static_cast<long>(m[3].length());
      if (m[4].matched) {
        long        extra = 0;
        std::string ex    = m[4].str();
        char const* first = ex.data() + (ex[0] == '+' ? 1 : 0);
        auto [ptr, ec]    = std::from_chars(first, ex.data() + ex.size(), extra);
        if (ec != std::errc() || extra > 100000 || extra < -100000) {
          throw InvalidArgument("decimal exponent out of range in '" + s
                                + "'");
        }
        exponent += extra;
      }
      if (exponent >= 0) {
        return Rational(mantissa * pow10(static_cast<unsigned long>(exponent)),
                        mpz_class(1));
      }
      return Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    }
    throw InvalidArgument("malformed rational '" + s + "'");
  }

  std::size_t Rational::bit_size() const {
    return mpz_sizeinbase(_value.get_num_mpz_t(), 2)
           + mpz_sizeinbase(_value.get_den_mpz_t(), 2);
  }

  std::string Rational::to_string() const {
    if (_value.get_den() == 1) {
      return _value.get_num().get_str();
    }
    return _value.get_num().get_str() + "/" + _value.get_den().get_str();
  }

  Rational& Rational::operator/=(Rational const& o) {
    if (o._value == 0) {
      throw InvalidArgument("division by zero rational");
    }
    _value /= o._value;
    return *this;
  }

  Rational abs(Rational const& r) {
    return r.sign() < 0 ? -r : r;
  }

}  // namespace consensus
