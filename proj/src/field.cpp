#include "reflexa/field.hpp"

#include <cctype>
#include <charconv>

namespace reflexa {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p > (1u << 31) || !is_prime_number(p))
    throw ParseError("field characteristic " + std::to_string(p) +
                     " is not a prime <= 2^31");
  return Field(Kind::prime, p);
}

std::string Field::name() const {
  return is_rational() ? "Q" : "F" + std::to_string(p_);
}

Field Field::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '(' &&
        c != ')')
      t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (t == "Q" || t == "QQ") return rational();
  std::string_view digits;
  if (t.rfind("GF", 0) == 0)
    digits = std::string_view(t).substr(2);
  else if (t.rfind("F", 0) == 0)
    digits = std::string_view(t).substr(1);
  else
    throw ParseError("unknown field '" + std::string(text) + "'");
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || p > (1ull << 31))
    throw ParseError("unknown field '" + std::string(text) + "'");
  return prime(static_cast<std::uint32_t>(p));
}

namespace {

std::uint32_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime.
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar::Scalar(Field k, long value) : field_(k) {
  if (k.is_rational()) {
    q_ = value;
  } else {
    long r = value % static_cast<long>(k.characteristic());
    if (r < 0) r += k.characteristic();
    v_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(Field k, const mpq_class& q) : field_(k) {
  if (k.is_rational()) {
    q_ = q;
    q_.canonicalize();
  } else {
    std::uint32_t den = reduce_mod(q.get_den(), k.characteristic());
    if (den == 0) throw ParseError("denominator vanishes in " + k.name());
    v_ = static_cast<std::uint32_t>(
        std::uint64_t(reduce_mod(q.get_num(), k.characteristic())) *
        inv_mod(den, k.characteristic()) % k.characteristic());
  }
}

Scalar Scalar::parse(Field k, std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed field element '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Scalar(k, mpq_class(n, d));
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : v_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : v_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r(field_);
  if (field_.is_rational())
    r.q_ = q_ + o.q_;
  else
    r.v_ = static_cast<std::uint32_t>((std::uint64_t(v_) + o.v_) % field_.characteristic());
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r(field_);
  if (field_.is_rational())
    r.q_ = q_ * o.q_;
  else
    r.v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % field_.characteristic());
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (field_.is_rational())
    r.q_ = -q_;
  else
    r.v_ = v_ == 0 ? 0 : field_.characteristic() - v_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DimensionMismatch("inverse of zero");
  Scalar r(field_);
  if (field_.is_rational())
    r.q_ = 1 / q_;
  else
    r.v_ = inv_mod(v_, field_.characteristic());
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  return field_ == o.field_ && (field_.is_rational() ? q_ == o.q_ : v_ == o.v_);
}

std::string Scalar::to_string() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(v_);
}

}  // namespace reflexa
