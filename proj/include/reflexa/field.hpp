#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <string_view>

#include "reflexa/error.hpp"

namespace reflexa {

// Base field of every computation: a prime field F_p (p < 2^31) or the
// rationals. All arithmetic is exact.
class Field {
 public:
  enum class Kind { prime, rational };

  static Field prime(std::uint32_t p);
  static Field rational() { return Field(Kind::rational, 0); }

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::prime; }
  bool is_rational() const { return kind_ == Kind::rational; }
  // 0 for Q.
  std::uint32_t characteristic() const { return p_; }

  std::string name() const;
  // Accepts "Q", "F2", "F_7", "GF(5)".
  static Field parse(std::string_view text);

  bool operator==(const Field&) const = default;

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

bool is_prime_number(std::uint64_t n);

// A single field element. Canonical: 0 <= v < p, or a reduced fraction.
class Scalar {
 public:
  explicit Scalar(Field k) : field_(k) {}
  Scalar(Field k, long value);
  Scalar(Field k, const mpq_class& q);
  // "3", "-2", "2/5"; throws ParseError on malformed text or zero
  // denominators (and on denominators divisible by p).
  static Scalar parse(Field k, std::string_view text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  std::uint32_t residue() const { return v_; }
  const mpq_class& rational() const { return q_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;

  std::string to_string() const;

 private:
  Field field_;
  std::uint32_t v_ = 0;
  mpq_class q_;
};

}  // namespace reflexa
