// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmp.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace incomedist {

// Thin RAII wrapper over GMP integers, restricted to what multiplicity
// counting needs: factorials, binomials, powers, products, decimal output.
class BigInt {
 public:
  BigInt() { mpz_init_set_ui(v_, 0); }
  explicit BigInt(unsigned long u) { mpz_init_set_ui(v_, u); }
  BigInt(const BigInt& o) { mpz_init_set(v_, o.v_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(v_);
    mpz_swap(v_, o.v_);
  }
  BigInt& operator=(BigInt o) noexcept {
    mpz_swap(v_, o.v_);
    return *this;
  }
  ~BigInt() { mpz_clear(v_); }

  static BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.v_, n);
    return r;
  }
  static BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.v_, n, k);
    return r;
  }
  static BigInt pow(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.v_, base, exp);
    return r;
  }

  BigInt& operator*=(const BigInt& o) {
    mpz_mul(v_, v_, o.v_);
    return *this;
  }
  BigInt& operator+=(unsigned long u) {
    mpz_add_ui(v_, v_, u);
    return *this;
  }
  BigInt& mul_ui(unsigned long u) {
    mpz_mul_ui(v_, v_, u);
    return *this;
  }
  // Exact division; caller guarantees divisibility (multinomials are integers).
  BigInt& divexact(const BigInt& o) {
    mpz_divexact(v_, v_, o.v_);
    return *this;
  }

  bool operator==(const BigInt& o) const { return mpz_cmp(v_, o.v_) == 0; }
  bool operator==(unsigned long u) const { return mpz_cmp_ui(v_, u) == 0; }

  std::string str() const {
    // +2: sign and NUL.
    std::string buf(mpz_sizeinbase(v_, 10) + 2, '\0');
    mpz_get_str(buf.data(), 10, v_);
    buf.resize(std::char_traits<char>::length(buf.c_str()));
    return buf;
  }

  // Natural log; exact to double rounding even when the value itself
  // overflows double range.
  double log() const {
    long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, v_);
    return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
  }

 private:
  mpz_t v_;
};

}  // namespace incomedist
