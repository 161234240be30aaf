#pragma once

// mu/lambda invariants of characteristic elements given as exact integer
// polynomials in T. Everything is read off the p-adic valuation profile of
// the coefficients; no factorization is performed.

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "iwastat/arith.hpp"

namespace iwastat {

using BigInt = boost::multiprecision::cpp_int;

// v_p(x) for x != 0.
int valuation(const BigInt& x, u64 p);

class CharPoly {
 public:
  // coeffs[i] is the coefficient of T^i. Trailing zeros are dropped.
  // Throws kInvalidPrime for p not an odd prime, kZeroPolynomial when every
  // coefficient vanishes.
  CharPoly(u64 p, std::vector<BigInt> coeffs);

  // Comma-separated integers, constant term first ("25,5" is 25 + 5T).
  static CharPoly parse(u64 p, std::string_view csv);

  u64 prime() const noexcept { return p_; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  friend CharPoly operator*(const CharPoly& f, const CharPoly& g);
  friend bool operator==(const CharPoly&, const CharPoly&) = default;

 private:
  u64 p_;
  std::vector<BigInt> coeffs_;
};

struct IwasawaInvariants {
  int mu = 0;
  int lambda = 0;

  friend bool operator==(const IwasawaInvariants&, const IwasawaInvariants&) = default;
};

// mu = min_i v_p(c_i); lambda = least i attaining it.
IwasawaInvariants iwasawa_invariants(const CharPoly& f);

// Least i with c_i != 0.
int vanishing_order(const CharPoly& f);

// v_p(c_r) with r the vanishing order; this is v_p of the truncated Euler
// characteristic.
int truncated_chi_valuation(const CharPoly& f);

// mu = 0 and lambda = r_expected.
bool is_trivial_shape(const CharPoly& f, int r_expected);

}  // namespace iwastat
