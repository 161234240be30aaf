#include "iwastat/iwasawa.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace iwastat {

int valuation(const BigInt& x, u64 p) {
  if (x == 0) throw Error(ErrorCode::kInvalidArgument, "valuation of zero");
  BigInt q = x;
  const BigInt bp = p;
  int v = 0;
  for (;;) {
    BigInt quotient, remainder;
    boost::multiprecision::divide_qr(q, bp, quotient, remainder);
    if (remainder != 0) return v;
    q = std::move(quotient);
    ++v;
  }
}

CharPoly::CharPoly(u64 p, std::vector<BigInt> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::kInvalidPrime, std::to_string(p) + " is not an odd prime");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw Error(ErrorCode::kZeroPolynomial, "characteristic element is zero");
}

CharPoly CharPoly::parse(u64 p, std::string_view csv) {
  std::vector<BigInt> coeffs;
  std::string field;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, field, ',')) {
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorCode::kParseError, "empty coefficient");
    field = field.substr(first, last - first + 1);
    const std::size_t digits_from = (field[0] == '-' || field[0] == '+') ? 1 : 0;
    if (digits_from == field.size() ||
        field.find_first_not_of("0123456789", digits_from) != std::string::npos) {
      throw Error(ErrorCode::kParseError, "not an integer: '" + field + "'");
    }
    coeffs.emplace_back(field[0] == '+' ? field.substr(1) : field);
  }
  return CharPoly(p, std::move(coeffs));
}

CharPoly operator*(const CharPoly& f, const CharPoly& g) {
  if (f.p_ != g.p_) throw Error(ErrorCode::kInvalidArgument, "primes differ");
  std::vector<BigInt> out(f.coeffs_.size() + g.coeffs_.size() - 1);
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
    if (f.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) out[i + j] += f.coeffs_[i] * g.coeffs_[j];
  }
  return CharPoly(f.p_, std::move(out));
}

IwasawaInvariants iwasawa_invariants(const CharPoly& f) {
  IwasawaInvariants out{std::numeric_limits<int>::max(), 0};
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const int v = valuation(c[i], f.prime());
    if (v < out.mu) {
      out.mu = v;
      out.lambda = static_cast<int>(i);
    }
  }
  return out;
}

int vanishing_order(const CharPoly& f) {
  const auto& c = f.coeffs();
  int r = 0;
  while (c[r] == 0) ++r;
  return r;
}

int truncated_chi_valuation(const CharPoly& f) {
  return valuation(f.coeffs()[vanishing_order(f)], f.prime());
}

bool is_trivial_shape(const CharPoly& f, int r_expected) {
  if (r_expected < 0) throw Error(ErrorCode::kInvalidArgument, "negative vanishing order");
  const auto inv = iwasawa_invariants(f);
  const bool shape = inv.mu == 0 && inv.lambda == r_expected;
  // When r is the order of vanishing the shape is decided by the unit-ness of the first nonzero coefficient.
  if (r_expected == vanishing_order(f) && shape != (truncated_chi_valuation(f) == 0)) {
    throw std::logic_error("trivial-shape characterizations disagree");
  }
  return shape;
}

}  // namespace iwastat
