// Tate's algorithm over Z_(l), following the classical formulation with
// integral (r, s, t) translations and rescaling when the model is not minimal.

#include <array>
#include <vector>

#include "iwastat/local.hpp"

namespace iwastat {
namespace {

i128 mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::kOverflow, "local algorithm");
  return out;
}

i128 add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::kOverflow, "local algorithm");
  return out;
}

i128 sub(i128 a, i128 b) {
  i128 out;
  if (__builtin_sub_overflow(a, b, &out)) throw Error(ErrorCode::kOverflow, "local algorithm");
  return out;
}

struct Model {
  i128 a1, a2, a3, a4, a6;

  i128 b2() const { return add(mul(a1, a1), mul(4, a2)); }
  i128 b4() const { return add(mul(2, a4), mul(a1, a3)); }
  i128 b6() const { return add(mul(a3, a3), mul(4, a6)); }
  i128 b8() const {
    const i128 a1sq = mul(a1, a1);
    i128 v = mul(a1sq, a6);
    v = add(v, mul(mul(4, a2), a6));
    v = sub(v, mul(mul(a1, a3), a4));
    v = add(v, mul(a2, mul(a3, a3)));
    return sub(v, mul(a4, a4));
  }
  i128 c4() const { return sub(mul(b2(), b2()), mul(24, b4())); }
  i128 c6() const {
    const i128 x2 = b2(), x4 = b4(), x6 = b6();
    return sub(add(-mul(mul(x2, x2), x2), mul(mul(36, x2), x4)), mul(216, x6));
  }
  i128 discriminant() const {
    const i128 x2 = b2(), x4 = b4(), x6 = b6(), x8 = b8();
    i128 d = -mul(mul(x2, x2), x8);
    d = sub(d, mul(8, mul(mul(x4, x4), x4)));
    d = sub(d, mul(27, mul(x6, x6)));
    return add(d, mul(9, mul(mul(x2, x4), x6)));
  }

  void rst(i128 r, i128 s, i128 t) {
    const i128 n1 = add(a1, mul(2, s));
    const i128 n2 = sub(add(sub(a2, mul(s, a1)), mul(3, r)), mul(s, s));
    const i128 n3 = add(add(a3, mul(r, a1)), mul(2, t));
    i128 n4 = sub(a4, mul(s, a3));
    n4 = add(n4, mul(mul(2, r), a2));
    n4 = sub(n4, mul(add(t, mul(r, s)), a1));
    n4 = add(n4, mul(3, mul(r, r)));
    n4 = sub(n4, mul(mul(2, s), t));
    i128 n6 = add(a6, mul(r, a4));
    n6 = add(n6, mul(mul(r, r), a2));
    n6 = add(n6, mul(mul(r, r), r));
    n6 = sub(n6, mul(t, a3));
    n6 = sub(n6, mul(t, t));
    n6 = sub(n6, mul(mul(r, t), a1));
    a1 = n1;
    a2 = n2;
    a3 = n3;
    a4 = n4;
    a6 = n6;
  }
};

class Local {
 public:
  explicit Local(u64 l) : l_(l), pi_(static_cast<i128>(l)) {}

  i128 pi() const { return pi_; }
  int val(i128 x) const { return x == 0 ? 1 << 20 : valuation(x, l_); }
  bool divides(i128 x) const { return x % pi_ == 0; }
  i128 reduce(i128 x) const { return static_cast<i128>(mod(x, l_)); }
  i128 inv(i128 x) const { return static_cast<i128>(invmod(mod(x, l_), l_)); }
  i128 half() const { return inv(2); }
  // Product of two residues, reduced.
  i128 mulr(i128 x, i128 y) const { return static_cast<i128>(mulmod(mod(x, l_), mod(y, l_), l_)); }

  // Some y with y^e = x in F_l; only called for (l, e) in {(2, 2), (3, 3)},
  // where every residue has a root.
  i128 root(i128 x, int e) const {
    const u64 target = mod(x, l_);
    for (u64 y = 0; y < l_; ++y) {
      if (powmod(y, static_cast<u64>(e), l_) == target) return static_cast<i128>(y);
    }
    throw std::logic_error("residue has no root");
  }

  bool quadratic_has_root(i128 a, i128 b, i128 c) const {
    const u64 ra = mod(a, l_), rb = mod(b, l_), rc = mod(c, l_);
    if (ra == 0) return rb != 0 || rc == 0;
    if (l_ == 2) {
      for (u64 x = 0; x < 2; ++x) {
        if ((ra * x * x + rb * x + rc) % 2 == 0) return true;
      }
      return false;
    }
    const i128 disc = sub(mul(static_cast<i128>(rb), static_cast<i128>(rb)),
                          mul(4, mul(static_cast<i128>(ra), static_cast<i128>(rc))));
    return legendre(static_cast<i64>(mod(disc, l_)), l_) >= 0;
  }

  // Distinct roots of x^3 + b x^2 + c x + d in F_l.
  int cubic_root_count(i128 b, i128 c, i128 d) const {
    const u64 rb = mod(b, l_), rc = mod(c, l_), rd = mod(d, l_);
    if (l_ < 5000) {
      int count = 0;
      for (u64 x = 0; x < l_; ++x) {
        const u64 v = (mulmod(mulmod(x, x, l_), (x + rb) % l_, l_) + mulmod(rc, x, l_) + rd) % l_;
        if (v == 0) ++count;
      }
      return count;
    }
    return distinct_roots_large(rb, rc, rd);
  }

 private:
  using Poly = std::vector<u64>;  // coefficient i of x^i

  void trim(Poly& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  Poly poly_mod(Poly f, const Poly& g) const {
    trim(f);
    const u64 lead_inv = invmod(g.back(), l_);
    while (f.size() >= g.size()) {
      const u64 coef = mulmod(f.back(), lead_inv, l_);
      const std::size_t shift = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) {
        f[shift + i] = (f[shift + i] + l_ - mulmod(coef, g[i], l_)) % l_;
      }
      trim(f);
    }
    return f;
  }

  Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g) const {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        out[i + j] = (out[i + j] + mulmod(a[i], b[j], l_)) % l_;
      }
    }
    return poly_mod(out, g);
  }

  // deg gcd(x^l - x, f) for the monic cubic f.
  int distinct_roots_large(u64 b, u64 c, u64 d) const {
    const Poly f{d, c, b, 1};
    Poly result{1}, base{0, 1};
    for (u64 e = l_; e > 0; e >>= 1) {
      if (e & 1) result = poly_mulmod(result, base, f);
      base = poly_mulmod(base, base, f);
    }
    result.resize(std::max<std::size_t>(result.size(), 2), 0);
    result[1] = (result[1] + l_ - 1) % l_;
    trim(result);
    Poly a = f, r = result;
    while (!r.empty()) {
      Poly next = poly_mod(a, r);
      a = r;
      r = next;
    }
    return static_cast<int>(a.size()) - 1;
  }

  u64 l_;
  i128 pi_;
};

}  // namespace

KodairaData tate_algorithm(i128 a1, i128 a2, i128 a3, i128 a4, i128 a6, u64 l) {
  if (!is_prime(l)) throw Error(ErrorCode::kInvalidPrime, std::to_string(l) + " is not prime");
  const Local k(l);
  const i128 pi = k.pi(), pi2 = mul(pi, pi), pi3 = mul(pi2, pi), pi4 = mul(pi3, pi);
  const i128 pi6 = mul(pi4, pi2);
  Model m{a1, a2, a3, a4, a6};
  KodairaData out;
  out.prime = l;

  for (;;) {
    const int vd = k.val(m.discriminant());
    if (vd == 0) {
      out.symbol = {KodairaType::kI0, 0};
      out.tamagawa = 1;
      return out;
    }

    // Move the singular point to (0, 0) mod l.
    i128 r = 0, t = 0;
    if (l == 2) {
      if (k.divides(m.b2())) {
        r = k.root(m.a4, 2);
        t = k.root(add(mul(add(mul(add(r, m.a2), r), m.a4), r), m.a6), 2);
      } else {
        const i128 inv_a1 = k.inv(m.a1);
        r = mul(inv_a1, m.a3);
        t = mul(inv_a1, add(m.a4, mul(r, r)));
      }
    } else if (l == 3) {
      r = k.divides(m.b2()) ? k.root(-m.b6(), 3) : mul(-k.inv(m.b2()), k.reduce(m.b4()));
      t = add(mul(m.a1, r), m.a3);
    } else {
      const i128 c4 = m.c4();
      if (k.divides(c4)) {
        r = mul(-k.inv(12), k.reduce(m.b2()));
      } else {
        r = mul(-k.inv(mul(12, k.reduce(c4))), k.reduce(add(m.c6(), mul(m.b2(), c4))));
      }
      t = mul(-k.half(), k.reduce(add(mul(m.a1, k.reduce(r)), m.a3)));
    }
    m.rst(k.reduce(r), 0, k.reduce(t));

    if (!k.divides(m.c4())) {
      out.symbol = {KodairaType::kIn, vd};
      const bool split = k.quadratic_has_root(1, m.a1, -m.a2);
      out.split = split;
      out.tamagawa = split ? vd : (vd % 2 == 0 ? 2 : 1);
      return out;
    }
    if (k.val(m.a6) < 2) {
      out.symbol = {KodairaType::kII, 0};
      out.tamagawa = 1;
      return out;
    }
    if (k.val(m.b8()) < 3) {
      out.symbol = {KodairaType::kIII, 0};
      out.tamagawa = 2;
      return out;
    }
    if (k.val(m.b6()) < 3) {
      out.symbol = {KodairaType::kIV, 0};
      out.tamagawa = k.quadratic_has_root(1, m.a3 / pi, -(m.a6 / pi2)) ? 3 : 1;
      return out;
    }

    // Arrange l | a1, a2; l^2 | a3, a4; l^3 | a6.
    i128 s = 0;
    if (l == 2) {
      s = k.root(m.a2, 2);
      t = mul(pi, k.root(m.a6 / pi2, 2));
    } else if (l == 3) {
      s = m.a1;
      t = m.a3;
    } else {
      s = mul(-m.a1, k.half());
      t = mul(-m.a3, k.half());
    }
    m.rst(0, s, t);

    const i128 b = k.reduce(m.a2 / pi), c = k.reduce(m.a4 / pi2), d = k.reduce(m.a6 / pi3);
    const i128 bb = k.mulr(b, b), cc = k.mulr(c, c), bc = k.mulr(b, c);
    const i128 w = k.reduce(27 * k.mulr(d, d) - k.mulr(bb, cc) + 4 * k.mulr(k.mulr(b, bb), d) -
                            18 * k.mulr(bc, d) + 4 * k.mulr(c, cc));
    const i128 x = k.reduce(3 * c - bb);
    const int shape = k.divides(w) ? (k.divides(x) ? 3 : 2) : 1;

    if (shape == 1) {
      out.symbol = {KodairaType::kI0Star, 0};
      out.tamagawa = 1 + k.cubic_root_count(b, c, d);
      return out;
    }

    if (shape == 2) {
      // Double root: move it to T = 0, then peel off the chain.
      if (l == 2) {
        r = k.root(c, 2);
      } else if (l == 3) {
        r = mul(c, k.inv(b));
      } else {
        r = k.mulr(k.reduce(bc - 9 * d), k.inv(2 * x));
      }
      m.rst(mul(pi, k.reduce(r)), 0, 0);
      int ix = 3, iy = 3;
      i128 mx = pi2, my = pi2;
      for (;;) {
        i128 a2t = m.a2 / pi;
        i128 a3t = m.a3 / my;
        i128 a4t = m.a4 / mul(pi, mx);
        i128 a6t = m.a6 / mul(mx, my);
        if (k.divides(add(mul(a3t, a3t), mul(4, a6t)))) {
          t = l == 2 ? mul(my, k.root(a6t, 2)) : mul(my, k.reduce(mul(-a3t, k.half())));
          m.rst(0, 0, t);
          my = mul(my, pi);
          ++iy;
          a2t = m.a2 / pi;
          a3t = m.a3 / my;
          a4t = m.a4 / mul(pi, mx);
          a6t = m.a6 / mul(mx, my);
          if (k.divides(sub(mul(a4t, a4t), mul(mul(4, a6t), a2t)))) {
            r = l == 2 ? mul(mx, k.root(mul(a6t, k.inv(a2t)), 2))
                       : mul(mx, k.reduce(mul(-a4t, k.inv(mul(2, a2t)))));
            m.rst(r, 0, 0);
            mx = mul(mx, pi);
            ++ix;
          } else {
            out.tamagawa = k.quadratic_has_root(a2t, a4t, a6t) ? 4 : 2;
            break;
          }
        } else {
          out.tamagawa = k.quadratic_has_root(1, a3t, -a6t) ? 4 : 2;
          break;
        }
      }
      out.symbol = {KodairaType::kInStar, ix + iy - 5};
      return out;
    }

    // Triple root: move it to T = 0.
    if (l == 2) {
      r = b;
    } else if (l == 3) {
      r = k.root(-d, 3);
    } else {
      r = mul(-b, k.inv(3));
    }
    m.rst(mul(pi, k.reduce(r)), 0, 0);
    i128 a3t = m.a3 / pi2;
    i128 a6t = m.a6 / pi4;
    if (!k.divides(add(mul(a3t, a3t), mul(4, a6t)))) {
      out.symbol = {KodairaType::kIVStar, 0};
      out.tamagawa = k.quadratic_has_root(1, a3t, -a6t) ? 3 : 1;
      return out;
    }
    t = l == 2 ? mul(-pi2, k.root(a6t, 2)) : mul(pi2, k.reduce(mul(-a3t, k.half())));
    m.rst(0, 0, t);
    if (k.val(m.a4) < 4) {
      out.symbol = {KodairaType::kIIIStar, 0};
      out.tamagawa = 2;
      return out;
    }
    if (k.val(m.a6) < 6) {
      out.symbol = {KodairaType::kIIStar, 0};
      out.tamagawa = 1;
      return out;
    }
    // Not minimal: rescale and start over.
    m = Model{m.a1 / pi, m.a2 / pi2, m.a3 / pi3, m.a4 / pi4, m.a6 / pi6};
  }
}

}  // namespace iwastat

namespace iwastat {

int cubic_root_count(i128 b, i128 c, i128 d, u64 l) { return Local(l).cubic_root_count(b, c, d); }

}  // namespace iwastat
