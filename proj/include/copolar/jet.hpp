#pragma once

// Truncated multivariate Taylor polynomials ("jets") of degree <= 3 in up to
// four variables. Analytic families evaluate their radial functions on jets,
// which yields exact chart derivatives up to third order without finite
// differences.

#include <array>
#include <span>
#include <vector>

namespace copolar {

inline constexpr int kMaxJetVars = 4;
inline constexpr int kMaxJetOrder = 3;
inline constexpr int kMaxJetTerms = 35;  // C(4 + 3, 3)

class Jet {
 public:
  Jet() = default;

  static Jet constant(int nvars, double value, int order = kMaxJetOrder);
  static Jet variable(int nvars, int index, double value, int order = kMaxJetOrder);

  int vars() const noexcept { return nvars_; }
  /// Highest degree whose coefficients are exact.
  int order() const noexcept { return order_; }

  double value() const noexcept { return c_[0]; }
  double d(int i) const;
  double d2(int i, int j) const;
  double d3(int i, int j, int k) const;

  /// Partial derivative; the result is exact to one degree less.
  Jet partial(int i) const;

  /// Sets the Taylor data from derivative values (used to load finite-difference
  /// estimates). `hess` and `third` may be empty when `order` is lower.
  static Jet from_derivatives(int nvars, int order, double value, std::span<const double> grad,
                              std::span<const double> hess, std::span<const double> third);

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  Jet operator-() const;
  /// Taylor data of t -> f(s t) from that of f.
  Jet scale_variables(double s) const;

  /// f(a) from the derivatives f(a0), f'(a0), f''(a0), f'''(a0).
  Jet compose(double f0, double f1, double f2, double f3) const;

 private:
  void check_compatible(const Jet& o) const;

  std::array<double, kMaxJetTerms> c_{};
  int nvars_ = 0;
  int order_ = kMaxJetOrder;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(double s, const Jet& a) { return (-a) += s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(double s, const Jet& a);

Jet sqrt(const Jet& a);
Jet cbrt(const Jet& a);
Jet pow(const Jet& a, double p);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet abs(const Jet& a);

using JetVec = std::vector<Jet>;

Jet dot(std::span<const Jet> a, std::span<const Jet> b);

}  // namespace copolar
