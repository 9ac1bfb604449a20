#include "copolar/jet.hpp"

#include <cmath>
#include <algorithm>

#include "copolar/error.hpp"

namespace copolar {
namespace {

using Exponent = std::array<int, kMaxJetVars>;

struct Product {
  int lhs;
  int rhs;
  int out;
  int degree;
};

struct Table {
  std::vector<Exponent> monomials;
  std::vector<int> degree;
  std::array<int, 256> lookup{};  // base-4 encoding of an exponent -> index
  std::vector<Product> products;  // sorted by degree
};

int encode(const Exponent& e) { return e[0] + 4 * e[1] + 16 * e[2] + 64 * e[3]; }

Table build_table(int nvars) {
  Table t;
  t.lookup.fill(-1);
  for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
    // Graded order; within a degree, enumerate all exponents with that sum.
    Exponent e{};
    auto rec = [&](auto&& self, int var, int remaining) -> void {
      if (var == nvars - 1 || nvars == 0) {
        if (nvars > 0) e[var] = remaining;
        else if (remaining != 0) return;
        t.lookup[encode(e)] = static_cast<int>(t.monomials.size());
        t.monomials.push_back(e);
        t.degree.push_back(deg);
        if (nvars > 0) e[var] = 0;
        return;
      }
      for (int k = remaining; k >= 0; --k) {
        e[var] = k;
        self(self, var + 1, remaining - k);
      }
      e[var] = 0;
    };
    rec(rec, 0, deg);
  }
  const int n = static_cast<int>(t.monomials.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int deg = t.degree[i] + t.degree[j];
      if (deg > kMaxJetOrder) continue;
      Exponent e{};
      for (int v = 0; v < kMaxJetVars; ++v) e[v] = t.monomials[i][v] + t.monomials[j][v];
      t.products.push_back({i, j, t.lookup[encode(e)], deg});
    }
  }
  std::stable_sort(t.products.begin(), t.products.end(),
                   [](const Product& a, const Product& b) { return a.degree < b.degree; });
  return t;
}

const Table& table(int nvars) {
  static const std::array<Table, kMaxJetVars + 1> tables = [] {
    std::array<Table, kMaxJetVars + 1> out;
    for (int v = 0; v <= kMaxJetVars; ++v) out[v] = build_table(v);
    return out;
  }();
  return tables[nvars];
}

int index_of(int nvars, const Exponent& e) {
  const int idx = table(nvars).lookup[encode(e)];
  if (idx < 0) throw Error(ErrorKind::InvalidArgument, "jet monomial out of range");
  return idx;
}

double factorial_weight(const Exponent& e) {
  double w = 1.0;
  for (int k : e) {
    for (int m = 2; m <= k; ++m) w *= m;
  }
  return w;
}

void check_var(int nvars, int i) {
  if (i < 0 || i >= nvars) throw Error(ErrorKind::InvalidArgument, "jet variable index out of range");
}

}  // namespace

Jet Jet::constant(int nvars, double value, int order) {
  if (nvars < 0 || nvars > kMaxJetVars || order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorKind::InvalidArgument, "unsupported jet shape");
  }
  Jet j;
  j.nvars_ = nvars;
  j.order_ = order;
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int nvars, int index, double value, int order) {
  Jet j = constant(nvars, value, order);
  check_var(nvars, index);
  Exponent e{};
  e[index] = 1;
  j.c_[index_of(nvars, e)] = 1.0;
  return j;
}

Jet Jet::from_derivatives(int nvars, int order, double value, std::span<const double> grad,
                          std::span<const double> hess, std::span<const double> third) {
  Jet j = constant(nvars, value, order);
  const Table& t = table(nvars);
  for (std::size_t m = 1; m < t.monomials.size(); ++m) {
    const int deg = t.degree[m];
    if (deg > order) break;
    // Recover the index tuple (i <= j <= k) for this monomial.
    std::array<int, 3> idx{};
    int pos = 0;
    for (int v = 0; v < nvars; ++v) {
      for (int r = 0; r < t.monomials[m][v]; ++r) idx[pos++] = v;
    }
    double deriv = 0.0;
    if (deg == 1) deriv = grad[idx[0]];
    if (deg == 2) deriv = hess[idx[0] * nvars + idx[1]];
    if (deg == 3) deriv = third[(idx[0] * nvars + idx[1]) * nvars + idx[2]];
    j.c_[m] = deriv / factorial_weight(t.monomials[m]);
  }
  return j;
}

double Jet::d(int i) const {
  check_var(nvars_, i);
  Exponent e{};
  e[i] = 1;
  return c_[index_of(nvars_, e)];
}

double Jet::d2(int i, int j) const {
  check_var(nvars_, i);
  check_var(nvars_, j);
  Exponent e{};
  e[i] += 1;
  e[j] += 1;
  return c_[index_of(nvars_, e)] * factorial_weight(e);
}

double Jet::d3(int i, int j, int k) const {
  check_var(nvars_, i);
  check_var(nvars_, j);
  check_var(nvars_, k);
  Exponent e{};
  e[i] += 1;
  e[j] += 1;
  e[k] += 1;
  return c_[index_of(nvars_, e)] * factorial_weight(e);
}

Jet Jet::partial(int i) const {
  check_var(nvars_, i);
  if (order_ == 0) throw Error(ErrorKind::InvalidArgument, "cannot differentiate an order-0 jet");
  const Table& t = table(nvars_);
  Jet out = constant(nvars_, 0.0, order_ - 1);
  for (std::size_t m = 0; m < t.monomials.size(); ++m) {
    const Exponent& e = t.monomials[m];
    if (e[i] == 0 || t.degree[m] > order_) continue;
    Exponent lower = e;
    lower[i] -= 1;
    out.c_[index_of(nvars_, lower)] = c_[m] * e[i];
  }
  return out;
}

void Jet::check_compatible(const Jet& o) const {
  if (nvars_ != o.nvars_) throw Error(ErrorKind::InvalidArgument, "jets over different variable counts");
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  for (int m = 0; m < kMaxJetTerms; ++m) c_[m] += o.c_[m];
  order_ = std::min(order_, o.order_);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  for (int m = 0; m < kMaxJetTerms; ++m) c_[m] -= o.c_[m];
  order_ = std::min(order_, o.order_);
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  check_compatible(o);
  const int order = std::min(order_, o.order_);
  std::array<double, kMaxJetTerms> out{};
  for (const Product& p : table(nvars_).products) {
    if (p.degree > order) break;
    out[p.out] += c_[p.lhs] * o.c_[p.rhs];
  }
  c_ = out;
  order_ = order;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) { return *this *= (1.0 / o); }

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  for (double& x : c_) x /= s;
  return *this;
}

Jet Jet::scale_variables(double s) const {
  Jet out = *this;
  const Table& t = table(nvars_);
  for (std::size_t m = 1; m < t.monomials.size(); ++m) out.c_[m] *= std::pow(s, t.degree[m]);
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
  Jet delta = *this;
  delta.c_[0] = 0.0;
  Jet out = constant(nvars_, f0, order_);
  if (order_ >= 1) out += delta * f1;
  if (order_ >= 2) {
    const Jet d2 = delta * delta;
    out += d2 * (0.5 * f2);
    if (order_ >= 3) out += (d2 * delta) * (f3 / 6.0);
  }
  return out;
}

Jet operator/(double s, const Jet& a) {
  const double x = a.value();
  if (x == 0.0) throw Error(ErrorKind::NonFinite, "jet division by zero");
  const double inv = 1.0 / x;
  return a.compose(s * inv, -s * inv * inv, 2.0 * s * inv * inv * inv, -6.0 * s * inv * inv * inv * inv);
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

Jet cbrt(const Jet& a) {
  const double x = a.value();
  const double r = std::cbrt(x);
  // Derivatives of x^(1/3) written through r to keep negative x valid.
  const double f1 = 1.0 / (3.0 * r * r);
  const double f2 = -2.0 / (9.0 * r * r * r * r * r);
  const double f3 = 10.0 / (27.0 * r * r * r * r * r * r * r * r);
  return a.compose(r, f1, f2, f3);
}

Jet pow(const Jet& a, double p) {
  const double x = a.value();
  if (!(x > 0.0)) throw Error(ErrorKind::NonFinite, "jet pow of a non-positive base");
  const double f0 = std::pow(x, p);
  return a.compose(f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x), p * (p - 1.0) * (p - 2.0) * f0 / (x * x * x));
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return a.compose(e, e, e, e);
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw Error(ErrorKind::NonFinite, "jet log of a non-positive value");
  return a.compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

Jet abs(const Jet& a) { return a.value() < 0.0 ? -a : a; }

Jet dot(std::span<const Jet> a, std::span<const Jet> b) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::InvalidArgument, "jet dot size mismatch");
  Jet out = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

}  // namespace copolar
