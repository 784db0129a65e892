#pragma once

#include <cmath>
#include <vector>

namespace utm::detail {

// Truncated Taylor series c[k] = g^(k)(x0) / k! with fixed length.
template <class T>
class Jet {
 public:
  explicit Jet(int order, T value = T{}) : c_(order + 1, T{}) { c_[0] = value; }

  static Jet variable(int order, double x0) {
    Jet j(order, T(x0));
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  T& operator[](int k) { return c_[k]; }
  const T& operator[](int k) const { return c_[k]; }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, T s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator+(T s, Jet a) { return a + s; }
  friend Jet operator-(T s, const Jet& a) { return (a * T(-1)) + s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int k = 0; k <= a.order(); ++k) {
      T s{};
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet reciprocal(const Jet& u) {
    Jet r(u.order());
    r.c_[0] = T(1) / u.c_[0];
    for (int k = 1; k <= u.order(); ++k) {
      T s{};
      for (int j = 1; j <= k; ++j) s += u.c_[j] * r.c_[k - j];
      r.c_[k] = -s * r.c_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& u) {
    using std::exp;
    Jet e(u.order());
    e.c_[0] = exp(u.c_[0]);
    for (int k = 1; k <= u.order(); ++k) {
      T s{};
      for (int j = 1; j <= k; ++j) s += T(j) * u.c_[j] * e.c_[k - j];
      e.c_[k] = s / T(k);
    }
    return e;
  }

 private:
  std::vector<T> c_;
};

}  // namespace utm::detail
