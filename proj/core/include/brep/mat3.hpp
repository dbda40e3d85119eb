#pragma once

#include <array>
#include <sstream>
#include <string>

#include "brep/errors.hpp"
#include "brep/ff.hpp"

namespace brep {

template <class R>
struct Mat3 {
  std::array<std::array<R, 3>, 3> a{};

  R& operator()(int i, int j) { return a[i][j]; }
  const R& operator()(int i, int j) const { return a[i][j]; }

  bool operator==(const Mat3& o) const { return a == o.a; }
  bool operator!=(const Mat3& o) const { return !(*this == o); }

  template <class F>
  auto map(F&& fn) const {
    using S = decltype(fn(a[0][0]));
    Mat3<S> r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) r(i, j) = fn(a[i][j]);
    }
    return r;
  }
};

template <class A, class B>
auto operator*(const Mat3<A>& x, const Mat3<B>& y) {
  using S = decltype(x(0, 0) * y(0, 0));
  Mat3<S> r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      S acc = x(i, 0) * y(0, j);
      acc = acc + x(i, 1) * y(1, j);
      acc = acc + x(i, 2) * y(2, j);
      r(i, j) = acc;
    }
  }
  return r;
}

template <class R>
Mat3<R> operator+(const Mat3<R>& x, const Mat3<R>& y) {
  Mat3<R> r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = x(i, j) + y(i, j);
  }
  return r;
}

template <class R>
Mat3<R> operator-(const Mat3<R>& x, const Mat3<R>& y) {
  Mat3<R> r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = x(i, j) - y(i, j);
  }
  return r;
}

// Cofactor expansion along the first row.
template <class R>
R det3(const Mat3<R>& m) {
  R c0 = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  R c1 = m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0);
  R c2 = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  return m(0, 0) * c0 - m(0, 1) * c1 + m(0, 2) * c2;
}

using FMat = Mat3<Fq>;

inline FMat identity(const Field* f) {
  FMat r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = i == j ? f->one() : f->zero();
  }
  return r;
}

inline FMat diag(Fq x, Fq y, Fq z) {
  const Field* f = x.field;
  FMat r = identity(f);
  r(0, 0) = x;
  r(1, 1) = y;
  r(2, 2) = z;
  return r;
}

inline FMat from_rows(const Field* f, const std::array<std::array<long long, 3>, 3>& rows) {
  FMat r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = f->from_int(rows[i][j]);
  }
  return r;
}

inline FMat inverse(const FMat& m) {
  Fq d = det3(m);
  if (d.is_zero()) throw invariant_violation("singular matrix");
  Fq di = d.inv();
  FMat r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // adjugate: cofactor of (j, i)
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      Fq cof = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
      r(i, j) = cof * di;
    }
  }
  return r;
}

inline bool is_identity(const FMat& m) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (m(i, j).v != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

// Lifts a scalar matrix into a polynomial ring.
template <class P>
Mat3<P> lift(const FMat& m) {
  return m.map([](const Fq& x) { return P::constant(x); });
}

template <class P>
Mat3<P> poly_identity(const Field* f) {
  return lift<P>(identity(f));
}

template <class R>
std::string to_string(const Mat3<R>& m) {
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    os << (i ? "; " : "[");
    for (int j = 0; j < 3; ++j) {
      if (j) os << ", ";
      os << m(i, j).to_string();
    }
  }
  os << "]";
  return os.str();
}

}  // namespace brep
