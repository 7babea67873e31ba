#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "sqz/errors.hpp"
#include "sqz/quadrature.hpp"

namespace sqz {

namespace {

constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWk[7], g = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXk[i];
    const double s = f(c - dx) + f(c + dx);
    k += kWk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

template <class F>
double adaptive(const F& f, double a, double b, double abs_tol, double rel_tol) {
  std::vector<Segment> segs{kronrod(f, a, b)};
  for (int iter = 0; iter < 20000; ++iter) {
    double total = 0, err = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err += segs[i].error;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) return total;
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    segs[worst] = kronrod(f, s.a, mid);
    segs.push_back(kronrod(f, mid, s.b));
  }
  throw NumericError("adaptive quadrature did not converge");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol, rel_tol);
  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return adaptive(f, a, b, abs_tol, rel_tol);
  // x = t / (1 - t^2), dx = (1 + t^2) / (1 - t^2)^2 dt, t in (-1, 1).
  auto g = [&](double t) {
    const double d = 1 - t * t;
    if (d <= 0) return 0.0;
    return f(t / d) * (1 + t * t) / (d * d);
  };
  auto to_t = [](double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
    if (x == 0) return 0.0;
    return (std::sqrt(1 + 4 * x * x) - 1) / (2 * x);
  };
  return adaptive(g, to_t(a), to_t(b), abs_tol, rel_tol);
}

void gauss_legendre(double a, double b, int panels, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  static constexpr std::array<double, 5> x = {
      0.148874338981631210884826001129720, 0.433395394129247190799265943165784,
      0.679409568299024406234327365114874, 0.865063366688984510732096688423493,
      0.973906528517171720077964012084452};
  static constexpr std::array<double, 5> w = {
      0.295524224714752870173892994651338, 0.269266719309996355091226921569469,
      0.219086362515982043995534934228163, 0.149451349150580593145776339657697,
      0.066671344308688137593568809893332};
  nodes.clear();
  weights.clear();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h, half = 0.5 * h;
    for (int i = 0; i < 5; ++i) {
      nodes.push_back(c - half * x[i]);
      weights.push_back(half * w[i]);
      nodes.push_back(c + half * x[i]);
      weights.push_back(half * w[i]);
    }
  }
}

}  // namespace sqz
