#include <numbers>

#include "trapid/kernels.hpp"

namespace trapid::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void stencil_dot4(std::size_t n, const double* w0, const double* w1, const double* w2,
                  const double* w3, const std::int32_t* start, const double* f, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = f + start[i];
    double acc = w0[i] * p[0];
    acc = acc + w1[i] * p[1];
    acc = acc + w2[i] * p[2];
    out[i] = acc + w3[i] * p[3];
  }
}

void static_ef(std::size_t n, const double* r, const double* m, const double* rho, double* a,
               double* M, double* V) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = 1.0 - (2.0 * m[i]) / r[i];
    a[i] = ai;
    M[i] = rho[i] / ai;
    V[i] = -0.5 * ai;
  }
}

void perturbation_shift(std::size_t n, double coef, const double* J, const double* r,
                        const double* b, double* a1) {
  for (std::size_t i = 0; i < n; ++i) a1[i] = -((coef * J[i]) / (r[i] * b[i]));
}

void av_direct(std::size_t n, const double* r, const double* b, const double* M, const double* a0,
               const double* V0, double* av) {
  for (std::size_t i = 0; i < n; ++i) {
    const double pre = ((kTwoPi * r[i]) * b[i]) * M[i];
    const double bracket = a0[i] * a0[i] - 4.0 * (V0[i] * V0[i]);
    av[i] = pre * bracket;
  }
}

void av_expanded(std::size_t n, const double* r, const double* b, const double* M,
                 const double* a1, const double* a0, const double* a, const double* chi, double g,
                 double* av) {
  for (std::size_t i = 0; i < n; ++i) {
    const double pre = ((kTwoPi * r[i]) * b[i]) * M[i];
    const double bracket = a1[i] * (a0[i] + a[i]) - ((chi[i] * (a[i] * a[i])) * g);
    av[i] = pre * bracket;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar,        "scalar",  stencil_dot4, static_ef,
                                 perturbation_shift, av_direct, av_expanded};
  return table;
}

}  // namespace trapid::kernels
