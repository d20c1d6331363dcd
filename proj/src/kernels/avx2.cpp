#include <immintrin.h>

#include <numbers>

#include "trapid/kernels.hpp"

namespace trapid::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t W = 4;

void stencil_dot4(std::size_t n, const double* w0, const double* w1, const double* w2,
                  const double* w3, const std::int32_t* start, const double* f, double* out) {
  const __m128i one = _mm_set1_epi32(1);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const __m128i s0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(start + i));
    const __m128i s1 = _mm_add_epi32(s0, one);
    const __m128i s2 = _mm_add_epi32(s1, one);
    const __m128i s3 = _mm_add_epi32(s2, one);
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(w0 + i), _mm256_i32gather_pd(f, s0, 8));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w1 + i), _mm256_i32gather_pd(f, s1, 8)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w2 + i), _mm256_i32gather_pd(f, s2, 8)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w3 + i), _mm256_i32gather_pd(f, s3, 8)));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    const double* p = f + start[i];
    double acc = w0[i] * p[0];
    acc = acc + w1[i] * p[1];
    acc = acc + w2[i] * p[2];
    out[i] = acc + w3[i] * p[3];
  }
}

void static_ef(std::size_t n, const double* r, const double* m, const double* rho, double* a,
               double* M, double* V) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d neg_half = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const __m256d ai = _mm256_sub_pd(
        one, _mm256_div_pd(_mm256_mul_pd(two, _mm256_loadu_pd(m + i)), _mm256_loadu_pd(r + i)));
    _mm256_storeu_pd(a + i, ai);
    _mm256_storeu_pd(M + i, _mm256_div_pd(_mm256_loadu_pd(rho + i), ai));
    _mm256_storeu_pd(V + i, _mm256_mul_pd(neg_half, ai));
  }
  for (; i < n; ++i) {
    const double ai = 1.0 - (2.0 * m[i]) / r[i];
    a[i] = ai;
    M[i] = rho[i] / ai;
    V[i] = -0.5 * ai;
  }
}

void perturbation_shift(std::size_t n, double coef, const double* J, const double* r,
                        const double* b, double* a1) {
  const __m256d c = _mm256_set1_pd(coef);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const __m256d num = _mm256_mul_pd(c, _mm256_loadu_pd(J + i));
    const __m256d den = _mm256_mul_pd(_mm256_loadu_pd(r + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(a1 + i, _mm256_xor_pd(sign, _mm256_div_pd(num, den)));
  }
  for (; i < n; ++i) a1[i] = -((coef * J[i]) / (r[i] * b[i]));
}

inline __m256d prefactor(const double* r, const double* b, const double* M, std::size_t i) {
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  return _mm256_mul_pd(
      _mm256_mul_pd(_mm256_mul_pd(two_pi, _mm256_loadu_pd(r + i)), _mm256_loadu_pd(b + i)),
      _mm256_loadu_pd(M + i));
}

void av_direct(std::size_t n, const double* r, const double* b, const double* M, const double* a0,
               const double* V0, double* av) {
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const __m256d x = _mm256_loadu_pd(a0 + i);
    const __m256d v = _mm256_loadu_pd(V0 + i);
    const __m256d bracket =
        _mm256_sub_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(four, _mm256_mul_pd(v, v)));
    _mm256_storeu_pd(av + i, _mm256_mul_pd(prefactor(r, b, M, i), bracket));
  }
  for (; i < n; ++i) {
    const double pre = ((kTwoPi * r[i]) * b[i]) * M[i];
    const double bracket = a0[i] * a0[i] - 4.0 * (V0[i] * V0[i]);
    av[i] = pre * bracket;
  }
}

void av_expanded(std::size_t n, const double* r, const double* b, const double* M,
                 const double* a1, const double* a0, const double* a, const double* chi, double g,
                 double* av) {
  const __m256d gv = _mm256_set1_pd(g);
  std::size_t i = 0;
  for (; i + W <= n; i += W) {
    const __m256d as = _mm256_loadu_pd(a + i);
    const __m256d shift =
        _mm256_mul_pd(_mm256_loadu_pd(a1 + i), _mm256_add_pd(_mm256_loadu_pd(a0 + i), as));
    const __m256d band =
        _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(chi + i), _mm256_mul_pd(as, as)), gv);
    _mm256_storeu_pd(av + i, _mm256_mul_pd(prefactor(r, b, M, i), _mm256_sub_pd(shift, band)));
  }
  for (; i < n; ++i) {
    const double pre = ((kTwoPi * r[i]) * b[i]) * M[i];
    const double bracket = a1[i] * (a0[i] + a[i]) - ((chi[i] * (a[i] * a[i])) * g);
    av[i] = pre * bracket;
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::Avx2,          "avx2",    stencil_dot4, static_ef,
                                 perturbation_shift, av_direct, av_expanded};
  return table;
}

}  // namespace trapid::kernels
