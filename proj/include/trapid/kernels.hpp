#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

/// Node-wise arithmetic inner loops in a scalar reference form and an AVX2
/// form. Both variants evaluate every expression in the same operation order
/// without contraction, so their results agree bit for bit.
namespace trapid::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // out[i] = ((w0[i] f[s[i]] + w1[i] f[s[i]+1]) + w2[i] f[s[i]+2]) + w3[i] f[s[i]+3]
  void (*stencil_dot4)(std::size_t n, const double* w0, const double* w1, const double* w2,
                       const double* w3, const std::int32_t* start, const double* f, double* out);

  // a = 1 - 2m/r, M = rho/a, V = -a/2
  void (*static_ef)(std::size_t n, const double* r, const double* m, const double* rho, double* a,
                    double* M, double* V);

  // a1 = -coef * J / (r b)
  void (*perturbation_shift)(std::size_t n, double coef, const double* J, const double* r,
                             const double* b, double* a1);

  // av = 2 pi r b M (a0 a0 - 4 V0 V0)
  void (*av_direct)(std::size_t n, const double* r, const double* b, const double* M,
                    const double* a0, const double* V0, double* av);

  // av = 2 pi r b M (a1 (a0 + a) - chi a a g)
  void (*av_expanded)(std::size_t n, const double* r, const double* b, const double* M,
                      const double* a1, const double* a0, const double* a, const double* chi,
                      double g, double* av);
};

const KernelTable& scalar_table();

/// AVX2 table if it was compiled in and the CPU supports it, else nullptr.
const KernelTable* avx2_table();

/// Table used by the library. Chosen once: TRAPID_KERNELS=scalar|avx2 forces
/// a variant, anything else picks the widest supported one.
const KernelTable& active();

}  // namespace trapid::kernels
