#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>
#include <vector>

#include "qhg/kernels.hpp"

namespace qhg::kernels {

// Row-accumulator matmul: widen B rows to u32 lanes, broadcast A[i][k],
// reduce mod once per output row. Same contract as matmul_mod_scalar.
void matmul_mod_avx2(uint16_t* C, const uint16_t* A, const uint16_t* B, int n,
                     uint16_t mod) {
  std::vector<uint32_t> acc(size_t(n) + 8, 0);
  for (int i = 0; i < n; ++i) {
    std::memset(acc.data(), 0, sizeof(uint32_t) * (size_t(n) + 8));
    for (int k = 0; k < n; ++k) {
      uint32_t a = A[i * n + k];
      if (!a) continue;
      const uint16_t* brow = B + k * n;
      __m256i va = _mm256_set1_epi32(int(a));
      int j = 0;
      for (; j + 8 <= n; j += 8) {
        __m128i b16 = _mm_loadu_si128((const __m128i*)(brow + j));
        __m256i b32 = _mm256_cvtepu16_epi32(b16);
        __m256i prod = _mm256_mullo_epi32(va, b32);
        __m256i cur = _mm256_loadu_si256((__m256i*)(acc.data() + j));
        _mm256_storeu_si256((__m256i*)(acc.data() + j),
                            _mm256_add_epi32(cur, prod));
      }
      for (; j < n; ++j) acc[j] += a * brow[j];
    }
    for (int j = 0; j < n; ++j) C[i * n + j] = uint16_t(acc[j] % mod);
  }
}

void addscaled_mod_avx2(uint16_t* C, const uint16_t* D, uint16_t s, int len,
                        uint16_t mod) {
  __m256i vs = _mm256_set1_epi32(int(s));
  int i = 0;
  alignas(32) uint32_t tmp[8];
  for (; i + 8 <= len; i += 8) {
    __m256i c32 = _mm256_cvtepu16_epi32(_mm_loadu_si128((const __m128i*)(C + i)));
    __m256i d32 = _mm256_cvtepu16_epi32(_mm_loadu_si128((const __m128i*)(D + i)));
    __m256i sum = _mm256_add_epi32(c32, _mm256_mullo_epi32(vs, d32));
    _mm256_store_si256((__m256i*)tmp, sum);
    for (int t = 0; t < 8; ++t) C[i + t] = uint16_t(tmp[t] % mod);
  }
  for (; i < len; ++i) C[i] = uint16_t((C[i] + uint32_t(s) * D[i]) % mod);
}

}  // namespace qhg::kernels

#endif
