#include "qhg/kernels.hpp"

#include <atomic>
#include <cstring>
#include <vector>

namespace qhg::kernels {

void matmul_mod_scalar(uint16_t* C, const uint16_t* A, const uint16_t* B,
                       int n, uint16_t mod) {
  std::vector<uint32_t> acc(n);
  for (int i = 0; i < n; ++i) {
    std::memset(acc.data(), 0, sizeof(uint32_t) * n);
    for (int k = 0; k < n; ++k) {
      uint32_t a = A[i * n + k];
      if (!a) continue;
      const uint16_t* brow = B + k * n;
      for (int j = 0; j < n; ++j) acc[j] += a * brow[j];
    }
    for (int j = 0; j < n; ++j) C[i * n + j] = uint16_t(acc[j] % mod);
  }
}

void addscaled_mod_scalar(uint16_t* C, const uint16_t* D, uint16_t s, int len,
                          uint16_t mod) {
  for (int i = 0; i < len; ++i)
    C[i] = uint16_t((C[i] + uint32_t(s) * D[i]) % mod);
}

namespace {
std::atomic<bool> g_force_scalar{false};
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void force_scalar(bool on) { g_force_scalar.store(on); }

const char* backend_name() {
  if (!g_force_scalar.load() && avx2_supported()) return "avx2";
  return "scalar";
}

void matmul_mod(uint16_t* C, const uint16_t* A, const uint16_t* B, int n,
                uint16_t mod) {
#if defined(__x86_64__) || defined(_M_X64)
  if (!g_force_scalar.load() && avx2_supported()) {
    matmul_mod_avx2(C, A, B, n, mod);
    return;
  }
#endif
  matmul_mod_scalar(C, A, B, n, mod);
}

void addscaled_mod(uint16_t* C, const uint16_t* D, uint16_t s, int len,
                   uint16_t mod) {
#if defined(__x86_64__) || defined(_M_X64)
  if (!g_force_scalar.load() && avx2_supported()) {
    addscaled_mod_avx2(C, D, s, len, mod);
    return;
  }
#endif
  addscaled_mod_scalar(C, D, s, len, mod);
}

}  // namespace qhg::kernels
