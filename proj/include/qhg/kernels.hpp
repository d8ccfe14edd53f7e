#pragma once

#include <cstdint>

// Modular arithmetic kernels for the residue-plane matrix fast path.
// Scalar reference implementations are the ground truth; AVX2 variants are
// selected at runtime when the CPU supports them and are equivalence-tested
// against the scalar versions. Moduli are capped at 4096 so products fit
// 24 bits and row sums of up to 256 terms fit 32 bits.

namespace qhg::kernels {

// C = A * B mod m; row-major n x n, n <= 256.
void matmul_mod_scalar(uint16_t* C, const uint16_t* A, const uint16_t* B,
                       int n, uint16_t mod);
void matmul_mod(uint16_t* C, const uint16_t* A, const uint16_t* B, int n,
                uint16_t mod);

// C[i] = (C[i] + s * D[i]) mod m elementwise.
void addscaled_mod_scalar(uint16_t* C, const uint16_t* D, uint16_t s, int len,
                          uint16_t mod);
void addscaled_mod(uint16_t* C, const uint16_t* D, uint16_t s, int len,
                   uint16_t mod);

// Active backend ("scalar" or "avx2").
const char* backend_name();
// Test hook: force the scalar backend on/off regardless of CPU support.
void force_scalar(bool on);
bool avx2_supported();

#if defined(__x86_64__) || defined(_M_X64)
void matmul_mod_avx2(uint16_t* C, const uint16_t* A, const uint16_t* B, int n,
                     uint16_t mod);
void addscaled_mod_avx2(uint16_t* C, const uint16_t* D, uint16_t s, int len,
                        uint16_t mod);
#endif

}  // namespace qhg::kernels
