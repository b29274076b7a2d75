#pragma once

// Batched imaginary-frequency round-trip kernels.
//
// For a fixed Matsubara/imaginary frequency xi and a batch of normal
// wavenumbers kappa = sqrt(xi^2 + k^2) >= xi these compute, per polarization,
//
//     log(1 - r_p(i xi, k)^2 exp(-2 kappa L))
//
// with the Drude/plasma Fresnel coefficients written in cancellation-free
// form. This is the innermost loop of every Lifshitz integral and Matsubara
// sum. A scalar reference kernel is always available; an AVX2+FMA variant is
// selected at runtime when the CPU supports it.

#include <cstddef>
#include <span>

namespace casimir::kernels {

enum class Isa { Scalar, Avx2 };

struct RoundTripParams {
  double distance;
  /// xi^2. Zero selects the static limit, where r_TM = 1.
  double xi_sq;
  /// (epsilon(i xi) - 1) xi^2 = omega_p^2 xi / (xi + gamma); omega_p^2 at xi = 0 for the plasma model.
  double susceptibility;
};

void round_trip_log_scalar(const RoundTripParams& p, const double* kappa, double* te, double* tm,
                           std::size_t n);
void round_trip_log_avx2(const RoundTripParams& p, const double* kappa, double* te, double* tm,
                         std::size_t n);

bool isa_available(Isa isa);
const char* isa_name(Isa isa);

/// ISA used by `round_trip_log`. Defaults to the best available one; the
/// CASIMIR_ISA environment variable ("scalar" or "avx2") overrides it.
Isa active_isa();
/// Throws DomainError if the ISA is not supported on this machine.
void set_active_isa(Isa isa);

void round_trip_log(const RoundTripParams& p, std::span<const double> kappa, std::span<double> te,
                    std::span<double> tm);

namespace detail {
// Vector elementary functions backing the AVX2 kernel, exposed for testing.
// exp is accurate for x <= 0 and flushes to zero below -708; log1p for y in (-1, 0].
void exp_avx2(const double* x, double* out, std::size_t n);
void log1p_avx2(const double* y, double* out, std::size_t n);
}  // namespace detail

}  // namespace casimir::kernels
