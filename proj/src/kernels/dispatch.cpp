#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "casimir/errors.hpp"
#include "casimir/kernels.hpp"

namespace casimir::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(CASIMIR_HAVE_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__)) && \
    (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("CASIMIR_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  return isa == Isa::Scalar || (isa == Isa::Avx2 && cpu_has_avx2());
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw DomainError(std::string("ISA not available: ") + isa_name(isa));
  active().store(isa, std::memory_order_relaxed);
}

void round_trip_log(const RoundTripParams& p, std::span<const double> kappa, std::span<double> te,
                    std::span<double> tm) {
  if (te.size() < kappa.size() || tm.size() < kappa.size()) {
    throw DomainError("round_trip_log: output spans shorter than input");
  }
  if (active_isa() == Isa::Avx2) {
    round_trip_log_avx2(p, kappa.data(), te.data(), tm.data(), kappa.size());
  } else {
    round_trip_log_scalar(p, kappa.data(), te.data(), tm.data(), kappa.size());
  }
}

}  // namespace casimir::kernels
