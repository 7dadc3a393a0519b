#include <atomic>
#include <cstdlib>
#include <string_view>

#include "exciton/kernels.hpp"

namespace exciton::kernels {

namespace {

// -1: no override; otherwise the Isa value.
std::atomic<int> g_override{-1};

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(_M_X64)
    if (!avx2::compiled()) {
        return false;
    }
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa honour(Isa requested)
{
    if (requested == Isa::avx2 && !cpu_has_avx2()) {
        return Isa::scalar;
    }
    return requested;
}

Isa from_environment()
{
    const char* env = std::getenv("EXCITON_ISA");
    if (env != nullptr) {
        const std::string_view v{env};
        if (v == "scalar") {
            return Isa::scalar;
        }
        if (v == "avx2") {
            return honour(Isa::avx2);
        }
    }
    return detected_isa();
}

} // namespace

Isa detected_isa()
{
    static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
    return isa;
}

Isa active_isa()
{
    const int o = g_override.load(std::memory_order_relaxed);
    if (o >= 0) {
        return honour(static_cast<Isa>(o));
    }
    static const Isa env_isa = from_environment();
    return env_isa;
}

void set_isa_override(std::optional<Isa> isa)
{
    g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::avx2:
        return "avx2";
    case Isa::scalar:
        break;
    }
    return "scalar";
}

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin)
{
    if (active_isa() == Isa::avx2) {
        avx2::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
    } else {
        scalar::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
    }
}

MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape)
{
    if (active_isa() == Isa::avx2) {
        return avx2::trial_moments(nodes, k, q, shape);
    }
    return scalar::trial_moments(nodes, k, q, shape);
}

void v_eff_batch(std::span<const double> x, double r, std::span<double> out)
{
    if (active_isa() == Isa::avx2) {
        avx2::v_eff_batch(x, r, out);
    } else {
        scalar::v_eff_batch(x, r, out);
    }
}

} // namespace exciton::kernels
