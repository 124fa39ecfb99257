#include "choreo/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace choreo::kernels {

namespace {

std::atomic<const Ops*> g_ops{nullptr};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

bool avx2_supported() {
#ifdef CHOREO_HAVE_AVX2
    return cpu_has_avx2();
#else
    return false;
#endif
}

void select(Isa isa) {
#ifdef CHOREO_HAVE_AVX2
    if (isa == Isa::Avx2) {
        if (!avx2_supported()) throw std::runtime_error("AVX2 kernels not supported here");
        g_ops.store(&avx2_ops, std::memory_order_relaxed);
        return;
    }
#else
    if (isa == Isa::Avx2) throw std::runtime_error("AVX2 kernels not compiled in");
#endif
    g_ops.store(&scalar_ops, std::memory_order_relaxed);
}

void select_auto() {
    const char* env = std::getenv("CHOREO_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) {
            select(Isa::Scalar);
            return;
        }
        if (std::strcmp(env, "avx2") == 0) {
            select(Isa::Avx2);
            return;
        }
    }
    select(avx2_supported() ? Isa::Avx2 : Isa::Scalar);
}

Isa active() {
    const Ops* cur = g_ops.load(std::memory_order_relaxed);
#ifdef CHOREO_HAVE_AVX2
    if (cur == &avx2_ops) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

const Ops& ops() {
    const Ops* cur = g_ops.load(std::memory_order_relaxed);
    if (cur == nullptr) {
        select_auto();
        cur = g_ops.load(std::memory_order_relaxed);
    }
    return *cur;
}

}  // namespace choreo::kernels
