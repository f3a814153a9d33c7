#include "gme/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace gme::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(GME_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* by_name(std::string_view name) {
    if (name == "scalar") return &scalar_kernels();
    if (name == "avx2") return avx2_kernels();
    return nullptr;
}

const KernelTable* initial_choice() {
    if (const char* env = std::getenv("GME_KERNELS")) {
        if (const KernelTable* t = by_name(env)) return t;
    }
    if (const KernelTable* t = avx2_kernels()) return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_choice()};
    return table;
}

} // namespace

const KernelTable* avx2_kernels() {
#if defined(GME_HAVE_AVX2_KERNELS)
    static const bool supported = cpu_has_avx2();
    static const KernelTable table{"avx2", &detail::dot_avx2, &detail::axpy_avx2, &detail::sumsq_avx2};
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (const KernelTable* t = avx2_kernels()) out.push_back(t);
    return out;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
    const KernelTable* t = by_name(name);
    if (t == nullptr) return false;
    current().store(t, std::memory_order_relaxed);
    return true;
}

} // namespace gme::kernels
