#include "malfare/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace malfare::kern {
namespace {

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* pick_auto() {
    if (const char* env = std::getenv("MALFARE_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_table();
        if (std::strcmp(env, "avx2") == 0) {
            const KernelTable* t = avx2_table();
            if (t && cpu_has_avx2()) return t;
            throw std::runtime_error("MALFARE_KERNELS=avx2 but AVX2 is unavailable");
        }
    }
    const KernelTable* t = avx2_table();
    if (t && cpu_has_avx2()) return t;
    return &scalar_table();
}

const KernelTable*& active_slot() {
    static const KernelTable* slot = pick_auto();
    return slot;
}

}  // namespace

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2: return avx2_table() != nullptr && cpu_has_avx2();
        case Backend::auto_detect: return true;
    }
    return false;
}

void set_backend(Backend b) {
    switch (b) {
        case Backend::scalar:
            active_slot() = &scalar_table();
            return;
        case Backend::avx2:
            if (!backend_available(Backend::avx2))
                throw std::runtime_error("AVX2 kernels unavailable on this CPU/build");
            active_slot() = avx2_table();
            return;
        case Backend::auto_detect:
            active_slot() = pick_auto();
            return;
    }
}

const KernelTable& active() { return *active_slot(); }

const char* backend_name() { return active().name; }

}  // namespace malfare::kern
