#include "kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ccfv::kernels {

#if defined(CCFV_HAVE_AVX2_BUILD)
const Ops* avx2_ops_impl(); // defined in kernels_avx2.cpp
#endif

const Ops* avx2_ops() {
#if defined(CCFV_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2")) return avx2_ops_impl();
#endif
    return nullptr;
}

const Ops& active_ops() {
    static const Ops* picked = [] {
        const Ops* simd = avx2_ops();
        const char* want = std::getenv("CCFV_KERNELS");
        if (want && std::strcmp(want, "scalar") == 0) return &scalar_ops();
        if (want && std::strcmp(want, "avx2") == 0 && simd) return simd;
        return simd ? simd : &scalar_ops();
    }();
    return *picked;
}

} // namespace ccfv::kernels
