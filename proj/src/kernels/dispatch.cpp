#include <cstdlib>
#include <stdexcept>
#include <string>

#include "codenet/kernels.hpp"

namespace codenet::kernels {

namespace {

bool supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
#if defined(CODENET_HAVE_X86_KERNELS)
        case Isa::Avx2: return __builtin_cpu_supports("avx2");
        case Isa::Avx512: return __builtin_cpu_supports("avx512f");
#else
        case Isa::Avx2:
        case Isa::Avx512: return false;
#endif
    }
    return false;
}

Isa select_isa() {
    if (const char* forced = std::getenv("CODENET_ISA")) {
        const std::string want = forced;
        for (Isa isa : available_isas())
            if (to_string(isa) == want) return isa;
    }
    return available_isas().back();
}

void require(Isa isa) {
    if (!supported(isa)) throw std::invalid_argument("kernel variant not available: " + std::string(to_string(isa)));
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Avx512: return "avx512";
    }
    return "scalar";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Avx512})
        if (supported(isa)) out.push_back(isa);
    return out;
}

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

void floyd_warshall(std::span<std::int32_t> dist, std::size_t n, std::size_t stride, Isa isa) {
    if (n == 0) return;
    if (stride < n || dist.size() < (n - 1) * stride + n) throw std::invalid_argument("distance buffer too small");
    require(isa);
    switch (isa) {
        case Isa::Scalar: detail::floyd_warshall_scalar(dist.data(), n, stride); return;
#if defined(CODENET_HAVE_X86_KERNELS)
        case Isa::Avx2: detail::floyd_warshall_avx2(dist.data(), n, stride); return;
        case Isa::Avx512: detail::floyd_warshall_avx512(dist.data(), n, stride); return;
#else
        default: break;
#endif
    }
}

std::int64_t matrix_sum(std::span<const std::int32_t> dist, std::size_t n, std::size_t stride, Isa isa) {
    if (n == 0) return 0;
    if (stride < n || dist.size() < (n - 1) * stride + n) throw std::invalid_argument("distance buffer too small");
    require(isa);
    switch (isa) {
        case Isa::Scalar: return detail::matrix_sum_scalar(dist.data(), n, stride);
#if defined(CODENET_HAVE_X86_KERNELS)
        case Isa::Avx2: return detail::matrix_sum_avx2(dist.data(), n, stride);
        case Isa::Avx512: return detail::matrix_sum_avx512(dist.data(), n, stride);
#else
        default: break;
#endif
    }
    return 0;
}

}  // namespace codenet::kernels
