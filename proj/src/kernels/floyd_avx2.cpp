#include <immintrin.h>

#include <algorithm>

#include "codenet/kernels.hpp"

namespace codenet::kernels::detail {

void floyd_warshall_avx2(std::int32_t* dist, std::size_t n, std::size_t stride) {
    const std::size_t vec_end = n & ~std::size_t{7};
    for (std::size_t k = 0; k < n; ++k) {
        const std::int32_t* row_k = dist + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            std::int32_t* row_i = dist + i * stride;
            const std::int32_t d_ik = row_i[k];
            if (d_ik >= kUnreachable) continue;
            const __m256i via = _mm256_set1_epi32(d_ik);
            std::size_t j = 0;
            for (; j < vec_end; j += 8) {
                const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row_i + j));
                const __m256i alt = _mm256_add_epi32(
                    via, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row_k + j)));
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(row_i + j), _mm256_min_epi32(cur, alt));
            }
            for (; j < n; ++j) row_i[j] = std::min(row_i[j], d_ik + row_k[j]);
        }
    }
}

std::int64_t matrix_sum_avx2(const std::int32_t* dist, std::size_t n, std::size_t stride) {
    const std::size_t vec_end = n & ~std::size_t{7};
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t* row = dist + i * stride;
        __m256i acc = _mm256_setzero_si256();  // 4 x int64
        std::size_t j = 0;
        for (; j < vec_end; j += 8) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + j));
            acc = _mm256_add_epi64(acc, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(v)));
            acc = _mm256_add_epi64(acc, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(v, 1)));
        }
        alignas(32) std::int64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        total += lanes[0] + lanes[1] + lanes[2] + lanes[3];
        for (; j < n; ++j) total += row[j];
    }
    return total;
}

}  // namespace codenet::kernels::detail
