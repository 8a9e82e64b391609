#include <immintrin.h>

#include <algorithm>

#include "codenet/kernels.hpp"

namespace codenet::kernels::detail {

void floyd_warshall_avx512(std::int32_t* dist, std::size_t n, std::size_t stride) {
    const std::size_t vec_end = n & ~std::size_t{15};
    const std::size_t tail = n - vec_end;
    const __mmask16 tail_mask = static_cast<__mmask16>((1u << tail) - 1u);
    for (std::size_t k = 0; k < n; ++k) {
        const std::int32_t* row_k = dist + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            std::int32_t* row_i = dist + i * stride;
            const std::int32_t d_ik = row_i[k];
            if (d_ik >= kUnreachable) continue;
            const __m512i via = _mm512_set1_epi32(d_ik);
            std::size_t j = 0;
            for (; j < vec_end; j += 16) {
                const __m512i cur = _mm512_loadu_si512(row_i + j);
                const __m512i alt = _mm512_add_epi32(via, _mm512_loadu_si512(row_k + j));
                _mm512_storeu_si512(row_i + j, _mm512_min_epi32(cur, alt));
            }
            if (tail) {
                const __m512i cur = _mm512_maskz_loadu_epi32(tail_mask, row_i + j);
                const __m512i alt = _mm512_add_epi32(via, _mm512_maskz_loadu_epi32(tail_mask, row_k + j));
                _mm512_mask_storeu_epi32(row_i + j, tail_mask, _mm512_min_epi32(cur, alt));
            }
        }
    }
}

std::int64_t matrix_sum_avx512(const std::int32_t* dist, std::size_t n, std::size_t stride) {
    const std::size_t vec_end = n & ~std::size_t{15};
    const std::size_t tail = n - vec_end;
    const __mmask16 tail_mask = static_cast<__mmask16>((1u << tail) - 1u);
    __m512i acc = _mm512_setzero_si512();  // 8 x int64
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t* row = dist + i * stride;
        std::size_t j = 0;
        for (; j < vec_end; j += 16) {
            const __m512i v = _mm512_loadu_si512(row + j);
            acc = _mm512_add_epi64(acc, _mm512_cvtepi32_epi64(_mm512_castsi512_si256(v)));
            acc = _mm512_add_epi64(acc, _mm512_cvtepi32_epi64(_mm512_extracti64x4_epi64(v, 1)));
        }
        if (tail) {
            const __m512i v = _mm512_maskz_loadu_epi32(tail_mask, row + j);
            acc = _mm512_add_epi64(acc, _mm512_cvtepi32_epi64(_mm512_castsi512_si256(v)));
            acc = _mm512_add_epi64(acc, _mm512_cvtepi32_epi64(_mm512_extracti64x4_epi64(v, 1)));
        }
    }
    return _mm512_reduce_add_epi64(acc);
}

}  // namespace codenet::kernels::detail
