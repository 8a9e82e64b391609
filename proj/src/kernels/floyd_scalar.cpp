#include "codenet/kernels.hpp"

#include <algorithm>

namespace codenet::kernels::detail {

void floyd_warshall_scalar(std::int32_t* dist, std::size_t n, std::size_t stride) {
    for (std::size_t k = 0; k < n; ++k) {
        const std::int32_t* row_k = dist + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            std::int32_t* row_i = dist + i * stride;
            const std::int32_t d_ik = row_i[k];
            if (d_ik >= kUnreachable) continue;
            for (std::size_t j = 0; j < n; ++j) row_i[j] = std::min(row_i[j], d_ik + row_k[j]);
        }
    }
}

std::int64_t matrix_sum_scalar(const std::int32_t* dist, std::size_t n, std::size_t stride) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t* row = dist + i * stride;
        for (std::size_t j = 0; j < n; ++j) total += row[j];
    }
    return total;
}

}  // namespace codenet::kernels::detail
