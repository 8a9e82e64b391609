#pragma once

// Inner loops of the distance computation, with a portable scalar version and
// vector versions chosen at runtime. Every variant produces identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace codenet::kernels {

enum class Isa : std::uint8_t { Scalar, Avx2, Avx512 };

std::string_view to_string(Isa isa) noexcept;

/// Variants usable on this machine, Scalar first.
std::vector<Isa> available_isas();

/// Best available variant, unless CODENET_ISA=scalar|avx2|avx512 asks for a
/// specific one that is also available.
Isa active_isa();

/// Distance stand-in for "unreachable"; twice this still fits in int32.
inline constexpr std::int32_t kUnreachable = 1 << 29;

/// Row stride (in elements) used for an n-node matrix: n rounded up to a
/// multiple of 16 so every row starts on a 64-byte boundary.
constexpr std::size_t padded_stride(std::size_t n) noexcept { return (n + 15) & ~std::size_t{15}; }

/// In-place Floyd–Warshall over an n×n row-major matrix with the given row
/// stride. Entries must be non-negative and at most kUnreachable.
void floyd_warshall(std::span<std::int32_t> dist, std::size_t n, std::size_t stride, Isa isa);

/// Sum of the first n entries of each of n rows.
std::int64_t matrix_sum(std::span<const std::int32_t> dist, std::size_t n, std::size_t stride, Isa isa);

namespace detail {
void floyd_warshall_scalar(std::int32_t* dist, std::size_t n, std::size_t stride);
std::int64_t matrix_sum_scalar(const std::int32_t* dist, std::size_t n, std::size_t stride);
void floyd_warshall_avx2(std::int32_t* dist, std::size_t n, std::size_t stride);
std::int64_t matrix_sum_avx2(const std::int32_t* dist, std::size_t n, std::size_t stride);
void floyd_warshall_avx512(std::int32_t* dist, std::size_t n, std::size_t stride);
std::int64_t matrix_sum_avx512(const std::int32_t* dist, std::size_t n, std::size_t stride);
}  // namespace detail

}  // namespace codenet::kernels
