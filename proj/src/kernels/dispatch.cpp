#include <bit>
#include <cstdlib>
#include <string_view>

#include "isk/kernels.hpp"
#include "isk/random.hpp"

namespace isk::kernels {

#if defined(ISK_HAVE_AVX2)
namespace detail {
const KernelTable& avx2_table();
}
#endif

std::uint32_t stratum_bits(std::size_t reps) noexcept {
  if (reps <= 1) return 0;
  const auto bits = static_cast<std::uint32_t>(std::bit_width(reps - 1));
  return bits > 20 ? 20 : bits;
}

CauchyKey make_cauchy_key(std::uint64_t source_seed, std::uint64_t index, std::size_t reps) noexcept {
  const std::uint64_t a = splitmix64(source_seed ^ splitmix64(index + 0x2545F4914F6CDD1DULL));
  const std::uint64_t b = splitmix64(a);
  const std::uint64_t c = splitmix64(b);
  CauchyKey key{};
  key.perm[0] = static_cast<std::uint32_t>(a);
  key.perm[1] = static_cast<std::uint32_t>(a >> 32);
  key.perm[2] = static_cast<std::uint32_t>(b);
  key.perm[3] = static_cast<std::uint32_t>(b >> 32);
  key.jitter = static_cast<std::uint32_t>(c);
  key.bits = stratum_bits(reps);
  return key;
}

const KernelTable* avx2() {
#if defined(ISK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") != 0;
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

Isa select_isa() {
  if (const char* forced = std::getenv("IMPLICIT_SKETCH_ISA")) {
    if (std::string_view(forced) == "scalar") return Isa::kScalar;
  }
  return avx2() != nullptr ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& table = active_isa() == Isa::kAvx2 ? *avx2() : scalar();
  return table;
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

}  // namespace isk::kernels
