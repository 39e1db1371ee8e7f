#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace kaczeros {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (seed, stream index); both go into the 64-bit
/// key/counter halves so that streams with different indices never overlap.
/// Output depends only on (seed, stream, position), never on the order in
/// which streams are consumed, which is what makes ensemble runs
/// reproducible independent of the number of worker threads.
class PhiloxStream {
public:
    using result_type = std::uint32_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return 0xFFFFFFFFu; }

    result_type operator()() noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    double normal() noexcept;

    /// Unit-rate exponential.
    double exponential() noexcept;

    /// Standard complex Gaussian: E|z|^2 = 1, density exp(-|z|^2)/pi.
    std::complex<double> complex_normal() noexcept;

    /// Child stream; the same (parent key, index) always yields the same child.
    PhiloxStream split(std::uint64_t index) const noexcept;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// Mixes (seed, a, b) into a stream index; used to key per-replica streams.
std::uint64_t stream_id(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace kaczeros
