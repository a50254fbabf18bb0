#pragma once

#include <array>
#include <cstdint>

namespace qcd {

/*!
 * Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * A block of four 32-bit outputs is a pure function of a 128-bit counter and
 * a 64-bit key, so any element of any stream can be produced without
 * touching shared state.
 */
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

/*!
 * Stream of standard normal deviates keyed by (seed, stream id).
 *
 * Deviate j of stream s is derived from Philox block (s, j / 2) with key =
 * seed; the two 64-bit halves of the block become two uniforms in (0, 1)
 * and a Box-Muller transform turns them into deviates 2k and 2k + 1.
 * Results depend only on (seed, stream, j), never on thread schedule.
 */
class NormalStream {
  public:
    NormalStream(std::uint64_t seed, std::uint64_t stream);

    double next();

  private:
    void refill();

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    double cache_[2] = {0.0, 0.0};
    int available_ = 0;
};

// Maps 64 random bits to a double strictly inside (0, 1).
double to_open_unit(std::uint64_t bits);

}  // namespace qcd
