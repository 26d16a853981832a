#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nlbox/box.hpp"

namespace nlbox {

inline constexpr int kMaxXorCopies = 16;

/// The parallel XOR protocol on n copies: both parties feed their input to
/// every copy and output the parity of the n outputs they receive.
struct XorProtocol {
  int n = 1;
};

/// Exact output distribution of the XOR protocol, by enumerating all 4^n
/// outcome tuples per input pair. Requires a valid non-signaling box and
/// 1 <= n <= kMaxXorCopies.
Box compose_xor(const Box& box, int n, double tol = kDefaultTol);
Box compose(const Box& box, const XorProtocol& protocol, double tol = kDefaultTol);

/// Correlators of compose_xor(box, n) in closed form: each X_xy raised to n.
Correlators xor_correlator_law(const Box& box, int n);
Correlators xor_correlator_law(const Correlators& c, int n);

/// One party's deterministic adaptive strategy on two copies of a box.
///
/// The party queries physical box `first_box()` with input first_input(x),
/// receives out1, queries the other box with second_input(x, out1), receives
/// out2 and outputs output(x, out1, out2). The maps are stored as truth
/// tables packed into one 15-bit code:
///   bit 0        : order (0 = box 0 first, 1 = box 1 first)
///   bits 1..2    : first_input, bit x
///   bits 3..6    : second_input, bit 2x + out1
///   bits 7..14   : output, bit 4x + 2 out1 + out2
class AdaptiveStrategy {
 public:
  static constexpr std::uint32_t kCount = 2u * 4u * 16u * 256u;

  constexpr AdaptiveStrategy() = default;
  static AdaptiveStrategy from_code(std::uint32_t code);
  static AdaptiveStrategy from_maps(int order, unsigned first_input, unsigned second_input, unsigned output);

  /// The strategy used by the XOR protocol on two copies.
  static AdaptiveStrategy xor_strategy();
  /// Uses only the first-queried box: input x, output out1.
  static AdaptiveStrategy project_first();

  constexpr std::uint32_t code() const { return code_; }
  constexpr int first_box() const { return static_cast<int>(code_ & 1u); }
  constexpr unsigned first_input_map() const { return (code_ >> 1) & 0x3u; }
  constexpr unsigned second_input_map() const { return (code_ >> 3) & 0xFu; }
  constexpr unsigned output_map() const { return (code_ >> 7) & 0xFFu; }

  constexpr int first_input(int x) const { return static_cast<int>((first_input_map() >> x) & 1u); }
  constexpr int second_input(int x, int out1) const {
    return static_cast<int>((second_input_map() >> (2 * x + out1)) & 1u);
  }
  constexpr int output(int x, int out1, int out2) const {
    return static_cast<int>((output_map() >> (4 * x + 2 * out1 + out2)) & 1u);
  }

  std::string describe() const;

  friend constexpr bool operator==(AdaptiveStrategy, AdaptiveStrategy) = default;
  friend constexpr auto operator<=>(AdaptiveStrategy, AdaptiveStrategy) = default;

 private:
  explicit constexpr AdaptiveStrategy(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

struct Wiring2 {
  AdaptiveStrategy alice;
  AdaptiveStrategy bob;
  friend bool operator==(const Wiring2&, const Wiring2&) = default;
};

/// Exact output distribution of a two-copy adaptive wiring. The joint
/// probability of a run is the product over the two physical boxes; query
/// order between the parties does not matter for non-signaling boxes.
/// Throws BoxError if the input box or the resulting box is signaling.
Box compose_wiring2(const Box& box, const Wiring2& wiring, double tol = kDefaultTol);

/// Same enumeration without any validation; used in hot loops.
Table compose_wiring2_unchecked(const Table& box, AdaptiveStrategy alice, AdaptiveStrategy bob);

}  // namespace nlbox
