#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace p2pmarket {

/// Largest-remainder apportionment of an integer pool.
///
/// Splits `pool` (>= 0) across `weights` (each >= 0, in caller order) so that
/// every share is floor(pool * w_i / W) or one more, and the shares sum to
/// `pool` exactly. Leftover units go to the largest remainders; equal
/// remainders are resolved by position, so callers sort by id first.
/// A zero total weight yields all-zero shares (pool must then be 0).
std::vector<std::int64_t> apportion(std::int64_t pool, std::span<const std::int64_t> weights);

}  // namespace p2pmarket
