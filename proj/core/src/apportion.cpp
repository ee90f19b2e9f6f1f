#include "p2pmarket/apportion.hpp"

#include "p2pmarket/domain.hpp"

#include <algorithm>
#include <numeric>

namespace p2pmarket {

std::vector<std::int64_t> apportion(std::int64_t pool, std::span<const std::int64_t> weights)
{
    if (pool < 0) {
        throw SimulationFault("apportion: negative pool");
    }
    Int128 total = 0;
    for (auto w : weights) {
        if (w < 0) {
            throw SimulationFault("apportion: negative weight");
        }
        total += w;
    }
    std::vector<std::int64_t> shares(weights.size(), 0);
    if (total == 0) {
        if (pool != 0) {
            throw SimulationFault("apportion: positive pool with zero total weight");
        }
        return shares;
    }

    std::vector<Int128> remainders(weights.size());
    Int128 assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const Int128 scaled = static_cast<Int128>(pool) * weights[i];
        shares[i] = static_cast<std::int64_t>(scaled / total);
        remainders[i] = scaled % total;
        assigned += shares[i];
    }

    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });

    auto leftover = static_cast<std::int64_t>(pool - assigned);
    for (std::size_t k = 0; leftover > 0; ++k, --leftover) {
        shares[order[k]] += 1;
    }
    return shares;
}

}  // namespace p2pmarket
