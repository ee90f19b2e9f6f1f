#include "p2pmarket/domain.hpp"

#include <limits>
#include <string>

namespace p2pmarket {

const char* to_string(SupplyTier tier) noexcept
{
    return tier == SupplyTier::SolarSurplus ? "solar_surplus" : "battery_charge";
}

const char* to_string(MarketChoice choice) noexcept
{
    return choice == MarketChoice::Spot ? "spot" : "retail";
}

std::int64_t div_round_half_even(Int128 num, Int128 den)
{
    if (den <= 0) {
        throw std::invalid_argument("div_round_half_even: non-positive divisor");
    }
    Int128 q = num / den;
    Int128 r = num % den;
    // C++ truncates toward zero; move to floor so the remainder is non-negative.
    if (r < 0) {
        q -= 1;
        r += den;
    }
    const Int128 twice = 2 * r;
    if (twice > den || (twice == den && (q % 2 != 0))) {
        q += 1;
    }
    if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min()) {
        throw ValidationError("rounded quotient does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(q);
}

std::int64_t round_half_even(const Ratio& r)
{
    return div_round_half_even(r.numerator(), r.denominator());
}

MoneyMc trade_revenue(EnergyWh quantity, PriceMc price)
{
    std::int64_t product = 0;
    if (__builtin_mul_overflow(quantity.value(), price.value(), &product)) {
        throw ValidationError("trade revenue overflow: " + std::to_string(quantity.value()) + " Wh x " +
                              std::to_string(price.value()) + " mc/kWh");
    }
    return MoneyMc{div_round_half_even(product, 1000)};
}

void validate(const ProsumerState& s)
{
    const auto who = "prosumer " + std::to_string(to_int(s.id)) + ": ";
    if (s.generation.value() < 0 || s.demand.value() < 0) {
        throw ValidationError(who + "generation and demand must be non-negative");
    }
    if (s.battery_capacity.value() < 0 || s.battery_level.value() < 0 || s.battery_level > s.battery_capacity) {
        throw ValidationError(who + "battery level must lie in [0, capacity]");
    }
    if (s.sell_range.min.value() < 0 || s.sell_range.min > s.sell_range.max) {
        throw ValidationError(who + "sell range must satisfy 0 <= min <= max");
    }
    if (s.buy_range.min.value() < 0 || s.buy_range.min > s.buy_range.max) {
        throw ValidationError(who + "buy range must satisfy 0 <= min <= max");
    }
}

}  // namespace p2pmarket
