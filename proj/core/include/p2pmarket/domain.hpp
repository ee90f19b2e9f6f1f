#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace p2pmarket {

// Every amount in the simulator is an exact integer:
//   energy  in watt-hours,
//   prices  in milli-cents per kWh,
//   money   in milli-cents.
// trade_revenue() is the only place where a division (and so rounding) happens.

template <typename Tag>
class Quantity {
public:
    constexpr Quantity() noexcept = default;
    constexpr explicit Quantity(std::int64_t v) noexcept : value_(v) {}

    [[nodiscard]] constexpr std::int64_t value() const noexcept { return value_; }
    [[nodiscard]] constexpr bool is_zero() const noexcept { return value_ == 0; }

    constexpr auto operator<=>(const Quantity&) const noexcept = default;

    constexpr Quantity operator+(Quantity rhs) const noexcept { return Quantity{value_ + rhs.value_}; }
    constexpr Quantity operator-(Quantity rhs) const noexcept { return Quantity{value_ - rhs.value_}; }
    constexpr Quantity operator-() const noexcept { return Quantity{-value_}; }
    constexpr Quantity& operator+=(Quantity rhs) noexcept { value_ += rhs.value_; return *this; }
    constexpr Quantity& operator-=(Quantity rhs) noexcept { value_ -= rhs.value_; return *this; }

private:
    std::int64_t value_ = 0;
};

template <typename Tag>
std::ostream& operator<<(std::ostream& os, Quantity<Tag> q) { return os << q.value(); }

template <typename Tag>
constexpr Quantity<Tag> min(Quantity<Tag> a, Quantity<Tag> b) noexcept { return b < a ? b : a; }
template <typename Tag>
constexpr Quantity<Tag> max(Quantity<Tag> a, Quantity<Tag> b) noexcept { return a < b ? b : a; }

using EnergyWh = Quantity<struct EnergyTag>;
using PriceMc = Quantity<struct PriceTag>;   // milli-cents per kWh
using MoneyMc = Quantity<struct MoneyTag>;   // milli-cents

enum class ProsumerId : std::uint32_t {};
enum class RetailerId : std::uint32_t {};

constexpr std::uint32_t to_int(ProsumerId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t to_int(RetailerId id) noexcept { return static_cast<std::uint32_t>(id); }

using Ratio = boost::rational<std::int64_t>;

__extension__ typedef __int128 Int128;

struct PriceRange {
    PriceMc min;
    PriceMc max;
    bool operator==(const PriceRange&) const = default;
};

struct ProsumerState {
    ProsumerId id{};
    EnergyWh generation;
    EnergyWh demand;
    EnergyWh battery_level;
    EnergyWh battery_capacity;
    PriceRange sell_range;
    PriceRange buy_range;
    MoneyMc ledger;

    bool operator==(const ProsumerState&) const = default;
};

// Allocation priority: solar surplus is always offered before battery charge.
enum class SupplyTier : std::uint8_t { SolarSurplus = 0, BatteryCharge = 1 };

enum class MarketChoice : std::uint8_t { Spot, Retail };

const char* to_string(SupplyTier tier) noexcept;
const char* to_string(MarketChoice choice) noexcept;

// Scenario problems: bad input files, broken invariants, arithmetic overflow.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal inconsistencies detected while the pipeline runs.
class SimulationFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer division of num/den (den > 0) rounded half to even.
std::int64_t div_round_half_even(Int128 num, Int128 den);

/// Rounds an exact rational to the nearest integer, ties to even.
std::int64_t round_half_even(const Ratio& r);

/// Revenue of a trade: quantity [Wh] x price [mc/kWh] / 1000, rounded half-even.
/// Throws ValidationError if the intermediate product does not fit in 64 bits.
MoneyMc trade_revenue(EnergyWh quantity, PriceMc price);

/// Checks the ProsumerState invariants; throws ValidationError naming the prosumer.
void validate(const ProsumerState& state);

}  // namespace p2pmarket
