#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlg {

using Weight = std::uint64_t;

/// Extended natural number: a finite value or INFINITY.
///
/// Every finite value is strictly below INFINITY, and adding a finite weight
/// to INFINITY yields INFINITY. Finite addition that would leave the
/// representable range throws std::overflow_error.
class Rank {
public:
    static constexpr std::uint64_t kInfinityRep = std::numeric_limits<std::uint64_t>::max();
    /// Largest finite value a Rank can hold.
    static constexpr std::uint64_t kMaxFinite = kInfinityRep - 1;

    constexpr Rank() noexcept = default;
    constexpr explicit Rank(std::uint64_t value) : value_(value) {
        if (value > kMaxFinite) {
            throw std::overflow_error("Rank: finite value out of range");
        }
    }

    static constexpr Rank infinity() noexcept {
        Rank r;
        r.value_ = kInfinityRep;
        return r;
    }

    constexpr bool is_finite() const noexcept { return value_ != kInfinityRep; }
    constexpr bool is_infinite() const noexcept { return value_ == kInfinityRep; }

    /// Finite value; calling this on INFINITY is a logic error.
    std::uint64_t value() const;

    constexpr auto operator<=>(const Rank&) const noexcept = default;

    std::string to_string() const;

private:
    std::uint64_t value_ = 0;
};

inline constexpr Rank kInfinity = Rank::infinity();

/// Saturating addition of a weight: INFINITY + w = INFINITY.
Rank rank_add(Rank r, Weight w);

inline Rank operator+(Rank r, Weight w) { return rank_add(r, w); }

std::ostream& operator<<(std::ostream& os, Rank r);

/// Parses a decimal value or "inf"/"INFINITY".
Rank parse_rank(const std::string& text);

/// a + b and a * b, or nullopt when the result leaves uint64.
inline std::optional<std::uint64_t> checked_add(std::uint64_t a, std::uint64_t b) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a) {
        return std::nullopt;
    }
    return a + b;
}
inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::nullopt;
    }
    return a * b;
}

/// Total map from (product) vertices to ranks.
using Ranking = std::vector<Rank>;

} // namespace wlg
