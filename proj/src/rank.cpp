#include "wlg/rank.hpp"

#include <charconv>

#include "wlg/errors.hpp"

namespace wlg {

std::uint64_t Rank::value() const {
    if (is_infinite()) {
        throw InvariantError("Rank::value() called on INFINITY");
    }
    return value_;
}

std::string Rank::to_string() const {
    return is_infinite() ? std::string("INFINITY") : std::to_string(value_);
}

Rank rank_add(Rank r, Weight w) {
    if (r.is_infinite()) {
        return r;
    }
    const std::uint64_t v = r.value();
    if (w > Rank::kMaxFinite - v) {
        throw std::overflow_error("rank_add: " + std::to_string(v) + " + " + std::to_string(w) +
                                  " exceeds the finite rank range");
    }
    return Rank(v + w);
}

std::ostream& operator<<(std::ostream& os, Rank r) { return os << r.to_string(); }

Rank parse_rank(const std::string& text) {
    if (text == "inf" || text == "INFINITY" || text == "infinity") {
        return kInfinity;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v > Rank::kMaxFinite) {
        throw InputError("not a rank: '" + text + "'");
    }
    return Rank(v);
}

} // namespace wlg
