#include "rtreconf/types.hpp"

#include <cctype>
#include <numeric>

namespace rtreconf {

std::optional<Percent> Percent::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    std::int64_t den = 1;
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < text.size() && text[i] != '.'; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        if (whole > (INT64_MAX - 9) / 10) return std::nullopt;
        whole = whole * 10 + (text[i] - '0');
        any_digit = true;
    }
    if (i < text.size()) { // fractional part
        ++i;
        if (i == text.size()) return std::nullopt;
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
            if (den > INT64_MAX / 10 || frac > (INT64_MAX - 9) / 10) return std::nullopt;
            frac = frac * 10 + (text[i] - '0');
            den *= 10;
            any_digit = true;
        }
    }
    if (!any_digit) return std::nullopt;
    if (whole > (INT64_MAX - frac) / den) return std::nullopt;
    std::int64_t num = whole * den + frac;
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Percent{num, den};
}

bool Percent::less_equal(const Percent& other) const {
    return static_cast<__int128>(num) * other.den <= static_cast<__int128>(other.num) * den;
}

std::string Percent::to_string() const {
    if (den == 1) return std::to_string(num) + "%";
    return std::to_string(num) + "/" + std::to_string(den) + "%";
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::duplicate_id: return "duplicate-id";
        case Errc::unknown_id: return "unknown-id";
        case Errc::invalid_params: return "invalid-params";
        case Errc::dangling_binding: return "dangling-binding";
        case Errc::port_in_use: return "port-in-use";
        case Errc::missing_binding: return "missing-binding";
        case Errc::duplicate_required_port: return "duplicate-required-port";
        case Errc::port_drop: return "port-drop";
        case Errc::duplicate_kind: return "duplicate-kind";
        case Errc::unknown_kind: return "unknown-kind";
        case Errc::bad_payload: return "bad-payload";
        case Errc::bad_argument: return "bad-argument";
        case Errc::io_error: return "io-error";
    }
    return "unknown";
}

} // namespace rtreconf
