#pragma once

// Basic value types shared by every module: the integer time axis, exact
// percentages, and the error/result idiom used across the library.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace rtreconf {

// All temporal quantities (costs, periods, deadlines, response times,
// simulation clock) are exact non-negative integer ticks. The physical
// meaning of one tick (microseconds, milliseconds, ...) is scenario
// metadata and never enters any computation.
using Tick = std::int64_t;

// Rounded-up integer division. Requires a >= 0, b > 0.
constexpr Tick ceil_div(Tick a, Tick b) { return (a + b - 1) / b; }

// An exact percentage expressed as the fraction num/den (so {75, 10} is
// 7.5%). Keeping percentages rational avoids floating-point ambiguity in
// budget and tolerance comparisons.
struct Percent {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Percent of(std::int64_t whole) { return Percent{whole, 1}; }

    // Parses "20", "7.5", "0.25" into an exact fraction. Returns nullopt
    // for anything that is not a plain non-negative decimal literal.
    static std::optional<Percent> parse(const std::string& text);

    bool operator==(const Percent&) const = default;

    // this <= other, exact.
    bool less_equal(const Percent& other) const;

    double as_double() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
};

enum class Errc {
    duplicate_id,
    unknown_id,
    invalid_params,
    dangling_binding,
    port_in_use,
    missing_binding,
    duplicate_required_port,
    port_drop,
    duplicate_kind,
    unknown_kind,
    bad_payload,
    bad_argument,
    io_error,
};

const char* errc_name(Errc c);

struct Error {
    Errc code;
    std::string message;
};

// Minimal expected-style result. Operations that can fail return
// Result<T>; failures carry an Errc plus a human-readable message.
template <typename T>
class Result {
  public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error err) : v_(std::move(err)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    const T& value() const& { return std::get<T>(v_); }
    T& value() & { return std::get<T>(v_); }
    T&& value() && { return std::get<T>(std::move(v_)); }

    const Error& error() const { return std::get<Error>(v_); }

  private:
    std::variant<T, Error> v_;
};

template <>
class Result<void> {
  public:
    Result() : err_(std::nullopt) {}
    Result(Error err) : err_(std::move(err)) {}

    bool ok() const { return !err_.has_value(); }
    explicit operator bool() const { return ok(); }
    const Error& error() const { return *err_; }

  private:
    std::optional<Error> err_;
};

template <typename T>
Result<T> fail(Errc code, std::string message) {
    return Result<T>(Error{code, std::move(message)});
}

} // namespace rtreconf
