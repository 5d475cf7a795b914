#pragma once

#include <cstdint>
#include <string_view>

namespace oddjac {

/// Grassmann parity, an element of Z/2.
enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr Parity& operator+=(Parity& a, Parity b) noexcept { return a = a + b; }

constexpr bool is_odd(Parity p) noexcept { return p == Parity::odd; }

constexpr int bit(Parity p) noexcept { return static_cast<int>(p); }

constexpr Parity parity_from_bit(int b) noexcept { return (b & 1) ? Parity::odd : Parity::even; }

/// (-1)^n
constexpr int sign_pow(int n) noexcept { return (n & 1) ? -1 : 1; }

/// Koszul sign (-1)^{a b} for swapping objects of parity a and b.
constexpr int koszul(Parity a, Parity b) noexcept { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

constexpr std::string_view to_string(Parity p) noexcept { return is_odd(p) ? "odd" : "even"; }

}  // namespace oddjac
