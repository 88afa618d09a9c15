#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcopkit {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// "a/b" or "a" in lowest terms.
std::string to_string(const Rational& r);
// Accepts "a", "-a", "a/b"; throws DomainError on malformed text or a zero
// denominator.
Rational parse_rational(std::string_view text);

// A valuation: an exact non-negative rational or the distinguished maximal
// element (hard violation). The maximal element compares above every finite
// value.
class Cost {
 public:
  Cost() = default;
  Cost(Rational value) : value_(std::move(value)) {}  // NOLINT
  Cost(std::int64_t value) : value_(value) {}          // NOLINT

  static Cost maximal() {
    Cost c;
    c.maximal_ = true;
    return c;
  }

  bool is_maximal() const noexcept { return maximal_; }
  // Precondition: !is_maximal().
  const Rational& value() const;

  friend bool operator==(const Cost& a, const Cost& b);
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b);

  // Plain rational addition; maximal absorbs.
  friend Cost operator+(const Cost& a, const Cost& b);
  Cost& operator+=(const Cost& other) { return *this = *this + other; }
  // Scales by a probability in [0,1]; maximal * 0 = 0.
  Cost scaled(const Rational& factor) const;

  // "inf" for the maximal element, otherwise to_string(value).
  std::string str() const;
  static Cost parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Cost& c) { return os << c.str(); }

 private:
  Rational value_{0};
  bool maximal_ = false;
};

enum class ValueSystem { Boolean, Fuzzy, Weighted, Probabilistic };
enum class Objective { Utilitarian, Leximin, Theil };

std::string_view name(ValueSystem system);
std::string_view name(Objective objective);

// Top of the system's order: the hard-violation element. Probabilistic uses
// certain violation (1); the other kinds use Cost::maximal().
Cost top(ValueSystem system);
bool is_legal(const Cost& c, ValueSystem system);
// Throws DomainError naming the system when !is_legal.
void require_legal(const Cost& c, ValueSystem system);

// Weighted: sum. Boolean: maximal if any input is maximal, else 0. Fuzzy:
// maximum. Probabilistic: 1 - prod(1 - p). The empty collection gives 0.
Cost aggregate(std::span<const Cost> costs, ValueSystem system);

// Utilitarian compares the aggregates; Leximin sorts each vector worst-first
// and compares lexicographically. Theil throws UnsupportedObjective, a length
// mismatch throws ShapeError.
std::strong_ordering compare(std::span<const Cost> a, std::span<const Cost> b,
                             Objective objective, ValueSystem system);

// Throws UnsupportedObjective for Theil.
void require_supported(Objective objective);

}  // namespace dcopkit
