#include "dcopkit/valuation.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "dcopkit/errors.hpp"

namespace dcopkit {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw DomainError("malformed rational '" + std::string(whole) + "'");
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty()) throw DomainError("malformed rational '" + std::string(whole) + "'");
  Integer result = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw DomainError("malformed rational '" + std::string(whole) + "'");
    result = result * 10 + (ch - '0');
  }
  return negative ? Integer(-result) : result;
}

}  // namespace

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-')
    throw DomainError("malformed rational '" + std::string(text) + "'");
  const Integer den = parse_integer(den_text, text);
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

const Rational& Cost::value() const {
  if (maximal_) throw DomainError("maximal cost has no finite value");
  return value_;
}

bool operator==(const Cost& a, const Cost& b) {
  if (a.maximal_ || b.maximal_) return a.maximal_ == b.maximal_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
  if (a.maximal_ || b.maximal_) return a.maximal_ <=> b.maximal_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Cost operator+(const Cost& a, const Cost& b) {
  if (a.maximal_ || b.maximal_) return Cost::maximal();
  return Cost(a.value_ + b.value_);
}

Cost Cost::scaled(const Rational& factor) const {
  if (factor == 0) return Cost{};
  if (maximal_) return *this;
  return Cost(value_ * factor);
}

std::string Cost::str() const { return maximal_ ? "inf" : to_string(value_); }

Cost Cost::parse(std::string_view text) {
  if (text == "inf") return maximal();
  return Cost(parse_rational(text));
}

std::string_view name(ValueSystem system) {
  switch (system) {
    case ValueSystem::Boolean: return "Boolean";
    case ValueSystem::Fuzzy: return "Fuzzy";
    case ValueSystem::Weighted: return "Weighted";
    case ValueSystem::Probabilistic: return "Probabilistic";
  }
  return "?";
}

std::string_view name(Objective objective) {
  switch (objective) {
    case Objective::Utilitarian: return "Utilitarian";
    case Objective::Leximin: return "Leximin";
    case Objective::Theil: return "Theil";
  }
  return "?";
}

Cost top(ValueSystem system) {
  return system == ValueSystem::Probabilistic ? Cost(1) : Cost::maximal();
}

bool is_legal(const Cost& c, ValueSystem system) {
  switch (system) {
    case ValueSystem::Boolean:
      return c.is_maximal() || c.value() == 0;
    case ValueSystem::Fuzzy:
    case ValueSystem::Weighted:
      return c.is_maximal() || c.value() >= 0;
    case ValueSystem::Probabilistic:
      return !c.is_maximal() && c.value() >= 0 && c.value() <= 1;
  }
  return false;
}

void require_legal(const Cost& c, ValueSystem system) {
  if (!is_legal(c, system))
    throw DomainError("cost " + c.str() + " is outside the legal range of the " +
                      std::string(name(system)) + " value system");
}

Cost aggregate(std::span<const Cost> costs, ValueSystem system) {
  for (const Cost& c : costs) require_legal(c, system);
  switch (system) {
    case ValueSystem::Weighted: {
      Cost sum;
      for (const Cost& c : costs) sum += c;
      return sum;
    }
    case ValueSystem::Boolean: {
      const bool violated = std::any_of(costs.begin(), costs.end(),
                                        [](const Cost& c) { return c.is_maximal(); });
      return violated ? Cost::maximal() : Cost{};
    }
    case ValueSystem::Fuzzy: {
      Cost worst;
      for (const Cost& c : costs) worst = std::max(worst, c);
      return worst;
    }
    case ValueSystem::Probabilistic: {
      Rational survive = 1;
      for (const Cost& c : costs) survive *= (1 - c.value());
      return Cost(Rational(1 - survive));
    }
  }
  return Cost{};
}

void require_supported(Objective objective) {
  if (objective == Objective::Theil)
    throw UnsupportedObjective("unsupported objective: Theil index");
}

std::strong_ordering compare(std::span<const Cost> a, std::span<const Cost> b,
                             Objective objective, ValueSystem system) {
  require_supported(objective);
  if (a.size() != b.size())
    throw ShapeError("cannot compare cost vectors of length " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  if (objective == Objective::Utilitarian) return aggregate(a, system) <=> aggregate(b, system);

  for (const Cost& c : a) require_legal(c, system);
  for (const Cost& c : b) require_legal(c, system);
  std::vector<Cost> sa(a.begin(), a.end());
  std::vector<Cost> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end(), std::greater<>());
  std::sort(sb.begin(), sb.end(), std::greater<>());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (auto ord = sa[i] <=> sb[i]; ord != 0) return ord;
  }
  return std::strong_ordering::equal;
}

}  // namespace dcopkit
