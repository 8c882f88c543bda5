#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace incmeter {

// Non-negative integer or infinity.
class Value {
  public:
    Value() = default;
    static Value of(std::int64_t v);
    static Value infinity();

    bool is_infinite() const { return inf_; }
    std::int64_t get() const;
    std::string str() const;  // "inf" for infinity
    static std::optional<Value> parse(std::string_view s);

    bool operator==(const Value&) const = default;
    bool operator<(const Value& o) const;
    bool operator<=(const Value& o) const { return !(o < *this); }

  private:
    bool inf_ = false;
    std::int64_t v_ = 0;
};

enum class Measure { Contension, Forgetting, HittingSet, MaxDistance, SumDistance, HitDistance };

inline constexpr Measure kAllMeasures[] = {Measure::Contension,  Measure::Forgetting,  Measure::HittingSet,
                                           Measure::MaxDistance, Measure::SumDistance, Measure::HitDistance};

std::string_view measure_name(Measure m);
// Accepts the long names and the short forms c, f, hs, dmax, dsum, dhit.
std::optional<Measure> parse_measure(std::string_view s);

}  // namespace incmeter
