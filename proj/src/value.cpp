#include "incmeter/value.hpp"

#include <charconv>

#include "incmeter/error.hpp"

namespace incmeter {

Value Value::of(std::int64_t v) {
    if (v < 0) throw Error("negative inconsistency value");
    Value r;
    r.v_ = v;
    return r;
}

Value Value::infinity() {
    Value r;
    r.inf_ = true;
    return r;
}

std::int64_t Value::get() const {
    if (inf_) throw Error("value is infinite");
    return v_;
}

std::string Value::str() const { return inf_ ? "inf" : std::to_string(v_); }

std::optional<Value> Value::parse(std::string_view s) {
    if (s == "inf") return infinity();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 0) return std::nullopt;
    return of(v);
}

bool Value::operator<(const Value& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return v_ < o.v_;
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::Contension: return "contension";
        case Measure::Forgetting: return "forgetting";
        case Measure::HittingSet: return "hitting-set";
        case Measure::MaxDistance: return "max-distance";
        case Measure::SumDistance: return "sum-distance";
        case Measure::HitDistance: return "hit-distance";
    }
    return "?";
}

std::optional<Measure> parse_measure(std::string_view s) {
    for (auto m : kAllMeasures)
        if (measure_name(m) == s) return m;
    if (s == "c") return Measure::Contension;
    if (s == "f") return Measure::Forgetting;
    if (s == "hs") return Measure::HittingSet;
    if (s == "dmax") return Measure::MaxDistance;
    if (s == "dsum") return Measure::SumDistance;
    if (s == "dhit") return Measure::HitDistance;
    return std::nullopt;
}

}  // namespace incmeter
