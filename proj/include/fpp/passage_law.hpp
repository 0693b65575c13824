#pragma once

#include <compare>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fpp/lattice.hpp"

namespace fpp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A passage time in [0, +inf]. Never negative, never NaN.
class ExtendedTime {
public:
    constexpr ExtendedTime() = default;
    explicit ExtendedTime(double value);

    static constexpr ExtendedTime infinity() { return ExtendedTime(kInfinity, Unchecked{}); }
    static constexpr ExtendedTime zero() { return ExtendedTime(); }

    constexpr double value() const { return value_; }
    constexpr bool is_finite() const { return value_ < kInfinity; }

    friend constexpr ExtendedTime operator+(ExtendedTime a, ExtendedTime b)
    {
        return ExtendedTime(a.value_ + b.value_, Unchecked{});
    }
    constexpr auto operator<=>(const ExtendedTime&) const = default;

    std::string to_string() const;

private:
    struct Unchecked {};
    constexpr ExtendedTime(double v, Unchecked) : value_(v) {}
    double value_ = 0.0;
};

struct ConstantPart {
    double value = 1.0;
    bool operator==(const ConstantPart&) const = default;
};
struct UniformPart {
    double low = 0.0;
    double high = 1.0;
    bool operator==(const UniformPart&) const = default;
};
struct ExponentialPart {
    double rate = 1.0;
    bool operator==(const ExponentialPart&) const = default;
};
/// Finite atoms as (value, weight); weights are normalised on construction of the law.
struct AtomsPart {
    std::vector<std::pair<double, double>> atoms;
    bool operator==(const AtomsPart&) const = default;
};

using FinitePart = std::variant<ConstantPart, UniformPart, ExponentialPart, AtomsPart>;

/// F = p_zero * delta_0 + p_finite * G + p_inf * delta_inf, where G is the
/// finite part optionally capped by min(., cap).
///
/// quantile() lays the mixture out on [0,1) as zero atom, finite part, infinite
/// atom, so every transform of a law stays coupled to the same uniforms.
class PassageLaw {
public:
    PassageLaw(double p_zero, double p_inf, FinitePart finite, double cap = kInfinity);

    static PassageLaw dirac(double value) { return PassageLaw(0.0, 0.0, ConstantPart{value}); }

    double p_zero() const { return p_zero_; }
    double p_inf() const { return p_inf_; }
    double p_finite() const { return 1.0 - p_zero_ - p_inf_; }
    const FinitePart& finite_part() const { return finite_; }
    double cap() const { return cap_; }

    /// Generalised inverse CDF; u must lie in [0,1).
    ExtendedTime quantile(double u) const;
    /// Unchecked hot-path variant of quantile(); returns +inf as a double.
    double sample(double u) const noexcept
    {
        if (u < p_zero_) return 0.0;
        if (u >= 1.0 - p_inf_) return kInfinity;
        return finite_quantile((u - p_zero_) / p_finite());
    }

    /// F([0, m]).
    double cdf(double m) const;
    /// F((0, m]).
    double finite_mass_at_most(double m) const;

    /// git-style blob SHA-1 of the canonical JSON serialisation.
    std::string content_hash() const;

    bool operator==(const PassageLaw&) const = default;

private:
    double finite_quantile(double v) const noexcept;
    double finite_cdf(double m) const;

    double p_zero_;
    double p_inf_;
    FinitePart finite_;
    double cap_;
};

/// min(t, k) on the zero atom and the finite part; the infinite atom is kept.
PassageLaw truncate(const PassageLaw& law, double k);
/// (1 - p_inf) delta_1 + p_inf delta_inf.
PassageLaw binarize(const PassageLaw& law);
/// F({0}) delta_0 + F((0,K]) delta_K + F((K,inf]) delta_inf.
PassageLaw three_level(const PassageLaw& law, double K);
/// p_c delta_0 + eta delta_K + (1 - p_c - eta) delta_inf.
PassageLaw critical_atom_law(double K, double eta, double p_c);

/// Pathwise form of the law transforms, applied to a single realised time.
struct LawTransform {
    enum class Kind { truncate, binarize, three_level };
    Kind kind = Kind::binarize;
    double parameter = 0.0;

    static LawTransform truncate_at(double k) { return {Kind::truncate, k}; }
    static LawTransform binarized() { return {Kind::binarize, 0.0}; }
    static LawTransform three_level_at(double K) { return {Kind::three_level, K}; }

    double apply(double t) const noexcept
    {
        switch (kind) {
        case Kind::truncate: return t < parameter ? t : (t < kInfinity ? parameter : t);
        case Kind::binarize: return t < kInfinity ? 1.0 : kInfinity;
        case Kind::three_level: return t == 0.0 ? 0.0 : (t <= parameter ? parameter : kInfinity);
        }
        return t;
    }
    PassageLaw apply(const PassageLaw& law) const;
    void validate() const;
};

nlohmann::json law_to_json(const PassageLaw& law);
/// Throws std::invalid_argument with a JSON-pointer-style location on schema errors.
PassageLaw law_from_json(const nlohmann::json& j);

} // namespace fpp
