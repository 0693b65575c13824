#include "fpp/passage_law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <openssl/evp.h>

namespace fpp {
namespace {

constexpr double kProbabilityTolerance = 1e-12;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_finite_part(FinitePart& part)
{
    std::visit(Overloaded{
                   [](const ConstantPart& c) {
                       if (!(c.value > 0.0 && std::isfinite(c.value)))
                           throw DomainError("constant finite part must be positive and finite");
                   },
                   [](const UniformPart& u) {
                       if (!(u.low >= 0.0 && u.high > u.low && std::isfinite(u.high)))
                           throw DomainError("uniform finite part needs 0 <= low < high < inf");
                   },
                   [](const ExponentialPart& e) {
                       if (!(e.rate > 0.0 && std::isfinite(e.rate)))
                           throw DomainError("exponential rate must be positive and finite");
                   },
                   [](AtomsPart& a) {
                       if (a.atoms.empty()) throw DomainError("atoms finite part needs at least one atom");
                       double total = 0.0;
                       for (auto [v, w] : a.atoms) {
                           if (!(v > 0.0 && std::isfinite(v))) throw DomainError("atom values must be positive and finite");
                           if (!(w > 0.0 && std::isfinite(w))) throw DomainError("atom weights must be positive");
                           total += w;
                       }
                       std::map<double, double> merged;
                       for (auto [v, w] : a.atoms) merged[v] += w / total;
                       a.atoms.assign(merged.begin(), merged.end());
                   },
               },
               part);
}

} // namespace

ExtendedTime::ExtendedTime(double value) : value_(value)
{
    if (std::isnan(value) || value < 0.0) throw DomainError("passage times must lie in [0, +inf]");
}

std::string ExtendedTime::to_string() const
{
    if (!is_finite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value_);
    return buf;
}

PassageLaw::PassageLaw(double p_zero, double p_inf, FinitePart finite, double cap)
    : p_zero_(p_zero), p_inf_(p_inf), finite_(std::move(finite)), cap_(cap)
{
    if (!is_probability(p_zero) || !is_probability(p_inf))
        throw DomainError("atom probabilities must lie in [0,1]");
    const double pf = 1.0 - p_zero - p_inf;
    if (pf < -kProbabilityTolerance) throw DomainError("p_zero + p_inf exceeds 1");
    if (pf < 0.0) p_inf_ = 1.0 - p_zero_;
    if (!(cap > 0.0) || std::isnan(cap)) throw DomainError("cap must be positive");
    validate_finite_part(finite_);
}

double PassageLaw::finite_quantile(double v) const noexcept
{
    if (v >= 1.0) v = std::nextafter(1.0, 0.0);
    const double x = std::visit(Overloaded{
                                    [](const ConstantPart& c) { return c.value; },
                                    [v](const UniformPart& u) { return u.low + v * (u.high - u.low); },
                                    [v](const ExponentialPart& e) { return -std::log1p(-v) / e.rate; },
                                    [v](const AtomsPart& a) {
                                        double acc = 0.0;
                                        for (auto [value, w] : a.atoms) {
                                            acc += w;
                                            if (v < acc) return value;
                                        }
                                        return a.atoms.back().first;
                                    },
                                },
                                finite_);
    return std::min(x, cap_);
}

double PassageLaw::finite_cdf(double m) const
{
    if (m >= cap_) return 1.0;
    return std::visit(Overloaded{
                          [m](const ConstantPart& c) { return m >= c.value ? 1.0 : 0.0; },
                          [m](const UniformPart& u) { return std::clamp((m - u.low) / (u.high - u.low), 0.0, 1.0); },
                          [m](const ExponentialPart& e) { return m <= 0.0 ? 0.0 : -std::expm1(-e.rate * m); },
                          [m](const AtomsPart& a) {
                              double acc = 0.0;
                              for (auto [value, w] : a.atoms)
                                  if (value <= m) acc += w;
                              return std::min(acc, 1.0);
                          },
                      },
                      finite_);
}

ExtendedTime PassageLaw::quantile(double u) const
{
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile level must lie in [0,1)");
    const double t = sample(u);
    return t < kInfinity ? ExtendedTime(t) : ExtendedTime::infinity();
}

double PassageLaw::finite_mass_at_most(double m) const
{
    if (m <= 0.0) return 0.0;
    if (m == kInfinity) return p_finite();
    return p_finite() * finite_cdf(m);
}

double PassageLaw::cdf(double m) const
{
    if (m < 0.0) return 0.0;
    if (m == kInfinity) return 1.0;
    return p_zero_ + finite_mass_at_most(m);
}

std::string PassageLaw::content_hash() const
{
    const std::string body = law_to_json(*this).dump();
    const std::string blob = "blob " + std::to_string(body.size()) + '\0' + body;
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

PassageLaw truncate(const PassageLaw& law, double k)
{
    if (!(k > 0.0)) throw DomainError("truncation level must be positive");
    if (const auto* c = std::get_if<ConstantPart>(&law.finite_part()))
        return PassageLaw(law.p_zero(), law.p_inf(), ConstantPart{std::min(c->value, k)});
    if (const auto* a = std::get_if<AtomsPart>(&law.finite_part())) {
        AtomsPart clipped = *a;
        for (auto& atom : clipped.atoms) atom.first = std::min(atom.first, k);
        return PassageLaw(law.p_zero(), law.p_inf(), std::move(clipped));
    }
    return PassageLaw(law.p_zero(), law.p_inf(), law.finite_part(), std::min(law.cap(), k));
}

PassageLaw binarize(const PassageLaw& law)
{
    return PassageLaw(0.0, law.p_inf(), ConstantPart{1.0});
}

PassageLaw three_level(const PassageLaw& law, double K)
{
    if (!(K > 0.0)) throw DomainError("three-level cut K must be positive");
    const double mid = law.finite_mass_at_most(K);
    return PassageLaw(law.p_zero(), std::max(0.0, 1.0 - law.p_zero() - mid), ConstantPart{K});
}

PassageLaw critical_atom_law(double K, double eta, double p_c)
{
    if (!(K > 0.0)) throw DomainError("K must be positive");
    if (!(eta > 0.0) || !is_probability(p_c) || p_c + eta > 1.0 + kProbabilityTolerance)
        throw DomainError("critical atom law needs eta > 0 and p_c + eta <= 1");
    return PassageLaw(p_c, std::max(0.0, 1.0 - p_c - eta), ConstantPart{K});
}

void LawTransform::validate() const
{
    if (kind != Kind::binarize && !(parameter > 0.0))
        throw DomainError("law transform parameter must be positive");
}

PassageLaw LawTransform::apply(const PassageLaw& law) const
{
    validate();
    switch (kind) {
    case Kind::truncate: return truncate(law, parameter);
    case Kind::binarize: return binarize(law);
    case Kind::three_level: return three_level(law, parameter);
    }
    return law;
}

nlohmann::json law_to_json(const PassageLaw& law)
{
    nlohmann::json finite = std::visit(
        Overloaded{
            [](const ConstantPart& c) { return nlohmann::json{{"kind", "constant"}, {"value", c.value}}; },
            [](const UniformPart& u) { return nlohmann::json{{"kind", "uniform"}, {"low", u.low}, {"high", u.high}}; },
            [](const ExponentialPart& e) { return nlohmann::json{{"kind", "exponential"}, {"rate", e.rate}}; },
            [](const AtomsPart& a) {
                nlohmann::json atoms = nlohmann::json::array();
                for (auto [v, w] : a.atoms) atoms.push_back({v, w});
                return nlohmann::json{{"kind", "atoms"}, {"atoms", atoms}};
            },
        },
        law.finite_part());
    nlohmann::json j{{"p_zero", law.p_zero()}, {"p_inf", law.p_inf()}, {"finite", finite}};
    if (law.cap() < kInfinity) j["cap"] = law.cap();
    return j;
}

namespace {

double number_at(const nlohmann::json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) throw ConfigError(where + "/" + key, "missing required number");
    if (!j.at(key).is_number()) throw ConfigError(where + "/" + key, "expected a number");
    return j.at(key).get<double>();
}

} // namespace

PassageLaw law_from_json(const nlohmann::json& j)
{
    const std::string where = "/law";
    if (!j.is_object()) throw ConfigError(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        if (key != "p_zero" && key != "p_inf" && key != "finite" && key != "cap")
            throw ConfigError(where + "/" + key, "unknown law field");
    }
    const double p_zero = j.contains("p_zero") ? number_at(j, "p_zero", where) : 0.0;
    const double p_inf = j.contains("p_inf") ? number_at(j, "p_inf", where) : 0.0;
    const double cap = j.contains("cap") ? number_at(j, "cap", where) : kInfinity;
    if (!j.contains("finite")) throw ConfigError(where + "/finite", "missing finite part");
    const auto& f = j.at("finite");
    const std::string fw = where + "/finite";
    if (!f.is_object() || !f.contains("kind") || !f.at("kind").is_string())
        throw ConfigError(fw, "finite part needs a string 'kind'");
    const std::string kind = f.at("kind").get<std::string>();
    FinitePart part;
    if (kind == "constant") {
        part = ConstantPart{number_at(f, "value", fw)};
    } else if (kind == "uniform") {
        part = UniformPart{number_at(f, "low", fw), number_at(f, "high", fw)};
    } else if (kind == "exponential") {
        part = ExponentialPart{number_at(f, "rate", fw)};
    } else if (kind == "atoms") {
        if (!f.contains("atoms") || !f.at("atoms").is_array())
            throw ConfigError(fw + "/atoms", "expected an array of [value, weight] pairs");
        AtomsPart atoms;
        std::size_t i = 0;
        for (const auto& a : f.at("atoms")) {
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
                throw ConfigError(fw + "/atoms/" + std::to_string(i), "expected [value, weight]");
            atoms.atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
            ++i;
        }
        part = std::move(atoms);
    } else {
        throw ConfigError(fw + "/kind", "unknown finite part kind '" + kind + "'");
    }
    try {
        return PassageLaw(p_zero, p_inf, std::move(part), cap);
    } catch (const DomainError& e) {
        throw ConfigError(where, e.what());
    }
}

} // namespace fpp
