#include "fpp/edge_field.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

#include "fpp/random.hpp"

namespace fpp {

EdgeField::EdgeField(Box box, PassageLaw law, std::uint64_t seed)
    : box_(std::move(box)), law_(std::move(law)), seed_(seed),
      times_(box_.vertex_count() * static_cast<std::size_t>(box_.dimension()), kInfinity)
{
}

EdgeField EdgeField::generate(const Box& box, const PassageLaw& law, std::uint64_t seed)
{
    EdgeField f(box, law, seed);
    const int d = box.dimension();
    for (std::size_t v = 0; v < box.vertex_count(); ++v) {
        for (int a = 0; a < d; ++a) {
            if (!box.has_edge(v, a)) continue;
            const double u = to_unit(hash_pair(seed, box.edge_index(v, a)));
            f.times_[v * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] = law.sample(u);
        }
    }
    return f;
}

EdgeField EdgeField::from_function(const Box& box, const PassageLaw& law, const std::function<double(const Edge&)>& time_of)
{
    EdgeField f(box, law, 0);
    for (std::size_t i = 0; i < box.edge_count(); ++i) {
        const Edge e = box.edge(i);
        const double t = ExtendedTime(time_of(e)).value();
        f.times_[box.index(e.base) * static_cast<std::size_t>(box.dimension()) + static_cast<std::size_t>(e.axis)] = t;
    }
    return f;
}

ExtendedTime EdgeField::time_of(const Edge& e) const
{
    const std::size_t i = box_.edge_index(e); // validates
    (void)i;
    const double t = time(box_.index(e.base), e.axis);
    return t < kInfinity ? ExtendedTime(t) : ExtendedTime::infinity();
}

ExtendedTime EdgeField::time_by_index(std::size_t canonical_index) const { return time_of(box_.edge(canonical_index)); }

std::vector<double> EdgeField::canonical_times() const
{
    std::vector<double> out(box_.edge_count());
    const int d = box_.dimension();
    for (std::size_t v = 0; v < box_.vertex_count(); ++v)
        for (int a = 0; a < d; ++a)
            if (box_.has_edge(v, a)) out[box_.edge_index(v, a)] = time(v, a);
    return out;
}

EdgeField map_times(const EdgeField& field, const LawTransform& transform)
{
    EdgeField out(field.box_, transform.apply(field.law_), field.seed_);
    // every transform fixes +inf, so absent-edge slots stay absent
    for (std::size_t i = 0; i < field.times_.size(); ++i) out.times_[i] = transform.apply(field.times_[i]);
    return out;
}

namespace {

constexpr char kMagic[8] = {'F', 'P', 'P', 'F', 'I', 'E', 'L', 'D'};
constexpr std::uint32_t kDumpVersion = 1;

template <class T>
void put_le(std::ostream& out, T value)
{
    static_assert(std::is_unsigned_v<T>);
    unsigned char bytes[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in)
{
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw std::runtime_error("truncated field dump");
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
    return value;
}

} // namespace

std::uint64_t law_hash64(const PassageLaw& law) { return std::stoull(law.content_hash().substr(0, 16), nullptr, 16); }

void write_field_dump(const EdgeField& field, std::ostream& out)
{
    out.write(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, kDumpVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.box().dimension()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.box().half_width()));
    put_le<std::uint64_t>(out, field.seed());
    put_le<std::uint64_t>(out, law_hash64(field.law()));
    const auto times = field.canonical_times();
    put_le<std::uint64_t>(out, times.size());
    for (double t : times) {
        const double stored = t < kInfinity ? t : std::numeric_limits<double>::max();
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(stored));
    }
}

FieldDump read_field_dump(std::istream& in)
{
    char magic[sizeof kMagic];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("not a field dump");
    if (get_le<std::uint32_t>(in) != kDumpVersion) throw std::runtime_error("unsupported field dump version");
    FieldDump dump;
    dump.dimension = static_cast<int>(get_le<std::uint32_t>(in));
    dump.half_width = static_cast<int>(get_le<std::uint32_t>(in));
    dump.seed = get_le<std::uint64_t>(in);
    dump.law_hash = get_le<std::uint64_t>(in);
    const auto count = get_le<std::uint64_t>(in);
    dump.times.resize(count);
    for (auto& t : dump.times) {
        t = std::bit_cast<double>(get_le<std::uint64_t>(in));
        if (t == std::numeric_limits<double>::max()) t = kInfinity;
    }
    return dump;
}

} // namespace fpp
