#include "pcong/cache.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <openssl/sha.h>
#include <unistd.h>

#include "pcong/error.hpp"
#include "pcong/modarith.hpp"
#include "pcong/partitions.hpp"
#include "pcong/treneer.hpp"

namespace pcong {

namespace {

constexpr char kMagic[4] = {'Q', 'S', 'C', '1'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v)
{
    static_assert(std::endian::native == std::endian::little, "record layout assumes a little-endian host");
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is)
{
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("truncated series record");
    return v;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::mutex& tag_mutex(const std::string& key)
{
    static std::mutex guard;
    static std::map<std::string, std::mutex> locks;
    const std::lock_guard<std::mutex> lock(guard);
    return locks[key];
}

std::vector<std::string> split_tag(const std::string& tag)
{
    std::vector<std::string> parts;
    std::stringstream ss(tag);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    return parts;
}

std::uint64_t tag_number(const std::string& s, const std::string& tag)
{
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw DomainError("malformed cache tag '" + tag + "'");
}

struct ParsedEntry {
    CacheEntry entry;
    std::string record;
};

ParsedEntry parse_file(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    if (bytes.size() < 32 + 2 + 8) throw Error("cache file too short");
    const std::string body = bytes.substr(0, bytes.size() - 32);
    Digest stored;
    std::copy(bytes.end() - 32, bytes.end(), stored.begin());
    if (sha256(body) != stored) throw Error("checksum mismatch");
    std::int64_t created = 0;
    std::memcpy(&created, body.data() + body.size() - 8, 8);
    // Walk back over the trailer to find the tag.
    std::istringstream is(body);
    const auto s = read_record(is);
    const auto tag_len = get<std::uint16_t>(is);
    std::string tag(tag_len, '\0');
    if (!is.read(tag.data(), tag_len)) throw Error("truncated cache trailer");
    ParsedEntry out;
    out.entry.tag = tag;
    out.entry.ring = s.ring();
    out.entry.truncation = s.truncation();
    out.entry.path = path;
    out.entry.checksum = stored;
    out.entry.created_at = created;
    return out;
}

} // namespace

void write_record(std::ostream& os, const QSeries& s)
{
    os.write(kMagic, 4);
    put<std::uint8_t>(os, kVersion);
    put<std::uint8_t>(os, static_cast<std::uint8_t>(s.ring().kind()));
    put<std::uint64_t>(os, s.ring().modulus());
    put<std::uint32_t>(os, s.grain());
    put<std::int64_t>(os, s.start());
    put<std::int64_t>(os, s.truncation());
    if (s.is_modular()) {
        for (const auto c : s.residues()) put<std::uint64_t>(os, c);
        return;
    }
    std::vector<std::uint8_t> buf;
    for (const auto& c : s.integers()) {
        const std::size_t n = (mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8;
        buf.assign(n, 0);
        std::size_t written = 0;
        if (c != 0) mpz_export(buf.data(), &written, -1, 1, -1, 0, c.get_mpz_t());
        put<std::uint32_t>(os, static_cast<std::uint32_t>(1 + written));
        put<std::uint8_t>(os, c < 0 ? 1 : 0);
        os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(written));
    }
}

QSeries read_record(std::istream& is)
{
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw Error("not a series record");
    if (get<std::uint8_t>(is) != kVersion) throw Error("unsupported series record version");
    const auto tag = get<std::uint8_t>(is);
    const auto modulus = get<std::uint64_t>(is);
    const auto grain = get<std::uint32_t>(is);
    const auto start = get<std::int64_t>(is);
    const auto trunc = get<std::int64_t>(is);
    if (tag > 1 || grain == 0 || trunc < start) throw Error("corrupt series record header");
    const auto n = static_cast<std::size_t>(trunc - start);
    if (tag == 1) {
        const Ring ring = Ring::modular(modulus);
        QSeries::Residues c(n);
        if (n > 0 && !is.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(8 * n)))
            throw Error("truncated series record");
        for (const auto x : c)
            if (x >= modulus) throw Error("residue out of range in series record");
        return QSeries(ring, grain, start, trunc, std::move(c));
    }
    QSeries::Integers c(n);
    std::vector<std::uint8_t> buf;
    for (auto& x : c) {
        const auto len = get<std::uint32_t>(is);
        if (len < 1) throw Error("corrupt integer coefficient");
        const auto sign = get<std::uint8_t>(is);
        buf.resize(len - 1);
        if (len > 1 && !is.read(reinterpret_cast<char*>(buf.data()), len - 1)) throw Error("truncated series record");
        mpz_import(x.get_mpz_t(), buf.size(), -1, 1, -1, 0, buf.data());
        if (sign == 1) x = -x;
    }
    return QSeries(Ring::integers(), grain, start, trunc, std::move(c));
}

Digest sha256(const std::string& bytes)
{
    Digest d;
    SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), d.data());
    return d;
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir))
{
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

Cache Cache::from_environment()
{
    const char* dir = std::getenv("PCONG_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return Cache();
    return Cache(dir);
}

std::filesystem::path Cache::path_for(const std::string& tag, const Ring& ring) const
{
    std::string name;
    for (const char c : tag) name += c == ':' ? '-' : c;
    name += ring.is_modular() ? "__mod" + std::to_string(ring.modulus()) : "__Z";
    return dir_ / (name + ".qsc");
}

void Cache::warn(const std::string& msg) const
{
    if (warn_)
        warn_(msg);
    else
        std::cerr << "warning: " << msg << "\n";
}

std::optional<CacheEntry> Cache::lookup(const std::string& tag, const Ring& ring) const
{
    if (!enabled()) return std::nullopt;
    const auto path = path_for(tag, ring);
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        auto parsed = parse_file(path);
        if (parsed.entry.tag != tag || !(parsed.entry.ring == ring)) return std::nullopt;
        return parsed.entry;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<QSeries> Cache::load(const std::string& tag, const Ring& ring, std::int64_t t)
{
    const auto path = path_for(tag, ring);
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        const std::string bytes = read_file(path);
        if (bytes.size() < 32) throw Error("cache file too short");
        const std::string body = bytes.substr(0, bytes.size() - 32);
        Digest stored;
        std::copy(bytes.end() - 32, bytes.end(), stored.begin());
        if (sha256(body) != stored) throw Error("checksum mismatch");
        std::istringstream is(body);
        auto s = read_record(is);
        const auto tag_len = get<std::uint16_t>(is);
        std::string stored_tag(tag_len, '\0');
        if (!is.read(stored_tag.data(), tag_len) || stored_tag != tag || !(s.ring() == ring))
            throw Error("cache entry does not match its key");
        if (s.truncation() < t) return std::nullopt;
        ++stats_.loads;
        return s.truncation() == t ? s : s.truncated(t);
    } catch (const Error& e) {
        warn("evicting cache file " + path.string() + ": " + e.what());
        std::error_code ec;
        std::filesystem::remove(path, ec);
        ++stats_.evictions;
        return std::nullopt;
    }
}

void Cache::store(const std::string& tag, const QSeries& s)
{
    std::ostringstream os(std::ios::binary);
    write_record(os, s);
    put<std::uint16_t>(os, static_cast<std::uint16_t>(tag.size()));
    os.write(tag.data(), static_cast<std::streamsize>(tag.size()));
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch());
    put<std::int64_t>(os, static_cast<std::int64_t>(now.count()));
    std::string body = os.str();
    const auto digest = sha256(body);
    body.append(reinterpret_cast<const char*>(digest.data()), digest.size());

    static std::atomic<unsigned> counter{0};
    const auto path = path_for(tag, s.ring());
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." +
           std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.write(body.data(), static_cast<std::streamsize>(body.size())) || !out.flush())
            throw Error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

QSeries Cache::get_or_build(const std::string& tag, const Ring& ring, std::int64_t t)
{
    if (t < 1) throw DomainError("cache request needs a positive truncation");
    if (!enabled()) {
        ++stats_.builds;
        return build(tag, ring, t);
    }
    const std::lock_guard<std::mutex> lock(tag_mutex(path_for(tag, ring).string()));
    if (auto hit = load(tag, ring, t)) return std::move(*hit);
    auto s = build(tag, ring, t);
    ++stats_.builds;
    store(tag, s);
    return s;
}

QSeries Cache::build(const std::string& tag, const Ring& ring, std::int64_t t)
{
    const auto parts = split_tag(tag);
    if (parts.empty()) throw DomainError("empty cache tag");
    const std::string& head = parts[0];
    if (head == "p" && parts.size() == 1) return partition_series(t, ring);
    if (head == "p_k" && parts.size() == 2) {
        const auto k = tag_number(parts[1], tag);
        if (k < 1) throw DomainError("p_k needs k >= 1");
        if (k == 1) return get_or_build("p", ring, t);
        return divide(get_or_build("p_k:" + std::to_string(k - 1), ring, t), euler_series(ring, t));
    }
    if (head == "f" && parts.size() == 1) return build_f(t, ring);
    if (head == "F" && parts.size() == 2) return build_F(tag_number(parts[1], tag), t, ring);
    if (head == "g" && parts.size() == 3) {
        const auto ctx = PipelineContext::make(tag_number(parts[1], tag), static_cast<unsigned>(tag_number(parts[2], tag)));
        if (!(ring == Ring::modular(ctx.modulus()))) throw DomainError("g:" + parts[1] + ":" + parts[2] + " lives over Z/" + std::to_string(ctx.modulus()));
        const auto budget = truncation_budget(ctx, t);
        return build_g(ctx, get_or_build("f", ring, budget.f_truncation), t);
    }
    throw DomainError("unregistered cache tag '" + tag + "'");
}

} // namespace pcong
