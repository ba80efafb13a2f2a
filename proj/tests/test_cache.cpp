#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "pcong/cache.hpp"
#include "pcong/config.hpp"
#include "pcong/error.hpp"
#include "pcong/partitions.hpp"

using namespace pcong;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() / ("pcong-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

QSeries roundtrip(const QSeries& s)
{
    std::stringstream ss;
    write_record(ss, s);
    return read_record(ss);
}

} // namespace

TEST_CASE("record round trip is bit exact")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::int64_t start = static_cast<std::int64_t>(rng() % 7) - 3;
        const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 300);
        if (t % 2 == 0) {
            const std::uint64_t m = 2 + rng() % ((std::uint64_t{1} << 62));
            QSeries::Residues c(static_cast<std::size_t>(len));
            for (auto& x : c) x = rng() % m;
            const QSeries s(Ring::modular(m), 1 + static_cast<std::uint32_t>(rng() % 24), start, start + len, c);
            CHECK(roundtrip(s) == s);
        } else {
            QSeries::Integers c(static_cast<std::size_t>(len));
            for (auto& x : c) {
                mpz_class v(static_cast<unsigned long>(rng()));
                v <<= static_cast<unsigned>(rng() % 300);
                x = rng() % 3 == 0 ? mpz_class(0) : (rng() % 2 ? v : mpz_class(-v));
            }
            const QSeries s(Ring::integers(), 1, start, start + len, c);
            CHECK(roundtrip(s) == s);
        }
    }
    std::stringstream junk("QSC0....");
    CHECK_THROWS_AS(read_record(junk), Error);
}

TEST_CASE("cache hits, prefixes and rebuilds")
{
    TempDir dir;
    Cache cache(dir.path);
    const Ring r = Ring::modular(5);
    const auto a = cache.get_or_build("p", r, 100000);
    CHECK(cache.stats().builds == 1);
    const auto b = cache.get_or_build("p", r, 100000);
    CHECK(cache.stats().builds == 1);
    CHECK(cache.stats().loads == 1);
    CHECK(a == b);
    const auto c = cache.get_or_build("p", r, 500);
    CHECK(cache.stats().loads == 2);
    CHECK(c == a.truncated(500));

    const auto d = cache.get_or_build("p", r, 200000);
    CHECK(cache.stats().builds == 2);
    const auto entry = cache.lookup("p", r);
    REQUIRE(entry);
    CHECK(entry->truncation == 200000);
    CHECK(entry->created_at > 0);
    CHECK(d.truncated(100000) == a);

    const auto p2 = cache.get_or_build("p_k:2", r, 1000);
    CHECK(p2 == colored_series(2, 1000, r));
    CHECK(cache.get_or_build("g:5:1", r, 50).truncation() == 50);
    CHECK_THROWS_AS(cache.get_or_build("nope", r, 10), DomainError);
    CHECK_THROWS_AS(cache.get_or_build("g:5:1", Ring::modular(7), 10), DomainError);
}

TEST_CASE("corrupted file is evicted and rebuilt")
{
    TempDir dir;
    Cache cache(dir.path);
    std::vector<std::string> warnings;
    cache.set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
    const Ring r = Ring::modular(49);
    const auto a = cache.get_or_build("p_k:2", r, 5000);
    const auto path = cache.path_for("p_k:2", r);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(100);
        f.put('\x7f');
    }
    CHECK_FALSE(cache.lookup("p_k:2", r));
    const auto builds = cache.stats().builds;
    const auto b = cache.get_or_build("p_k:2", r, 5000);
    CHECK(a == b);
    CHECK(cache.stats().evictions == 1);
    CHECK(cache.stats().builds > builds);
    CHECK(warnings.size() == 1);
    CHECK(cache.lookup("p_k:2", r));
}

TEST_CASE("concurrent builders leave one file")
{
    TempDir dir;
    const Ring r = Ring::modular(7);
    std::vector<std::thread> threads;
    std::vector<QSeries> results(4, QSeries::zero(r, 1, 0, 1));
    for (int i = 0; i < 4; ++i)
        threads.emplace_back([&, i] {
            Cache cache(dir.path);
            results[static_cast<std::size_t>(i)] = cache.get_or_build("f", r, 20000);
        });
    for (auto& t : threads) t.join();
    for (const auto& s : results) CHECK(s == results[0]);
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir.path)) {
        ++files;
        CHECK(e.path().extension() == ".qsc");
    }
    CHECK(files == 1);
}

TEST_CASE("disabled cache still builds")
{
    Cache none;
    CHECK_FALSE(none.enabled());
    CHECK(none.get_or_build("F:5", Ring::integers(), 20).coeff(0) == 1);
    CHECK(parse_byte_size("4G") == (std::size_t{4} << 30));
    CHECK(parse_byte_size("123") == 123);
    CHECK_THROWS_AS(parse_byte_size("12X"), DomainError);
}
