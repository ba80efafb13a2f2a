#include "pcong/partitions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pcong/error.hpp"

namespace pcong {

namespace {

QSeries signed_terms(const Ring& ring, std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& terms)
{
    if (n < 1) throw DomainError("series length must be positive");
    if (ring.is_modular()) {
        QSeries::Residues c(static_cast<std::size_t>(n), 0);
        for (const auto& [e, v] : terms) c[static_cast<std::size_t>(e)] = ring.reduce(v);
        return QSeries(ring, 1, 0, n, std::move(c));
    }
    QSeries::Integers c(static_cast<std::size_t>(n));
    for (const auto& [e, v] : terms) c[static_cast<std::size_t>(e)] = Int(static_cast<long>(v));
    return QSeries(ring, 1, 0, n, std::move(c));
}

// Leaves of the partition tree below a part bound; parts are colored ids ordered by (size, color).
std::uint64_t count_colored(int n, int max_id, unsigned k)
{
    if (n == 0) return 1;
    std::uint64_t total = 0;
    for (int id = max_id; id >= 0; --id) {
        const int size = id / static_cast<int>(k) + 1;
        if (size <= n) total += count_colored(n - size, id, k);
    }
    return total;
}

} // namespace

QSeries euler_series(const Ring& ring, std::int64_t n)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (const std::int64_t sk : {k, -k}) {
            const std::int64_t e = sk * (3 * sk - 1) / 2;
            if (e < n) {
                terms.emplace_back(e, k % 2 == 0 ? 1 : -1);
                any = true;
            }
            if (k == 0) break;
        }
        if (!any) break;
    }
    return signed_terms(ring, n, terms);
}

QSeries euler_cube_series(const Ring& ring, std::int64_t n)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (std::int64_t k = 0; k * (k + 1) / 2 < n; ++k) terms.emplace_back(k * (k + 1) / 2, k % 2 == 0 ? 2 * k + 1 : -(2 * k + 1));
    return signed_terms(ring, n, terms);
}

QSeries partition_series(std::int64_t n, const Ring& ring)
{
    return invert(euler_series(ring, n));
}

QSeries colored_series(unsigned k, std::int64_t n, const Ring& ring, ColoredRoute route)
{
    if (k < 1) throw DomainError("number of colors must be at least 1");
    switch (route) {
    case ColoredRoute::RepeatedDivision: {
        const auto e = euler_series(ring, n);
        QSeries acc = invert(e);
        for (unsigned i = 1; i < k; ++i) acc = divide(acc, e);
        return acc;
    }
    case ColoredRoute::PowerOfPartitions:
        return pow(partition_series(n, ring), k);
    case ColoredRoute::InvertedEulerPower:
        return invert(pow(euler_series(ring, n), k));
    }
    throw DomainError("unknown route");
}

Int brute_force_p(int n)
{
    return brute_force_pk(n, 1);
}

Int brute_force_pk(int n, unsigned k)
{
    if (n < 0 || k < 1) throw DomainError("brute force needs n >= 0 and k >= 1");
    const auto leaves = count_colored(n, n * static_cast<int>(k) - 1, k);
    return Int(std::to_string(leaves));
}

double asymptotic_ratio(std::int64_t n)
{
    if (n < 1) throw DomainError("asymptotic ratio needs n >= 1");
    const auto p = partition_series(n + 1, Ring::integers()).coeff(n);
    long exp2 = 0;
    const long double mant = mpz_get_d_2exp(&exp2, p.get_mpz_t());
    const long double nn = static_cast<long double>(n);
    const long double log_p = std::log(mant) + static_cast<long double>(exp2) * std::numbers::ln2_v<long double>;
    const long double log_ratio = log_p + std::log(4 * nn * std::sqrt(3.0L)) -
                                  std::numbers::pi_v<long double> * std::sqrt(2 * nn / 3);
    return static_cast<double>(std::exp(log_ratio));
}

PartitionTable::PartitionTable(Kind kind, unsigned colors, QSeries values)
    : kind_(kind), colors_(colors), values_(std::move(values))
{
    if (values_.grain() != 1 || values_.start() != 0 || values_.truncation() < 1 || values_.coeff(0) != 1)
        throw DomainError("partition table must start with constant term 1 on grain 1");
}

PartitionTable PartitionTable::plain(std::int64_t n, const Ring& ring)
{
    return PartitionTable(Kind::Plain, 1, partition_series(n, ring));
}

PartitionTable PartitionTable::colored(unsigned k, std::int64_t n, const Ring& ring)
{
    return PartitionTable(k == 1 ? Kind::Plain : Kind::Colored, k, colored_series(k, n, ring));
}

} // namespace pcong
