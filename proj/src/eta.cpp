#include "pcong/eta.hpp"

#include <numeric>
#include <sstream>

#include "pcong/error.hpp"
#include "pcong/modarith.hpp"
#include "pcong/operators.hpp"
#include "pcong/partitions.hpp"

namespace pcong {

EtaQuotient::EtaQuotient(std::uint64_t level, std::map<std::uint64_t, std::int64_t> exponents) : level_(level)
{
    if (level < 1) throw DomainError("eta quotient level must be positive");
    for (const auto& [d, r] : exponents) {
        if (d < 1 || level % d != 0)
            throw DomainError("eta factor " + std::to_string(d) + " does not divide level " + std::to_string(level));
        if (r != 0) exponents_.emplace(d, r);
    }
}

EtaQuotient EtaQuotient::parse(std::uint64_t level, const std::string& text)
{
    std::map<std::uint64_t, std::int64_t> ex;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw DomainError("expected delta:r in '" + item + "'");
        try {
            ex[std::stoull(item.substr(0, colon))] += std::stoll(item.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw DomainError("malformed eta factor '" + item + "'");
        }
    }
    return EtaQuotient(level, std::move(ex));
}

Rational EtaQuotient::weight() const
{
    Rational w(0);
    for (const auto& [d, r] : exponents_) w += static_cast<long>(r);
    w /= 2;
    w.canonicalize();
    return w;
}

std::int64_t EtaQuotient::leading_exponent24() const
{
    std::int64_t v = 0;
    for (const auto& [d, r] : exponents_) v += static_cast<std::int64_t>(d) * r;
    return v;
}

std::string EtaQuotient::to_string() const
{
    std::string out;
    for (const auto& [d, r] : exponents_) {
        if (!out.empty()) out += ',';
        out += std::to_string(d) + ':' + std::to_string(r);
    }
    return out;
}

namespace {

// prod (1 - q^n)^r below q^n_terms.
QSeries euler_power(const Ring& ring, std::int64_t r, std::int64_t n_terms)
{
    const auto e1 = euler_series(ring, n_terms);
    const auto e3 = euler_cube_series(ring, n_terms);
    const std::int64_t mag = r < 0 ? -r : r;
    QSeries acc = QSeries::one(ring, n_terms);
    if (r > 0) {
        for (std::int64_t i = 0; i < mag / 3; ++i) acc = mul(acc, e3);
        for (std::int64_t i = 0; i < mag % 3; ++i) acc = mul(acc, e1);
    } else {
        for (std::int64_t i = 0; i < mag / 3; ++i) acc = divide(acc, e3);
        for (std::int64_t i = 0; i < mag % 3; ++i) acc = divide(acc, e1);
    }
    return acc;
}

} // namespace

QSeries expand(const EtaQuotient& e, std::int64_t t, const Ring& ring)
{
    if (t < 1) throw DomainError("expansion bound must be positive");
    const std::int64_t v = e.leading_exponent24();
    const std::int64_t target = 24 * t;
    // The product part lives on grain 1 and is needed below q^{(24T - v)/24}.
    const std::int64_t body = std::max<std::int64_t>(1, ceil_div(target - v, 24));
    QSeries acc = QSeries::one(ring, body);
    for (const auto& [d, r] : e.exponents()) {
        const auto dd = static_cast<std::int64_t>(d);
        const auto factor = v_op(euler_power(ring, r, ceil_div(body, dd)), dd).truncated(body);
        acc = mul(acc, factor);
    }
    // The body is on grain 1, so q^{v/24} only forces the grain 24 / gcd(24, v).
    const std::int64_t common = std::gcd<std::int64_t>(24, v);
    const std::int64_t grain = 24 / common;
    const auto lifted = acc.lifted(static_cast<std::uint32_t>(grain)).shifted(v / common);
    const std::int64_t trunc = std::max(v / common, std::min(t * grain, lifted.truncation()));
    return lifted.truncated(trunc).normalized();
}

int Modularity::character(const Int& d) const
{
    return mpz_kronecker(character_top.get_mpz_t(), d.get_mpz_t());
}

std::uint64_t squarefree_part(std::uint64_t n)
{
    if (n == 0) throw DomainError("squarefree part of 0");
    std::uint64_t out = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2 == 1) out *= p;
    }
    return out * n;
}

Modularity modularity_check(const EtaQuotient& e)
{
    Modularity m;
    m.weight = e.weight();
    m.integral_weight = m.weight.get_den() == 1;
    const std::int64_t n = static_cast<std::int64_t>(e.level());
    std::int64_t delta_sum = 0;
    std::int64_t level_sum = 0;
    Int num(1);
    Int den(1);
    // Parity of each prime's exponent in num * den, from the factorization of each delta.
    std::map<std::uint64_t, std::int64_t> prime_exp;
    for (const auto& [d, r] : e.exponents()) {
        const auto dd = static_cast<std::int64_t>(d);
        delta_sum += dd * r;
        level_sum += (n / dd) * r;
        Int power;
        mpz_ui_pow_ui(power.get_mpz_t(), d, static_cast<unsigned long>(r < 0 ? -r : r));
        (r > 0 ? num : den) *= power;
        std::uint64_t x = d;
        for (std::uint64_t p = 2; p * p <= x; ++p)
            while (x % p == 0) {
                x /= p;
                prime_exp[p] += r;
            }
        if (x > 1) prime_exp[x] += r;
    }
    m.s = Rational(num, den);
    m.s.canonicalize();
    m.delta_sum_ok = delta_sum % 24 == 0;
    m.level_sum_ok = level_sum % 24 == 0;
    if (m.integral_weight) {
        Int sq(1);
        for (const auto& [p, x] : prime_exp)
            if (x % 2 != 0) sq *= static_cast<unsigned long>(p);
        const bool odd_weight = mpz_odd_p(m.weight.get_num_mpz_t()) != 0;
        m.character_top = odd_weight ? Int(-sq) : sq;
    }
    return m;
}

std::vector<Cusp> cusps(std::uint64_t level)
{
    std::vector<Cusp> out;
    const auto n = static_cast<std::int64_t>(level);
    for (std::int64_t c = 1; c <= n; ++c) {
        if (n % c != 0) continue;
        const std::int64_t g = std::gcd(c, n / c);
        // a runs over residues mod g coprime to g; lift each to a value coprime to c.
        for (std::int64_t a0 = 0; a0 < g; ++a0) {
            if (std::gcd(a0, g) != 1) continue;
            std::int64_t a = a0;
            while (std::gcd(a, c) != 1) a += g;
            out.push_back({a, c});
        }
    }
    return out;
}

std::uint64_t cusp_width(std::uint64_t level, std::uint64_t c)
{
    return level / std::gcd(c * c, level);
}

Rational cusp_order(const EtaQuotient& e, std::int64_t a, std::int64_t c)
{
    const auto n = static_cast<std::int64_t>(e.level());
    if (c < 1 || n % c != 0) throw DomainError("cusp denominator " + std::to_string(c) + " does not divide level");
    if (std::gcd(a, c) != 1) throw DomainError("cusp a/c must be in lowest terms");
    Rational sum(0);
    for (const auto& [d, r] : e.exponents()) {
        const auto dd = static_cast<std::int64_t>(d);
        const std::int64_t g = std::gcd(c, dd);
        sum += Rational(static_cast<long>(g * g * r), static_cast<unsigned long>(dd));
    }
    Rational order = sum * Rational(static_cast<long>(n), static_cast<unsigned long>(24 * std::gcd(c, n / c) * c));
    order.canonicalize();
    return order;
}

} // namespace pcong
