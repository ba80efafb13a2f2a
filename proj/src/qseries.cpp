#include "pcong/qseries.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "kernels.hpp"
#include "pcong/error.hpp"
#include "pcong/modarith.hpp"
#include "pcong/resources.hpp"

namespace pcong {

namespace {

constexpr std::size_t kIntEntryBytes = 32;

std::size_t checked_size(std::int64_t start, std::int64_t truncation)
{
    if (truncation <= start)
        throw TruncationError("series must satisfy truncation > start (start " + std::to_string(start) +
                              ", truncation " + std::to_string(truncation) + ")");
    return static_cast<std::size_t>(truncation - start);
}

QSeries::Residues make_residues(std::size_t n, const char* what)
{
    check_allocation(n, sizeof(std::uint64_t), what);
    return QSeries::Residues(n, 0);
}

QSeries::Integers make_integers(std::size_t n, const char* what)
{
    check_allocation(n, kIntEntryBytes, what);
    return QSeries::Integers(n);
}

void require_same_ring(const QSeries& a, const QSeries& b, const char* op)
{
    if (!(a.ring() == b.ring()))
        throw RingError(std::string(op) + ": ring mismatch (" + a.ring().name() + " vs " + b.ring().name() + ")");
}

// Both operands expressed on the lcm of their grains; copies only when a lift is needed.
class CommonGrain {
public:
    CommonGrain(const QSeries& a, const QSeries& b) : a_(&a), b_(&b)
    {
        if (a.grain() == b.grain()) return;
        const auto g = std::lcm(a.grain(), b.grain());
        if (a.grain() != g) a_ = &lifted_a_.emplace(a.lifted(g));
        if (b.grain() != g) b_ = &lifted_b_.emplace(b.lifted(g));
    }
    const QSeries& a() const { return *a_; }
    const QSeries& b() const { return *b_; }

private:
    std::optional<QSeries> lifted_a_;
    std::optional<QSeries> lifted_b_;
    const QSeries* a_;
    const QSeries* b_;
};

// Nonzero offsets of s (relative to its start) within [from, to).
std::vector<std::int64_t> nonzero_offsets(const QSeries& s, std::size_t from, std::size_t to)
{
    std::vector<std::int64_t> out;
    to = std::min(to, s.size());
    if (s.is_sparse()) {
        for (const std::int64_t off : s.sparse_offsets()) {
            const auto u = static_cast<std::size_t>(off);
            if (u >= from && u < to) out.push_back(off);
        }
        return out;
    }
    if (s.is_modular()) {
        const auto& c = s.residues();
        for (std::size_t i = from; i < to; ++i)
            if (c[i] != 0) out.push_back(static_cast<std::int64_t>(i));
    } else {
        const auto& c = s.integers();
        for (std::size_t i = from; i < to; ++i)
            if (sgn(c[i]) != 0) out.push_back(static_cast<std::int64_t>(i));
    }
    return out;
}

// Forward substitution  out = num / b  where num is given relative to the quotient start.
QSeries divide_impl(const Ring& ring, std::uint32_t grain, std::int64_t num_start, std::int64_t num_len,
                    const QSeries* num, const QSeries& b)
{
    if (b.size() == 0) throw TruncationError("division by a series with no known coefficients");
    const std::int64_t s = 0;
    const std::int64_t w = b.start() + s;
    const Int lead = b.coeff(w);
    if (!ring.is_unit(lead)) throw RingError("non-unit leading coefficient " + lead.get_str() + " in " + ring.name());

    const std::int64_t len = std::min(num_len, b.truncation() - w);
    const std::int64_t start = num_start - w;
    if (len <= 0) throw TruncationError("division leaves no exact coefficients");
    const auto ulen = static_cast<std::size_t>(len);

    const auto offs = nonzero_offsets(b, static_cast<std::size_t>(s) + 1, static_cast<std::size_t>(s) + ulen);

    if (ring.is_modular()) {
        const std::uint64_t m = ring.modulus();
        const auto& bc = b.residues();
        std::vector<kernels::Term> terms;
        terms.reserve(offs.size());
        for (const auto off : offs) terms.push_back({off - s, bc[static_cast<std::size_t>(off)]});
        auto out = make_residues(ulen, "series division");
        std::span<const std::uint64_t> nums;
        std::uint64_t one = 1;
        if (num != nullptr) {
            const auto& nc = num->residues();
            nums = std::span<const std::uint64_t>(nc.data(), std::min(nc.size(), ulen));
        } else {
            nums = std::span<const std::uint64_t>(&one, 1);
        }
        kernels::mod_divide(nums, terms, invmod(bc[static_cast<std::size_t>(s)], m), out, m);
        return QSeries(ring, grain, start, start + len, std::move(out)).normalized();
    }

    const auto& bc = b.integers();
    std::vector<kernels::IntTerm> terms;
    terms.reserve(offs.size());
    for (const auto off : offs) terms.push_back({off - s, &bc[static_cast<std::size_t>(off)]});
    auto out = make_integers(ulen, "series division");
    const Int one(1);
    std::span<const Int> nums;
    if (num != nullptr) {
        const auto& nc = num->integers();
        nums = std::span<const Int>(nc.data(), std::min(nc.size(), ulen));
    } else {
        nums = std::span<const Int>(&one, 1);
    }
    kernels::int_divide(nums, terms, lead > 0 ? 1 : -1, out);
    return QSeries(ring, grain, start, start + len, std::move(out)).normalized();
}

} // namespace

QSeries::QSeries(Ring ring, std::uint32_t grain, std::int64_t start, std::int64_t truncation, Residues coeffs)
    : ring_(ring), grain_(grain), start_(start), truncation_(truncation), coeffs_(std::move(coeffs))
{
    if (!ring_.is_modular()) throw RingError("residue storage requires a modular ring");
    const auto& c = std::get<Residues>(coeffs_);
    for (const auto x : c)
        if (x >= ring_.modulus()) throw RingError("residue out of range for " + ring_.name());
    finalize();
}

QSeries::QSeries(Ring ring, std::uint32_t grain, std::int64_t start, std::int64_t truncation, Integers coeffs)
    : ring_(ring), grain_(grain), start_(start), truncation_(truncation), coeffs_(std::move(coeffs))
{
    if (ring_.is_modular()) throw RingError("integer storage requires the integer ring");
    finalize();
}

void QSeries::finalize()
{
    if (grain_ == 0) throw DomainError("grain must be positive");
    const std::size_t n = checked_size(start_, truncation_);
    const std::size_t have = is_modular() ? std::get<Residues>(coeffs_).size() : std::get<Integers>(coeffs_).size();
    if (have != n)
        throw DomainError("coefficient count " + std::to_string(have) + " does not match truncation - start = " +
                          std::to_string(n));
    nonzeros_ = 0;
    if (is_modular()) {
        for (const auto x : std::get<Residues>(coeffs_)) nonzeros_ += x != 0;
    } else {
        for (const auto& x : std::get<Integers>(coeffs_)) nonzeros_ += sgn(x) != 0;
    }
    sparse_ = nonzeros_ * 20 < n;
    sparse_offsets_.clear();
    if (sparse_) {
        sparse_offsets_.reserve(nonzeros_);
        for (std::size_t i = 0; i < n; ++i) {
            const bool nz = is_modular() ? std::get<Residues>(coeffs_)[i] != 0 : sgn(std::get<Integers>(coeffs_)[i]) != 0;
            if (nz) sparse_offsets_.push_back(static_cast<std::int64_t>(i));
        }
    }
}

QSeries QSeries::zero(const Ring& ring, std::uint32_t grain, std::int64_t start, std::int64_t truncation)
{
    const std::size_t n = checked_size(start, truncation);
    if (ring.is_modular()) return QSeries(ring, grain, start, truncation, make_residues(n, "zero series"));
    return QSeries(ring, grain, start, truncation, make_integers(n, "zero series"));
}

QSeries QSeries::one(const Ring& ring, std::int64_t truncation)
{
    return monomial(ring, 1, 0, Int(1), truncation);
}

QSeries QSeries::from_values(const Ring& ring, std::uint32_t grain, std::int64_t start,
                             const std::vector<std::int64_t>& values)
{
    const auto trunc = start + static_cast<std::int64_t>(values.size());
    if (ring.is_modular()) {
        Residues r(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) r[i] = ring.reduce(values[i]);
        return QSeries(ring, grain, start, trunc, std::move(r));
    }
    Integers z(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) z[i] = static_cast<long>(values[i]);
    return QSeries(ring, grain, start, trunc, std::move(z));
}

std::size_t QSeries::offset_of(std::int64_t e) const
{
    return static_cast<std::size_t>(e - start_);
}

Int QSeries::coeff(std::int64_t e) const
{
    if (e >= truncation_)
        throw TruncationError("coefficient at exponent " + std::to_string(e) + "/" + std::to_string(grain_) +
                              " is beyond the truncation " + std::to_string(truncation_));
    if (e < start_) return Int(0);
    if (is_modular()) {
        Int r;
        mpz_set_ui(r.get_mpz_t(), std::get<Residues>(coeffs_)[offset_of(e)]);
        return r;
    }
    return std::get<Integers>(coeffs_)[offset_of(e)];
}

std::uint64_t QSeries::residue(std::int64_t e) const
{
    if (!is_modular()) throw RingError("residue() requires a modular ring");
    if (e >= truncation_)
        throw TruncationError("coefficient at exponent " + std::to_string(e) + " is beyond the truncation " +
                              std::to_string(truncation_));
    if (e < start_) return 0;
    return std::get<Residues>(coeffs_)[offset_of(e)];
}

bool QSeries::is_zero_at(std::int64_t e) const
{
    if (e >= truncation_) throw TruncationError("exponent " + std::to_string(e) + " is beyond the truncation");
    if (e < start_) return true;
    return is_modular() ? std::get<Residues>(coeffs_)[offset_of(e)] == 0
                        : sgn(std::get<Integers>(coeffs_)[offset_of(e)]) == 0;
}

const QSeries::Residues& QSeries::residues() const
{
    if (!is_modular()) throw RingError("series is over the integers");
    return std::get<Residues>(coeffs_);
}

const QSeries::Integers& QSeries::integers() const
{
    if (is_modular()) throw RingError("series is over " + ring_.name());
    return std::get<Integers>(coeffs_);
}

std::optional<std::int64_t> QSeries::leading_exponent() const
{
    const auto offs = nonzero_offsets(*this, 0, sparse_ ? size() : std::min<std::size_t>(size(), 1));
    if (!offs.empty()) return start_ + offs.front();
    if (sparse_) return std::nullopt;
    const auto all = nonzero_offsets(*this, 0, size());
    if (all.empty()) return std::nullopt;
    return start_ + all.front();
}

QSeries QSeries::truncated(std::int64_t truncation) const
{
    if (truncation > truncation_)
        throw TruncationError("cannot extend truncation from " + std::to_string(truncation_) + " to " +
                              std::to_string(truncation));
    const std::size_t n = checked_size(start_, truncation);
    if (is_modular()) {
        const auto& c = std::get<Residues>(coeffs_);
        return QSeries(ring_, grain_, start_, truncation, Residues(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
    }
    const auto& c = std::get<Integers>(coeffs_);
    return QSeries(ring_, grain_, start_, truncation, Integers(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
}

QSeries QSeries::trimmed() const
{
    const auto lead = leading_exponent();
    if (!lead || *lead == start_) return *this;
    const auto skip = static_cast<std::ptrdiff_t>(*lead - start_);
    if (is_modular()) {
        const auto& c = std::get<Residues>(coeffs_);
        return QSeries(ring_, grain_, *lead, truncation_, Residues(c.begin() + skip, c.end()));
    }
    const auto& c = std::get<Integers>(coeffs_);
    return QSeries(ring_, grain_, *lead, truncation_, Integers(c.begin() + skip, c.end()));
}

QSeries QSeries::shifted(std::int64_t shift) const
{
    QSeries out = *this;
    out.start_ += shift;
    out.truncation_ += shift;
    return out;
}

QSeries QSeries::negated() const
{
    if (is_modular()) {
        Residues c = std::get<Residues>(coeffs_);
        const auto m = ring_.modulus();
        for (auto& x : c) x = x == 0 ? 0 : m - x;
        return QSeries(ring_, grain_, start_, truncation_, std::move(c));
    }
    Integers c = std::get<Integers>(coeffs_);
    for (auto& x : c) x = -x;
    return QSeries(ring_, grain_, start_, truncation_, std::move(c));
}

QSeries QSeries::scaled(const Int& k) const
{
    if (is_modular()) {
        Residues c = std::get<Residues>(coeffs_);
        const auto m = ring_.modulus();
        const auto r = ring_.reduce(k);
        for (auto& x : c) x = mulmod(x, r, m);
        return QSeries(ring_, grain_, start_, truncation_, std::move(c));
    }
    Integers c = std::get<Integers>(coeffs_);
    for (auto& x : c) x *= k;
    return QSeries(ring_, grain_, start_, truncation_, std::move(c));
}

QSeries QSeries::lifted(std::uint32_t g) const
{
    if (g == 0 || g % grain_ != 0)
        throw DomainError("cannot lift grain " + std::to_string(grain_) + " to " + std::to_string(g));
    if (g == grain_) return *this;
    const std::int64_t f = g / grain_;
    const std::int64_t start = start_ * f;
    const std::int64_t trunc = truncation_ * f;
    const std::size_t n = checked_size(start, trunc);
    if (is_modular()) {
        auto out = make_residues(n, "grain lift");
        const auto& c = std::get<Residues>(coeffs_);
        for (std::size_t i = 0; i < c.size(); ++i) out[i * static_cast<std::size_t>(f)] = c[i];
        return QSeries(ring_, g, start, trunc, std::move(out));
    }
    auto out = make_integers(n, "grain lift");
    const auto& c = std::get<Integers>(coeffs_);
    for (std::size_t i = 0; i < c.size(); ++i) out[i * static_cast<std::size_t>(f)] = c[i];
    return QSeries(ring_, g, start, trunc, std::move(out));
}

QSeries QSeries::normalized() const
{
    if (grain_ == 1) return *this;
    std::int64_t g = grain_;
    const auto offs = nonzero_offsets(*this, 0, size());
    for (const auto off : offs) {
        g = std::gcd(g, start_ + off);
        if (g == 1) return *this;
    }
    const std::int64_t start = ceil_div(start_, g);
    const std::int64_t trunc = ceil_div(truncation_, g);
    if (trunc <= start) return *this;
    const auto n = static_cast<std::size_t>(trunc - start);
    const auto new_grain = static_cast<std::uint32_t>(grain_ / g);
    if (is_modular()) {
        const auto& c = std::get<Residues>(coeffs_);
        auto out = make_residues(n, "grain normalization");
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t e = (start + static_cast<std::int64_t>(i)) * g;
            if (e >= start_) out[i] = c[offset_of(e)];
        }
        return QSeries(ring_, new_grain, start, trunc, std::move(out));
    }
    const auto& c = std::get<Integers>(coeffs_);
    auto out = make_integers(n, "grain normalization");
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t e = (start + static_cast<std::int64_t>(i)) * g;
        if (e >= start_) out[i] = c[offset_of(e)];
    }
    return QSeries(ring_, new_grain, start, trunc, std::move(out));
}

bool operator==(const QSeries& a, const QSeries& b)
{
    return a.ring_ == b.ring_ && a.grain_ == b.grain_ && a.start_ == b.start_ && a.truncation_ == b.truncation_ &&
           a.coeffs_ == b.coeffs_;
}

std::string QSeries::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::int64_t e = start_; e < truncation_ && shown < max_terms; ++e) {
        if (is_zero_at(e)) continue;
        const Int c = coeff(e);
        os << (shown == 0 ? "" : " + ") << c.get_str();
        if (e != 0) {
            os << "*q^";
            if (grain_ == 1)
                os << e;
            else
                os << "(" << e << "/" << grain_ << ")";
        }
        ++shown;
    }
    if (shown == 0) os << "0";
    os << " + O(q^" << (grain_ == 1 ? std::to_string(truncation_)
                                     : "(" + std::to_string(truncation_) + "/" + std::to_string(grain_) + ")")
       << ") over " << ring_.name();
    return os.str();
}

QSeries monomial(const Ring& ring, std::uint32_t grain, std::int64_t e, const Int& c, std::int64_t truncation)
{
    QSeries z = QSeries::zero(ring, grain, e, truncation);
    if (ring.is_modular()) {
        auto r = z.residues();
        r[0] = ring.reduce(c);
        return QSeries(ring, grain, e, truncation, std::move(r));
    }
    auto v = z.integers();
    v[0] = c;
    return QSeries(ring, grain, e, truncation, std::move(v));
}

namespace {

QSeries add_sub(const QSeries& x, const QSeries& y, bool subtract)
{
    require_same_ring(x, y, subtract ? "sub" : "add");
    const CommonGrain cg(x, y);
    const QSeries& a = cg.a();
    const QSeries& b = cg.b();
    const std::int64_t start = std::min(a.start(), b.start());
    const std::int64_t trunc = std::min(a.truncation(), b.truncation());
    const std::size_t n = checked_size(start, trunc);
    if (a.is_modular()) {
        const auto m = a.ring().modulus();
        auto out = make_residues(n, "series sum");
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t e = start + static_cast<std::int64_t>(i);
            const std::uint64_t u = e >= a.start() ? a.residues()[static_cast<std::size_t>(e - a.start())] : 0;
            const std::uint64_t v = e >= b.start() ? b.residues()[static_cast<std::size_t>(e - b.start())] : 0;
            out[i] = subtract ? submod(u, v, m) : addmod(u, v, m);
        }
        return QSeries(a.ring(), a.grain(), start, trunc, std::move(out)).normalized();
    }
    auto out = make_integers(n, "series sum");
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t e = start + static_cast<std::int64_t>(i);
        if (e >= a.start()) out[i] = a.integers()[static_cast<std::size_t>(e - a.start())];
        if (e >= b.start()) {
            const Int& v = b.integers()[static_cast<std::size_t>(e - b.start())];
            if (subtract)
                out[i] -= v;
            else
                out[i] += v;
        }
    }
    return QSeries(a.ring(), a.grain(), start, trunc, std::move(out)).normalized();
}

} // namespace

QSeries add(const QSeries& a, const QSeries& b)
{
    return add_sub(a, b, false);
}

QSeries sub(const QSeries& a, const QSeries& b)
{
    return add_sub(a, b, true);
}

QSeries mul(const QSeries& x, const QSeries& y)
{
    require_same_ring(x, y, "mul");
    const CommonGrain cg(x, y);
    const QSeries& a = cg.a();
    const QSeries& b = cg.b();
    const std::int64_t start = a.start() + b.start();
    const std::int64_t trunc = std::min(a.truncation() + b.start(), b.truncation() + a.start());
    const std::size_t n = checked_size(start, trunc);

    // Iterate the factor with fewer nonzeros term by term against the other, dense.
    const bool a_terms = a.nonzero_count() <= b.nonzero_count();
    const QSeries& it = a_terms ? a : b;
    const QSeries& dense = a_terms ? b : a;
    const auto offs = nonzero_offsets(it, 0, n);

    if (a.is_modular()) {
        std::vector<kernels::Term> terms;
        terms.reserve(offs.size());
        for (const auto off : offs) terms.push_back({off, it.residues()[static_cast<std::size_t>(off)]});
        auto out = make_residues(n, "series product");
        const auto& src = dense.residues();
        kernels::mod_product(terms, std::span<const std::uint64_t>(src.data(), std::min(src.size(), n)), out,
                             a.ring().modulus());
        return QSeries(a.ring(), a.grain(), start, trunc, std::move(out)).normalized();
    }
    std::vector<kernels::IntTerm> terms;
    terms.reserve(offs.size());
    for (const auto off : offs) terms.push_back({off, &it.integers()[static_cast<std::size_t>(off)]});
    auto out = make_integers(n, "series product");
    const auto& src = dense.integers();
    kernels::int_product(terms, std::span<const Int>(src.data(), std::min(src.size(), n)), out);
    return QSeries(a.ring(), a.grain(), start, trunc, std::move(out)).normalized();
}

QSeries invert(const QSeries& a)
{
    return divide_impl(a.ring(), a.grain(), 0, std::numeric_limits<std::int64_t>::max() / 4, nullptr, a);
}

QSeries divide(const QSeries& x, const QSeries& y)
{
    require_same_ring(x, y, "divide");
    const CommonGrain cg(x, y);
    const QSeries& a = cg.a();
    const QSeries& b = cg.b();
    return divide_impl(a.ring(), a.grain(), a.start(), a.truncation() - a.start(), &a, b);
}

QSeries pow(const QSeries& a, std::uint64_t e)
{
    QSeries result = monomial(a.ring(), a.grain(), 0, Int(1), a.truncation() - a.start());
    if (e == 0) return result;
    QSeries base = a;
    bool first = true;
    while (true) {
        if (e & 1) {
            result = first ? base : mul(result, base);
            first = false;
        }
        e >>= 1;
        if (e == 0) break;
        base = mul(base, base);
    }
    return result;
}

QSeries extract_progression(const QSeries& a, std::int64_t d, std::int64_t r)
{
    if (a.grain() != 1) throw DomainError("extract_progression requires grain 1");
    if (d < 1) throw DomainError("extract_progression requires d >= 1");
    const std::int64_t start = ceil_div(a.start() - r, d);
    const std::int64_t trunc = ceil_div(a.truncation() - r, d);
    const std::size_t n = checked_size(start, trunc);
    if (a.is_modular()) {
        auto out = make_residues(n, "progression extraction");
        const auto& c = a.residues();
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t e = d * (start + static_cast<std::int64_t>(i)) + r;
            out[i] = c[static_cast<std::size_t>(e - a.start())];
        }
        return QSeries(a.ring(), 1, start, trunc, std::move(out));
    }
    auto out = make_integers(n, "progression extraction");
    const auto& c = a.integers();
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t e = d * (start + static_cast<std::int64_t>(i)) + r;
        out[i] = c[static_cast<std::size_t>(e - a.start())];
    }
    return QSeries(a.ring(), 1, start, trunc, std::move(out));
}

QSeries reduce_mod(const QSeries& a, std::uint64_t m)
{
    const Ring target = Ring::modular(m);
    auto out = make_residues(a.size(), "modular reduction");
    if (a.is_modular()) {
        if (a.ring().modulus() % m != 0)
            throw RingError("cannot reduce " + a.ring().name() + " to Z/" + std::to_string(m));
        const auto& c = a.residues();
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] % m;
    } else {
        const auto& c = a.integers();
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_fdiv_ui(c[i].get_mpz_t(), m);
    }
    return QSeries(target, a.grain(), a.start(), a.truncation(), std::move(out));
}

Congruence is_congruent(const QSeries& x, const QSeries& y, std::uint64_t m)
{
    if (m == 0) throw DomainError("modulus must be positive");
    for (const QSeries* s : {&x, &y})
        if (s->is_modular() && s->ring().modulus() % m != 0)
            throw RingError("cannot compare " + s->ring().name() + " coefficients modulo " + std::to_string(m));
    const CommonGrain cg(x, y);
    const QSeries& a = cg.a();
    const QSeries& b = cg.b();
    Congruence result;
    result.grain = a.grain();
    const std::int64_t start = std::min(a.start(), b.start());
    const std::int64_t trunc = std::min(a.truncation(), b.truncation());
    result.compared_to = trunc;
    auto res = [m](const QSeries& s, std::int64_t e) -> std::uint64_t {
        if (e < s.start()) return 0;
        const auto i = static_cast<std::size_t>(e - s.start());
        return s.is_modular() ? s.residues()[i] % m : mpz_fdiv_ui(s.integers()[i].get_mpz_t(), m);
    };
    for (std::int64_t e = start; e < trunc; ++e) {
        if (res(a, e) != res(b, e)) {
            result.congruent = false;
            result.first_mismatch = e;
            break;
        }
    }
    return result;
}

} // namespace pcong
