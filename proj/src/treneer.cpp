#include "pcong/treneer.hpp"

#include <set>

#include "pcong/error.hpp"
#include "pcong/eta.hpp"
#include "pcong/modarith.hpp"
#include "pcong/operators.hpp"
#include "pcong/resources.hpp"

namespace pcong {

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / b) throw DomainError("power overflows 64 bits");
        r *= b;
    }
    return r;
}

void require_ell(std::uint64_t ell)
{
    if (ell < 5 || !is_prime_u64(ell)) throw DomainError("pipeline needs a prime ell >= 5");
}

EtaQuotient f_quotient(std::uint64_t level)
{
    return EtaQuotient(level, {{12, -2}});
}

EtaQuotient F_quotient(std::uint64_t ell, std::uint64_t level)
{
    return EtaQuotient(level, {{1, static_cast<std::int64_t>(ell * ell)}, {ell * ell, -1}});
}

} // namespace

unsigned m_ell(std::uint64_t ell)
{
    require_ell(ell);
    return ell <= 23 ? 2 : 1;
}

std::int64_t kappa_for(std::uint64_t ell, unsigned beta)
{
    return -1 + static_cast<std::int64_t>(upow(ell, beta) * ((ell * ell - 1) / 2));
}

unsigned choose_beta(std::uint64_t ell, unsigned j)
{
    require_ell(ell);
    if (j < 1) throw DomainError("j must be at least 1");
    const std::uint64_t level = 144 * ell * ell;
    const auto F = F_quotient(ell, level);
    std::set<std::int64_t> denominators;
    for (const auto& c : cusps(level))
        if (c.c % static_cast<std::int64_t>(ell * ell) != 0) denominators.insert(c.c);
    for (unsigned beta = j - 1; beta < 40; ++beta) {
        const Rational scale(Int(std::to_string(upow(ell, beta))));
        bool ok = true;
        for (const auto c : denominators) {
            // The order only depends on c; the pole bound is one unit of q, i.e. `width` local units.
            const Rational order = cusp_order(F, 1, c) * scale;
            const Rational pole(static_cast<unsigned long>(cusp_width(level, static_cast<std::uint64_t>(c))));
            if (order <= pole) {
                ok = false;
                break;
            }
        }
        if (ok) return beta;
    }
    throw DomainError("no admissible beta below 40");
}

PipelineContext PipelineContext::make(std::uint64_t ell, unsigned j)
{
    PipelineContext ctx;
    ctx.ell = ell;
    ctx.j = j;
    ctx.m = m_ell(ell);
    ctx.beta = choose_beta(ell, j);
    ctx.kappa = kappa_for(ell, ctx.beta);
    return ctx;
}

std::uint64_t PipelineContext::modulus() const
{
    return upow(ell, j);
}

std::uint64_t PipelineContext::step() const
{
    return upow(ell, m);
}

TruncationBudget truncation_budget(const PipelineContext& ctx, std::int64_t t)
{
    if (t < 1) throw DomainError("truncation must be positive");
    TruncationBudget b;
    b.output = t;
    b.f_truncation = static_cast<std::int64_t>(ctx.step()) * t;
    b.F_truncation = t;
    // f with its two intermediate copies, and F, its power, f_m and g at the output size.
    b.bytes = 8 * (3 * static_cast<std::size_t>(b.f_truncation) + 6 * static_cast<std::size_t>(t));
    check_estimate(b.bytes, "pipeline for ell=" + std::to_string(ctx.ell) + ", j=" + std::to_string(ctx.j));
    return b;
}

QSeries build_f(std::int64_t t, const Ring& ring)
{
    return expand(f_quotient(144), t, ring);
}

QSeries build_fm(const QSeries& f, unsigned m, std::uint64_t ell, std::int64_t t)
{
    require_ell(ell);
    const auto lm = static_cast<std::int64_t>(upow(ell, m));
    const auto l = static_cast<std::int64_t>(ell);
    if (f.grain() != 1 || f.truncation() < lm * t)
        throw TruncationError("f_m below q^" + std::to_string(t) + " needs f exact below q^" + std::to_string(lm * t));
    const auto first = u_op(f, lm);
    const auto second = v_op(u_op(f, lm * l), l);
    const auto fm = sub(first, second);
    if (fm.truncation() < t) throw TruncationError("f_m truncation fell short");
    return fm.truncated(t);
}

QSeries build_fm(unsigned m, std::uint64_t ell, std::int64_t t, const Ring& ring)
{
    require_ell(ell);
    return build_fm(build_f(static_cast<std::int64_t>(upow(ell, m)) * t, ring), m, ell, t);
}

QSeries build_F(std::uint64_t ell, std::int64_t t, const Ring& ring)
{
    require_ell(ell);
    return expand(F_quotient(ell, ell * ell), t, ring);
}

QSeries build_g(const PipelineContext& ctx, const QSeries& f, std::int64_t t)
{
    const std::uint64_t m = ctx.modulus();
    const QSeries fr = f.ring() == Ring::modular(m) ? f : reduce_mod(f, m);
    const auto fm = build_fm(fr, ctx.m, ctx.ell, t);
    const auto F = build_F(ctx.ell, t, Ring::modular(m));
    const auto Fpow = pow(F, upow(ctx.ell, std::min(ctx.beta, ctx.j - 1)));
    return mul(fm, Fpow).truncated(t);
}

QSeries build_g(const PipelineContext& ctx, std::int64_t t)
{
    const auto budget = truncation_budget(ctx, t);
    return build_g(ctx, build_f(budget.f_truncation, Ring::modular(ctx.modulus())), t);
}

int g_character(const PipelineContext& ctx, const Int& d)
{
    const std::uint64_t level = 144 * ctx.ell * ctx.ell;
    const int chi_f = modularity_check(f_quotient(level)).character(d);
    const int chi_F = modularity_check(F_quotient(ctx.ell, level)).character(d);
    // chi_F takes values in {-1, 0, 1} and ell^beta is odd, so the power is chi_F itself.
    return chi_f * chi_F;
}

} // namespace pcong
