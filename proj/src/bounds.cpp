#include "stmax/bounds.hpp"

#include <cassert>

#include "stmax/errors.hpp"
#include "stmax/finite_field.hpp"

namespace stmax {

namespace {

mpz_class zpow(const mpz_class& base, std::uint64_t e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class upow(std::uint64_t base, std::uint64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

mpz_class binom2(const mpz_class& x) { return x * (x - 1) / 2; }

Rational ratq(mpz_class num, mpz_class den) {
    Rational r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

}  // namespace

Rational kns_bound(const Graph& g) {
    mpz_class prod = 1;
    for (std::uint32_t d : g.degrees()) prod *= d + 1;
    return ratq(std::move(prod), mpz_class(g.n()) * mpz_class(g.n()));
}

mpz_class envelope_P(std::uint64_t n, std::uint64_t S) {
    assert(n >= 1);
    const std::uint64_t a = S / n;
    const std::uint64_t r = S - n * a;
    return upow(a + 2, r) * upow(a + 1, n - r);
}

Rational ratio_step(std::uint64_t n, std::uint64_t S) {
    assert(S >= 1);
    return ratq(envelope_P(n, S - 1), envelope_P(n, S));
}

FurediBudget furedi_budget(std::uint64_t q) {
    mpz_class qz(static_cast<unsigned long>(q));
    return {qz * (qz + 1) * (qz + 1) / 2, q >= 14};
}

Rational prop4_upper_bound(std::uint64_t q, bool enforce_hypothesis) {
    if (enforce_hypothesis && q < 14) {
        throw HypothesisViolated("upper bound requires q >= 14, got q = " + std::to_string(q));
    }
    const std::uint64_t n = q * q + q + 1;
    return ratq(upow(q + 1, q + 1) * upow(q + 2, n - q - 1), mpz_class(n) * mpz_class(n));
}

LogBound deficit_bound(std::uint64_t q, std::uint64_t t, unsigned precision_bits,
                       bool enforce_hypothesis) {
    if (enforce_hypothesis && q < 14) {
        throw HypothesisViolated("deficit bound requires q >= 14, got q = " + std::to_string(q));
    }
    if (t > q * q / 2) {
        throw HypothesisViolated("deficit t = " + std::to_string(t) + " exceeds q^2/2 = " +
                                 std::to_string(q * q / 2));
    }
    Rational exact = prop4_upper_bound(q, enforce_hypothesis);
    Rational expo = ratq(-2 * mpz_class(static_cast<unsigned long>(t)), mpz_class(q + 2));
    // extra working bits keep the absolute error under the 2^(4-prec) contract
    const mpfr_prec_t wp = static_cast<mpfr_prec_t>(precision_bits) + 64;
    Real value = Real::ln_q(exact, wp) + Real::of_q(expo, wp);
    return LogBound{std::move(value), precision_bits, std::move(exact), std::move(expo)};
}

Path2Check path2_inequality_check(const Graph& g, std::uint64_t t) {
    assert(t >= 2);
    mpz_class lhs = 0;
    for (std::uint32_t d : g.degrees()) lhs += binom2(mpz_class(d));
    mpz_class rhs = mpz_class(static_cast<unsigned long>(t - 1)) * binom2(mpz_class(g.n()));
    bool holds = lhs <= rhs;
    return {std::move(lhs), std::move(rhs), holds};
}

Rational generic_envelope_bound(std::uint64_t n, std::uint64_t edge_budget) {
    return ratq(envelope_P(n, 2 * edge_budget), mpz_class(n) * mpz_class(n));
}

namespace {

// Smallest M with pred(M) true, pred monotone nondecreasing in M.
template <class Pred>
mpz_class first_true(Pred pred) {
    mpz_class hi = 1;
    while (!pred(hi)) hi *= 2;
    mpz_class lo = 0;  // pred(0) may already hold
    while (lo < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace

mpz_class k2t_edge_budget(std::uint64_t n, std::uint64_t t, const Rational& c) {
    if (t < 2) throw HypothesisViolated("K_{2,t} budget needs t >= 2");
    const mpz_class nz(static_cast<unsigned long>(n));
    const mpz_class x = (t - 1) * nz * nz * nz;        // (t-1) n^3 = (2 * sqrt-part)^2
    const mpz_class cv = c.get_den(), cu = c.get_num();
    // M >= sqrt(x)/2 + cn  <=>  A := M*cv - cu*n >= 0 and 4 A^2 >= x cv^2
    return first_true([&](const mpz_class& m) {
        mpz_class a = m * cv - cu * nz;
        if (a < 0) return false;
        return 4 * a * a >= x * cv * cv;
    });
}

mpz_class c2k_edge_budget(std::uint64_t n, std::uint32_t k, const Rational& C_k,
                          const Rational& c) {
    if (k < 2) throw HypothesisViolated("C_{2k} budget needs k >= 2");
    if (C_k < 0) throw HypothesisViolated("C_{2k} budget needs C_k >= 0");
    const mpz_class nz(static_cast<unsigned long>(n));
    const mpz_class cv = c.get_den(), cu = c.get_num();
    const mpz_class bu = C_k.get_num(), bv = C_k.get_den();
    // M >= C_k n^(1+1/k) + cn  <=>  A := M*cv - cu*n >= 0 and (A bv)^k >= (bu cv n)^k * n
    const mpz_class rhs = zpow(bu * cv * nz, k) * nz;
    return first_true([&](const mpz_class& m) {
        mpz_class a = m * cv - cu * nz;
        if (a < 0) return false;
        return zpow(a * bv, k) >= rhs;
    });
}

LeadingTermReport leading_term_report(std::uint64_t q, unsigned precision_bits) {
    if (q < 14) throw HypothesisViolated("leading-term report requires q >= 14");
    if (!is_prime_power(q)) {
        throw HypothesisViolated("leading-term report requires a prime power, got q = " +
                                 std::to_string(q));
    }
    const std::uint64_t n = q * q + q + 1;
    const mpfr_prec_t wp = static_cast<mpfr_prec_t>(precision_bits) + 64;

    const Real ln_n = Real::ln_z(mpz_class(n), wp);
    LeadingTermReport rep;
    rep.q = q;
    rep.n = n;
    rep.log_lower = Real::of_q(ratq(mpz_class(n - 3), 2), wp) * ln_n;
    rep.log_upper = Real::ln_q(prop4_upper_bound(q), wp);
    rep.half_n_log_n = Real::of_q(ratq(mpz_class(n), 2), wp) * ln_n;
    const Real scale = Real::of_ui(n, wp).sqrt() * ln_n;
    rep.residual_lower = (rep.log_lower - rep.half_n_log_n) / scale;
    rep.residual_upper = (rep.log_upper - rep.half_n_log_n) / scale;
    // n^2 n^((n-3)/2) <= (q+1)^(q+1) (q+2)^(n-q-1), compared on integers
    rep.ordering_exact =
        upow(n, 2 + (n - 3) / 2) <= upow(q + 1, q + 1) * upow(q + 2, n - q - 1);
    return rep;
}

}  // namespace stmax
