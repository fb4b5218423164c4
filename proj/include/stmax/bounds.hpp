#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "stmax/bigfloat.hpp"
#include "stmax/graph.hpp"

namespace stmax {

// Always canonicalized: denominator > 0, lowest terms.
using Rational = mpq_class;

// prod(deg(v)+1) / n^2
Rational kns_bound(const Graph& g);

// Degree-sum envelope P(S) = (a+2)^r (a+1)^(n-r) with S = n*a + r, 0 <= r < n:
// the maximum of prod(d_i + 1) over nonnegative compositions of S.
mpz_class envelope_P(std::uint64_t n, std::uint64_t S);

// P(S-1) / P(S); always <= (a+1)/(a+2)
Rational ratio_step(std::uint64_t n, std::uint64_t S);

struct FurediBudget {
    mpz_class edges;  // q(q+1)^2 / 2
    bool valid;       // the C4 extremal theorem needs q >= 14
};
FurediBudget furedi_budget(std::uint64_t q);

// (q+1)^(q+1) (q+2)^(n-q-1) / n^2 with n = q^2+q+1. The hypothesis q >= 14
// is enforced unless the caller opts out (reference values only).
Rational prop4_upper_bound(std::uint64_t q, bool enforce_hypothesis = true);

struct LogBound {
    Real natural_log_value;                     // ln(exact_part) + deficit_exponent
    unsigned precision_bits;                    // |value - truth| < 2^(4 - precision_bits)
    std::optional<Rational> exact_part;
    std::optional<Rational> deficit_exponent;   // -2t/(q+2)
};

// Upper bound for tau at edge deficit t below the full budget.
LogBound deficit_bound(std::uint64_t q, std::uint64_t t, unsigned precision_bits,
                       bool enforce_hypothesis = true);

struct Path2Check {
    mpz_class lhs;  // sum_v C(deg v, 2)
    mpz_class rhs;  // (t-1) C(n, 2)
    bool holds;
};
Path2Check path2_inequality_check(const Graph& g, std::uint64_t t);

// envelope_P(n, 2*edge_budget) / n^2: the universal st(n, H) envelope
// for any edge budget ex(n, H) <= edge_budget.
Rational generic_envelope_bound(std::uint64_t n, std::uint64_t edge_budget);

// ceil( sqrt(t-1)/2 * n^(3/2) + c*n ), exact integer ceiling
mpz_class k2t_edge_budget(std::uint64_t n, std::uint64_t t, const Rational& c = Rational(0));

// ceil( C_k * n^(1+1/k) + c*n ), exact integer ceiling; C_k >= 0
mpz_class c2k_edge_budget(std::uint64_t n, std::uint32_t k, const Rational& C_k,
                          const Rational& c = Rational(0));

struct LeadingTermReport {
    std::uint64_t q = 0;
    std::uint64_t n = 0;
    Real log_lower;       // ln n^((n-3)/2)
    Real log_upper;       // ln prop4_upper_bound(q)
    Real half_n_log_n;    // (n/2) ln n
    Real residual_lower;  // (log_lower - half_n_log_n) / (sqrt(n) ln n)
    Real residual_upper;  // (log_upper - half_n_log_n) / (sqrt(n) ln n)
    bool ordering_exact = false;  // n^2 n^((n-3)/2) <= (q+1)^(q+1) (q+2)^(n-q-1), integer check
};
LeadingTermReport leading_term_report(std::uint64_t q, unsigned precision_bits);

}  // namespace stmax
