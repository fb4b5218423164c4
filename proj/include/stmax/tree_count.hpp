#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "stmax/graph.hpp"
#include "stmax/projective_plane.hpp"

namespace stmax {

enum class TauEngine { Auto, Bareiss, Crt, ClosedFormBipartite, ClosedFormPolarity };
std::string engine_name(TauEngine e);

struct TreeCount {
    mpz_class value;
    TauEngine engine;  // engine that produced the value (never Auto)
};

// Row-major dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> a_;
};

// Laplacian of g with row and column 0 deleted.
IntMatrix laplacian_minor(const Graph& g);

// Fraction-free elimination; consumes its argument.
mpz_class det_bareiss(IntMatrix m);

// Multi-modular determinant: residues mod a fixed descending list of
// 31-bit primes whose product exceeds twice the Hadamard bound, folded
// by Chinese remaindering. Equals det_bareiss on every input.
mpz_class det_crt(const IntMatrix& m, unsigned workers = 1);

TreeCount tau(const Graph& g, TauEngine engine = TauEngine::Auto, unsigned workers = 1);

mpz_class tau_complete_bipartite(std::uint64_t a, std::uint64_t b);  // a^(b-1) * b^(a-1)
mpz_class tau_er_closed_form(std::uint64_t q);                       // n^((n-3)/2), n = q^2+q+1

struct SpectralReport {
    std::uint64_t q = 0;
    std::uint64_t n = 0;
    bool identity_holds = false;
    std::uint64_t trace = 0;
    std::uint64_t mult_plus = 0;
    std::uint64_t mult_minus = 0;
};

// Checks A_loop^2 = J + qI entrywise and trace = q+1, then derives the
// eigenvalue multiplicities of +/- sqrt(q). Throws IdentityFailed on the
// first offending entry.
SpectralReport verify_polarity_spectrum(const PolarityGraphBundle& bundle);

namespace detail {
// Deterministic list of the largest `count` primes below 2^31, descending.
std::vector<std::uint32_t> crt_primes(std::size_t count);
bool is_prime_u32(std::uint32_t v);
}  // namespace detail

}  // namespace stmax
