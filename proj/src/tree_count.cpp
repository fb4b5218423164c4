#include "stmax/tree_count.hpp"

#include <atomic>
#include <cassert>
#include <thread>

#include "stmax/errors.hpp"
#include "stmax/finite_field.hpp"
#include "stmax/kernels.hpp"

namespace stmax {

std::string engine_name(TauEngine e) {
    switch (e) {
        case TauEngine::Auto: return "auto";
        case TauEngine::Bareiss: return "bareiss";
        case TauEngine::Crt: return "crt";
        case TauEngine::ClosedFormBipartite: return "closed_form_bipartite";
        case TauEngine::ClosedFormPolarity: return "closed_form_polarity";
    }
    return "?";
}

IntMatrix laplacian_minor(const Graph& g) {
    const std::size_t n = g.n();
    IntMatrix m(n - 1, n - 1);
    for (std::uint32_t i = 1; i < n; ++i) {
        const std::uint64_t* r = g.row(i);
        m.at(i - 1, i - 1) = g.degree(i);
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if ((r[j / 64] >> (j % 64)) & 1) {
                m.at(i - 1, j - 1) = -1;
                m.at(j - 1, i - 1) = -1;
            }
        }
    }
    return m;
}

mpz_class det_bareiss(IntMatrix m) {
    assert(m.rows() == m.cols());
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m.at(piv, k) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                assert(mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()));
                mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

namespace detail {

bool is_prime_u32(std::uint32_t v) {
    if (v < 2) return false;
    for (std::uint32_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (v == d) return true;
        if (v % d == 0) return false;
    }
    // Miller-Rabin with bases 2, 7, 61: deterministic below 4.759e9
    std::uint32_t d = v - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint32_t a : {2u, 7u, 61u}) {
        std::uint64_t x = 1;
        std::uint64_t base = a % v;
        std::uint32_t e = d;
        while (e) {
            if (e & 1) x = x * base % v;
            base = base * base % v;
            e >>= 1;
        }
        if (x == 1 || x == v - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = x * x % v;
            if (x == v - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint32_t> crt_primes(std::size_t count) {
    std::vector<std::uint32_t> out;
    out.reserve(count);
    for (std::uint32_t c = 0x7fffffffu; out.size() < count; c -= 2) {
        if (is_prime_u32(c)) out.push_back(c);
        if (c < 3) throw std::logic_error("prime list exhausted");
    }
    return out;
}

}  // namespace detail

namespace {

// det mod p by Gaussian elimination; entries of `m` reduced on entry.
std::uint32_t det_mod_p(const IntMatrix& m, const kern::ModCtx& ctx) {
    const std::size_t n = m.rows();
    const std::uint32_t p = ctx.p;
    std::vector<std::uint32_t> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = static_cast<std::uint32_t>(mpz_fdiv_ui(m.at(i, j).get_mpz_t(), p));
        }
    }
    std::uint32_t det = 1;
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv * n + k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            negate = !negate;
        }
        const std::uint32_t pivot = a[k * n + k];
        det = ctx.mul(det, pivot);
        const std::uint32_t pinv = ctx.inv(pivot);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::uint32_t head = a[i * n + k];
            if (head == 0) continue;
            // row_i += (p - head/pivot) * row_k clears column k
            const std::uint32_t c = p - ctx.mul(head, pinv);
            kern::mod_axpy(&a[i * n + k], &a[k * n + k], n - k, c, ctx);
            assert(a[i * n + k] == 0);
        }
    }
    return negate ? (det == 0 ? 0 : p - det) : det;
}

}  // namespace

mpz_class det_crt(const IntMatrix& m, unsigned workers) {
    assert(m.rows() == m.cols());
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    // Hadamard: |det|^2 <= prod_i sum_j a_ij^2
    mpz_class bound2 = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class row = 0;
        for (std::size_t j = 0; j < n; ++j) row += m.at(i, j) * m.at(i, j);
        if (row == 0) return 0;
        bound2 *= row;
    }
    mpz_class bound = sqrt(bound2) + 1;

    // enough primes that their product exceeds 2*bound
    const mpz_class target = 2 * bound;
    std::size_t want = mpz_sizeinbase(target.get_mpz_t(), 2) / 30 + 1;
    std::vector<std::uint32_t> primes = detail::crt_primes(want);
    mpz_class prod = 1;
    for (std::uint32_t p : primes) prod *= p;
    while (prod <= target) {
        primes = detail::crt_primes(primes.size() + 1);
        prod *= primes.back();
    }

    std::vector<std::uint32_t> residues(primes.size());
    unsigned nthreads = std::min<unsigned>(std::max(1u, workers), primes.size());
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            residues[i] = det_mod_p(m, kern::ModCtx(primes[i]));
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                residues[i] = det_mod_p(m, kern::ModCtx(primes[i]));
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // incremental CRT in fixed prime order
    mpz_class x = 0, mod = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint32_t p = primes[i];
        const std::uint32_t xi = static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p));
        const std::uint32_t mi = static_cast<std::uint32_t>(mpz_fdiv_ui(mod.get_mpz_t(), p));
        kern::ModCtx ctx(p);
        std::uint32_t delta = residues[i] >= xi ? residues[i] - xi : residues[i] + p - xi;
        std::uint32_t tmult = ctx.mul(delta, ctx.inv(mi));
        x += mod * tmult;
        mod *= p;
    }
    if (x * 2 > mod) x -= mod;  // symmetric range recovers the sign
    return x;
}

TreeCount tau(const Graph& g, TauEngine engine, unsigned workers) {
    if (engine == TauEngine::ClosedFormBipartite || engine == TauEngine::ClosedFormPolarity) {
        throw std::invalid_argument("closed-form engines need their dedicated entry points");
    }
    if (g.n() == 1) return {mpz_class(1), engine == TauEngine::Crt ? TauEngine::Crt : TauEngine::Bareiss};
    if (!g.is_connected()) return {mpz_class(0), engine == TauEngine::Crt ? TauEngine::Crt : TauEngine::Bareiss};
    TauEngine pick = engine;
    if (pick == TauEngine::Auto) pick = g.n() <= 64 ? TauEngine::Bareiss : TauEngine::Crt;
    IntMatrix m = laplacian_minor(g);
    mpz_class v = pick == TauEngine::Bareiss ? det_bareiss(std::move(m)) : det_crt(m, workers);
    return {std::move(v), pick};
}

mpz_class tau_complete_bipartite(std::uint64_t a, std::uint64_t b) {
    assert(a >= 1 && b >= 1);
    mpz_class r, s;
    mpz_ui_pow_ui(r.get_mpz_t(), a, b - 1);
    mpz_ui_pow_ui(s.get_mpz_t(), b, a - 1);
    return r * s;
}

mpz_class tau_er_closed_form(std::uint64_t q) {
    if (!is_prime_power(q)) {
        throw NotAPrimePower("q = " + std::to_string(q) + " is not a prime power");
    }
    const std::uint64_t n = q * q + q + 1;
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), n, (n - 3) / 2);
    return r;
}

SpectralReport verify_polarity_spectrum(const PolarityGraphBundle& bundle) {
    const Graph& g = bundle.simple_graph;
    const std::size_t n = g.n();
    const std::size_t w = g.words();
    const std::uint64_t q = bundle.field.q();

    // looped adjacency: diagonal 1s at absolute points
    std::vector<std::uint64_t> rows(n * w);
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint64_t* r = g.row(i);
        std::copy(r, r + w, rows.begin() + i * w);
    }
    for (std::uint32_t i : bundle.absolute_indices) rows[i * w + i / 64] |= 1ULL << (i % 64);

    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i; j < n; ++j) {
            const std::uint64_t got = kern::and_popcount(&rows[i * w], &rows[j * w], w);
            const std::uint64_t want = (i == j) ? q + 1 : 1;
            if (got != want) {
                throw IdentityFailed("A^2 entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") = " + std::to_string(got) + ", expected " +
                                     std::to_string(want));
            }
        }
    }

    std::uint64_t trace = 0;
    for (std::uint32_t i = 0; i < n; ++i) trace += (rows[i * w + i / 64] >> (i % 64)) & 1;
    if (trace != q + 1) {
        throw IdentityFailed("trace = " + std::to_string(trace) + ", expected " +
                             std::to_string(q + 1));
    }

    SpectralReport rep;
    rep.q = q;
    rep.n = n;
    rep.identity_holds = true;
    rep.trace = trace;
    rep.mult_plus = rep.mult_minus = (n - 1) / 2;
    return rep;
}

}  // namespace stmax
