#include "nmod_poly.hpp"

#include "qd/ff.hpp"

#include <algorithm>
#include <stdexcept>

namespace qd::nmod {

void trim(NPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const NPoly& a) { return static_cast<int>(a.size()) - 1; }

NPoly add(const NPoly& a, const NPoly& b, std::uint64_t p) {
    NPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    trim(r);
    return r;
}

NPoly sub(const NPoly& a, const NPoly& b, std::uint64_t p) {
    NPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    trim(r);
    return r;
}

NPoly mul(const NPoly& a, const NPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    NPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

NPoly scale(const NPoly& a, std::uint64_t s, std::uint64_t p) {
    NPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s % p;
    trim(r);
    return r;
}

void divrem(const NPoly& a, const NPoly& b, std::uint64_t p, NPoly& q, NPoly& r) {
    if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
    r = a;
    trim(r);
    const int db = deg(b);
    if (deg(r) < db) {
        q.clear();
        return;
    }
    const std::uint64_t linv = invmod(b.back(), p);
    q.assign(r.size() - b.size() + 1, 0);
    for (int i = deg(r); i >= db; --i) {
        std::uint64_t c = r[i] * linv % p;
        q[i - db] = c;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - c * b[j] % p) % p;
    }
    r.resize(db);
    trim(r);
    trim(q);
}

NPoly rem(const NPoly& a, const NPoly& b, std::uint64_t p) {
    NPoly q, r;
    divrem(a, b, p, q, r);
    return r;
}

NPoly quo(const NPoly& a, const NPoly& b, std::uint64_t p) {
    NPoly q, r;
    divrem(a, b, p, q, r);
    return q;
}

NPoly monic(const NPoly& a, std::uint64_t p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

NPoly gcd(NPoly a, NPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        NPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

void xgcd(const NPoly& a, const NPoly& b, std::uint64_t p, NPoly& g, NPoly& s, NPoly& t) {
    NPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        NPoly q, r;
        divrem(r0, r1, p, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        NPoly ns = sub(s0, mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(ns);
        NPoly nt = sub(t0, mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    std::uint64_t li = invmod(r0.back(), p);
    g = scale(r0, li, p);
    s = scale(s0, li, p);
    t = scale(t0, li, p);
}

NPoly derivative(const NPoly& a, std::uint64_t p) {
    if (a.size() <= 1) return {};
    NPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (i % p) % p;
    trim(r);
    return r;
}

NPoly powmod(const NPoly& base, const Integer& e, const NPoly& m, std::uint64_t p) {
    NPoly r{1}, b = rem(base, m, p);
    r = rem(r, m, p);
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        r = rem(mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = rem(mul(r, b, p), m, p);
    }
    return r;
}

bool is_squarefree(const NPoly& a, std::uint64_t p) {
    NPoly d = derivative(a, p);
    if (d.empty()) return deg(a) <= 0;
    return deg(gcd(a, d, p)) == 0;
}

std::uint64_t eval(const NPoly& a, std::uint64_t x, std::uint64_t p) {
    std::uint64_t r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = (r * x + a[i]) % p;
    return r;
}

std::uint64_t resultant(NPoly a, NPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    std::uint64_t res = 1;
    for (;;) {
        int da = deg(a), db = deg(b);
        if (db == 0) return res * qd::powmod(b[0], static_cast<std::uint64_t>(da), p) % p;
        if (da < db) {
            std::swap(a, b);
            if ((da * db) % 2) res = (p - res) % p;
            continue;
        }
        NPoly r = rem(a, b, p);
        if (r.empty()) return 0;
        res = res * qd::powmod(b.back(), static_cast<std::uint64_t>(da - deg(r)), p) % p;
        if ((da * db) % 2) res = (p - res) % p;
        a = std::move(b);
        b = std::move(r);
    }
}

std::vector<NPoly> distinct_degree(const NPoly& f, std::uint64_t p, int max_deg, NPoly& rest) {
    std::vector<NPoly> out;
    NPoly g = f;
    NPoly xp{0, 1};
    NPoly h = xp;
    const Integer P(static_cast<unsigned long>(p));
    for (int k = 1; deg(g) >= 2 * k && (max_deg <= 0 || k <= max_deg); ++k) {
        h = powmod(h, P, g, p);
        NPoly d = gcd(g, sub(h, xp, p), p);
        out.push_back(d);
        if (deg(d) > 0) {
            g = quo(g, d, p);
            h = rem(h, g, p);
        }
    }
    int k = static_cast<int>(out.size()) + 1;
    if (deg(g) > 0 && (max_deg <= 0 || deg(g) <= max_deg) && deg(g) < 2 * k) {
        // what remains is irreducible of degree deg(g)
        out.resize(deg(g), NPoly{1});
        out[deg(g) - 1] = g;
        g = NPoly{1};
    }
    rest = g;
    return out;
}

std::vector<NPoly> equal_degree(const NPoly& f, int k, std::uint64_t p, std::mt19937_64& rng) {
    if (deg(f) <= 0) return {};
    if (deg(f) == k) return {f};
    Integer e = Integer(static_cast<unsigned long>(p));
    mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(k));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (;;) {
        NPoly a(deg(f));
        for (auto& c : a) c = dist(rng);
        trim(a);
        if (deg(a) <= 0) continue;
        NPoly b = sub(powmod(a, e, f, p), NPoly{1}, p);
        NPoly g = gcd(f, b, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            auto left = equal_degree(g, k, p, rng);
            auto right = equal_degree(quo(f, g, p), k, p, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

std::vector<NPoly> factor_squarefree(const NPoly& f, std::uint64_t p) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ p);
    NPoly rest;
    auto parts = distinct_degree(f, p, 0, rest);
    std::vector<NPoly> out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto split = equal_degree(parts[k], static_cast<int>(k) + 1, p, rng);
        out.insert(out.end(), split.begin(), split.end());
    }
    if (deg(rest) > 0) out.push_back(rest);
    std::sort(out.begin(), out.end(), [](const NPoly& a, const NPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

}  // namespace qd::nmod
