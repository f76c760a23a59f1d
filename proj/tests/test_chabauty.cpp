#include "doctest.h"
#include "gen.hpp"

#include "qd/chabauty.hpp"
#include "qd/text.hpp"

#include <map>
#include <set>
#include <sstream>

using namespace qd;
using namespace qd::chabauty;
using qdtest::uniform;

namespace {

// w1 at P0 in t = x, as printed to 32 terms.
const char* const kOmega1[32] = {
    "-1", "3", "-11", "56", "-283", "1438", "-7506", "39723", "-211939", "1139043", "-6157964",
    "33448053", "-182389282", "997848854", "-5474673325", "30110184065", "-165957302527",
    "916424740644", "-5069007570927", "28080034612882", "-155759823221656", "865048247560705",
    "-4809544720320519", "26767288658743629", "-149109354289320238", "831329586241569831",
    "-4638535883774463494", "25900170663332468144", "-144715739340500871241",
    "809096110462736894221", "-4526238826848117522585", "25334445278892249580026"};

// Series in T, U modulo 2^5 as printed.
const char* const kLambda1Re =
    "16T^16+16T^12+16T^9+16T^8U^4+16T^8U+22T^8+16T^7+24T^6U^2+16T^6U+16T^5U^2+16T^5U+28T^5+16T^4U^8+4T^4U^4+"
    "16T^4U^3+20T^4U+8T^4+16T^3U^4+8T^3U^2+18T^3+24T^2U^6+16T^2U^5+24T^2U^3+16T^2U^2+22T^2U+16TU^8+16TU^6+"
    "16TU^5+12TU^4+10TU^2+26TU+31T+16U^16+16U^12+16U^9+22U^8+16U^7+4U^5+8U^4+14U^3+U";
const char* const kLambda1Im =
    "16T^10+16T^9+16T^8U^2+16T^8U+16T^7U+16T^7+16T^6U+24T^6+16T^5U^3+16T^5U^2+28T^5+16T^4U^3+24T^4U^2+12T^4U+"
    "16T^3U^5+16T^3U^4+8T^3U^2+14T^3+16T^2U^8+16T^2U^5+8T^2U^4+8T^2U^3+22T^2U+3T^2+16TU^8+16TU^7+16TU^6+"
    "12TU^4+22TU^2+31T+16U^10+16U^9+16U^7+8U^6+28U^5+14U^3+29U^2+31U";
const char* const kLambda2Re =
    "16T^16+16T^9+16T^8U+28T^8+16T^7+16T^6U^2+16T^6U+16T^5U^2+8T^5U+8T^4U^4+16T^4U^3+11T^4+16T^3U^4+16T^3U^3+"
    "30T^3+16T^2U^6+16T^2U^5+30T^2U^2+26T^2U+16TU^8+16TU^6+8TU^5+6TU^2+2TU+16U^16+16U^9+28U^8+16U^7+11U^4+2U^3";
const char* const kLambda2Im =
    "16T^10+16T^9+16T^8U^2+16T^8U+16T^7+16T^6U+4T^6+16T^5U^2+16T^4U^3+4T^4U^2+16T^3U^4+12T^3U+2T^3+16T^2U^8+"
    "16T^2U^5+28T^2U^4+26T^2U+31T^2+16TU^8+16TU^6+20TU^3+26TU^2+16U^10+16U^9+16U^7+28U^6+2U^3+U^2";
const char* const kMu1 =
    "16T^16+16T^9+16T^8U+16T^8+16T^7+16T^6U+16T^5U^2+24T^5U+24T^5+16T^4U^3+8T^4U+29T^4+16T^3U^4+16T^3U^3+"
    "16T^3U^2+22T^3+16T^2U^5+16T^2U^3+18T^2U^2+2T^2U+16TU^8+16TU^6+24TU^5+24TU^4+30TU^2+2TU+30T+16U^16+16U^9+"
    "16U^8+16U^7+8U^5+29U^4+10U^3+2U";
const char* const kMu2 =
    "16T^7U+12T^6+16T^5U^3+28T^5+12T^4U^2+12T^4U+16T^3U^5+8T^3U^2+28T^3U+8T^3+20T^2U^4+8T^2U^3+8T^2U+22T^2+"
    "16TU^7+12TU^4+4TU^3+8TU^2+31T+20U^6+28U^5+8U^3+10U^2+31U";

using Monomials = std::map<std::pair<int, int>, std::uint64_t>;

// "16T^8U^4+31T+U" -> {(8,4):16, (1,0):31, (0,1):1}
Monomials parse_monomials(const std::string& s) {
    Monomials out;
    std::size_t i = 0;
    auto number = [&] {
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = 10 * v + static_cast<std::uint64_t>(s[i++] - '0');
        return v;
    };
    while (i < s.size()) {
        if (s[i] == '+') ++i;
        std::uint64_t c = std::isdigit(static_cast<unsigned char>(s[i])) ? number() : 1;
        int e[2] = {0, 0};
        while (i < s.size() && (s[i] == 'T' || s[i] == 'U')) {
            const int var = s[i++] == 'T' ? 0 : 1;
            e[var] = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                e[var] = static_cast<int>(number());
            }
        }
        out[{e[0], e[1]}] += c;
    }
    return out;
}

// Monomials of s whose real (or imaginary) residue differs from the display.
std::vector<std::string> mismatches(const BiTruncSeries& s, bool imaginary, const std::string& display) {
    const Monomials want = parse_monomials(display);
    std::vector<std::string> bad;
    for (int i = 0; i <= s.cap(); ++i)
        for (int j = 0; i + j <= s.cap(); ++j) {
            const GaussAdic& a = s.coeff(i, j);
            const std::uint64_t got = (imaginary ? a.im() : a.re()) % 32;
            auto it = want.find({i, j});
            const std::uint64_t exp = it == want.end() ? 0 : it->second % 32;
            if (got != exp)
                bad.push_back("T^" + std::to_string(i) + "U^" + std::to_string(j) + ": " + std::to_string(got) + " vs " +
                              std::to_string(exp));
        }
    for (const auto& [e, c] : want)
        if (e.first + e.second > s.cap()) bad.push_back("display term beyond cap");
    return bad;
}

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += x + "; ";
    return s;
}

// Reduction of a 2-integral element of Q(i) modulo 2^m, by hand through GMP.
std::pair<std::uint64_t, std::uint64_t> reduce_by_hand(const QuadElem& z, int m) {
    const Integer mod = Integer(1) << m;
    auto one = [&](const Rational& q) {
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
            throw std::domain_error("not 2-integral");
        Integer r = (q.get_num() * inv) % mod;
        if (r < 0) r += mod;
        return static_cast<std::uint64_t>(r.get_ui());
    };
    return {one(z.a()), one(z.b())};
}

// Lambda evaluated exactly in Q(i): sum_k lambda_k (x_P^k + x_Q^k) with the power
// sums of the roots of x^2 - trace x + norm computed by Newton's identities.
QuadElem lambda_exact(const TruncSeries& lambda, const QuadElem& trace, const QuadElem& norm) {
    QuadElem prev(Rational(2), -1), cur = trace, total(-1);
    total += prev.scaled(lambda[0]);
    if (lambda.cap() >= 1) total += cur.scaled(lambda[1]);
    for (int k = 2; k <= lambda.cap(); ++k) {
        QuadElem next = trace * cur - norm * prev;
        total += next.scaled(lambda[k]);
        prev = cur;
        cur = next;
    }
    return total;
}

// The span of vs modulo 2^prec, enumerated.
std::set<Coeffs> span_brute(const std::vector<Coeffs>& vs, int prec) {
    const std::uint64_t mask = (1ull << prec) - 1;
    std::set<Coeffs> seen{Coeffs{0, 0, 0, 0}};
    std::vector<Coeffs> todo{Coeffs{0, 0, 0, 0}};
    while (!todo.empty()) {
        const Coeffs a = todo.back();
        todo.pop_back();
        for (const Coeffs& v : vs) {
            Coeffs b;
            for (int k = 0; k < 4; ++k) b[k] = (a[k] + v[k]) & mask;
            if (seen.insert(b).second) todo.push_back(b);
        }
    }
    return seen;
}

GaussAdic random_adic(int prec) {
    return GaussAdic(uniform(-1000000, 1000000), uniform(-1000000, 1000000), prec);
}

const Report& pipeline() {
    static const Report r = run_pipeline();
    return r;
}

const DiskCertificate& final_disk(int k) {
    for (const auto& d : pipeline().disks)
        if (d.disk == k) return d;
    throw std::logic_error("disk missing");
}

}  // namespace

TEST_CASE("w1 at P0 matches the printed integers") {
    const Differentials w = expand_differentials(0, 32);
    REQUIRE(w.omega1.cap() == 31);
    for (int k = 0; k < 32; ++k) CHECK(w.omega1[k] == Rational(kOmega1[k]));
}

TEST_CASE("w1 at P0 equals -(f)^(-1/2) by the binomial series") {
    // At P0 the map to y^2 = f sends 2y + h to -sqrt(f) with sqrt(f)(0) = 1.
    const int n = 40;
    const QPoly f = x05_polynomial();
    TruncSeries z = TruncSeries::from_poly(f, n - 1);
    z[0] -= 1;
    TruncSeries sum(n - 1), power(n - 1);
    power[0] = 1;
    Rational binom(1);  // binom(-1/2, k)
    for (int k = 0; k < n; ++k) {
        sum = sum + power.scaled(binom);
        power = power * z;
        binom *= Rational(-1, 2) - k;
        binom /= k + 1;
    }
    const Differentials w = expand_differentials(0, n);
    CHECK(w.omega1 == sum.scaled(Rational(-1)));
}

TEST_CASE("w2 is x w1 on the affine disks and the integrals start at zero") {
    for (int disk : {0, 1, 2, 3}) {
        const Rational x0 = disk_centers()[static_cast<std::size_t>(disk)].point.x.a();
        const Differentials w = expand_differentials(disk, 20);
        CHECK(w.omega2[0] == x0 * w.omega1[0]);
        for (int k = 1; k < 20; ++k) CHECK(w.omega2[k] == w.omega1[k - 1] + x0 * w.omega1[k]);
    }
    const Differentials w = expand_differentials(0, 32);
    const TruncSeries l1 = integrate(w.omega1), l2 = integrate(w.omega2);
    CHECK(l1.cap() == 32);
    CHECK(l1[0] == 0);
    CHECK(l1[1] == -1);
    CHECK(l1[2] == Rational(3, 2));
    CHECK(l1[31] == Rational("-4526238826848117522585/31"));
    CHECK(l1[32] == Rational("12667222639446124790013/16"));
    CHECK(l2[2] == Rational(-1, 2));
    CHECK(l2[3] == 1);
    CHECK(l2[31] == Rational("809096110462736894221/31"));
    CHECK(l2[32] == Rational("-4526238826848117522585/32"));
}

TEST_CASE("the differentials at infinity are -u/(2v + H) du and -1/(2v + H) du") {
    const Differentials w = expand_differentials(4, 12);
    CHECK(w.omega1[0] == 0);
    CHECK(w.omega2[0] != 0);
    for (int k = 1; k < 12; ++k) CHECK(w.omega1[k] == w.omega2[k - 1]);
    const Differentials m = expand_differentials(5, 12);
    for (int k = 0; k < 12; ++k) CHECK(m.omega2[k] == -w.omega2[k]);
}

TEST_CASE("GaussAdic is a commutative ring modulo 2^prec") {
    for (int trial = 0; trial < 300; ++trial) {
        const int prec = static_cast<int>(uniform(1, 62));
        const GaussAdic a = random_adic(prec), b = random_adic(prec), c = random_adic(prec);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == GaussAdic(0, 0, prec));
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (a.valuation() == 0) CHECK(a * a.inverse() == GaussAdic(1, 0, prec));
        if (!(a * b).is_zero() && a.valuation() + b.valuation() < 2 * prec) CHECK((a * b).valuation() == a.valuation() + b.valuation());
    }
}

TEST_CASE("GaussAdic conversions and valuations") {
    CHECK(GaussAdic(2, 0, 8).valuation() == 2);
    CHECK(GaussAdic(1, 1, 8).valuation() == 1);
    CHECK(GaussAdic(0, 0, 8).valuation() == 16);
    CHECK(GaussAdic(17, 47, 6).to_string() == "17 + 47i");
    CHECK(GaussAdic(0, 30, 6).to_string() == "30i");
    CHECK(GaussAdic(0, 0, 6).to_string() == "0");
    CHECK(GaussAdic(-1, 0, 6) == GaussAdic(63, 0, 6));
    for (int trial = 0; trial < 200; ++trial) {
        long den = 0;
        while (den % 2 == 0) den = uniform(1, 999);
        const Rational q(uniform(-5000, 5000), den);
        Rational qc = q;
        qc.canonicalize();
        const int prec = static_cast<int>(uniform(1, 40));
        const GaussAdic x = GaussAdic::from_rational(qc, prec);
        CHECK(x * GaussAdic(qc.get_den().get_si(), 0, prec) == GaussAdic(qc.get_num().get_si(), 0, prec));
    }
    CHECK_THROWS_AS(GaussAdic::from_rational(Rational(1, 2), 6), std::domain_error);
    CHECK_THROWS_AS(GaussAdic::from_quad(QuadElem(Rational(0), Rational(3, 4), -1), 6), std::domain_error);
    CHECK(gauss_valuation(QuadElem(Rational(1), Rational(1), -1)) == 1);
    CHECK(gauss_valuation(QuadElem(Rational(1, 4), Rational(0), -1)) == -4);
    CHECK(ord2(Rational(12, 5)) == 2);
    const GaussAdic s = GaussAdic(24, 8, 7).shifted_down(3);
    CHECK(s == GaussAdic(3, 1, 4));
}

TEST_CASE("the tail beyond t^32 vanishes modulo 2^6 in the disk") {
    // Degree-k terms have valuation at least k - 4 ord_2(k) when v(2) = 4.
    for (int k = 33; k <= 46; ++k) CHECK(k - 4 * ord2(Rational(k)) >= 24);
    CHECK(32 - 4 * ord2(Rational(32)) < 24);
    CHECK(required_degree(6) == 32);
    CHECK(required_degree(9) == 48);
    for (int bits = 6; bits <= 12; ++bits) {
        const int n = required_degree(bits);
        for (int k = n + 1; k <= n + 64; ++k) CHECK(k - 4 * ord2(Rational(k)) >= 4 * bits);
    }
}

TEST_CASE("kernel generators") {
    const KernelData K = kernel_generators();
    REQUIRE(K.d.size() == 3);
    CHECK(in_kernel_of_reduction(K.e[0]));
    CHECK(in_kernel_of_reduction(K.e[1]));
    const KJacobian J = jacobian_over_gaussian();
    CHECK_FALSE(in_kernel_of_reduction(kernel_datum(J, "D1", K.d[0])));
    CHECK_FALSE(in_kernel_of_reduction(kernel_datum(J, "D3", K.d[2])));
    CHECK(K.e[1].cls == J.sub(J.mul(K.d[2], 19), J.mul(K.d[1], 9)));
    for (const auto& E : K.e) {
        CHECK(E.at_base.u.coeff(1) == -E.trace);
        CHECK(E.at_base.u.coeff(0) == E.norm);
    }
}

TEST_CASE("Lambda values agree with an exact evaluation in Q(i)") {
    const KernelData K = kernel_generators();
    const Differentials w = expand_differentials(0, 32);
    const TruncSeries l[2] = {integrate(w.omega1), integrate(w.omega2)};
    for (const auto& E : K.e)
        for (const auto& lambda : l) {
            const GaussAdic got = eval_lambda(lambda, E.trace, E.norm, 6);
            const auto [re, im] = reduce_by_hand(lambda_exact(lambda, E.trace, E.norm), 6);
            CHECK(got.re() == re);
            CHECK(got.im() == im);
        }
}

TEST_CASE("Lambda values modulo 2^6 as printed") {
    const Report& r = pipeline();
    CHECK(r.lambda_values[0][0] == GaussAdic(0, 30, 6));
    CHECK(r.lambda_values[0][1] == GaussAdic(0, 42, 6));
    CHECK(r.lambda_values[1][0] == GaussAdic(17, 47, 6));
    CHECK(r.lambda_values[1][1] == GaussAdic(50, 53, 6));
}

TEST_CASE("Lambda is additive on the kernel and rejects bad input") {
    const KernelData K = kernel_generators();
    const KJacobian J = jacobian_over_gaussian();
    const Differentials w = expand_differentials(0, 32);
    const TruncSeries l1 = integrate(w.omega1), l2 = integrate(w.omega2);
    const KernelGenerator twice = kernel_datum(J, "2E1", J.mul(K.e[0].cls, 2));
    REQUIRE(in_kernel_of_reduction(twice));
    for (const auto* l : {&l1, &l2})
        CHECK(eval_lambda(*l, twice.trace, twice.norm, 6) == eval_lambda(*l, K.e[0].trace, K.e[0].norm, 6).scaled(2));
    const KernelGenerator sum = kernel_datum(J, "E1+E2", J.add(K.e[0].cls, K.e[1].cls));
    CHECK(eval_lambda(l1, sum.trace, sum.norm, 6) ==
          eval_lambda(l1, K.e[0].trace, K.e[0].norm, 6) + eval_lambda(l1, K.e[1].trace, K.e[1].norm, 6));
    const QuadElem zero(-1);
    CHECK(eval_lambda(l1, zero, zero, 6).is_zero());
    CHECK_THROWS_AS(eval_lambda(l1, K.e[1].trace, K.e[1].norm, 9), std::domain_error);
    // x = 1 is a unit, so the point is outside the disk of P0.
    CHECK_THROWS_AS(eval_lambda(l1, QuadElem(Rational(2), -1), QuadElem(Rational(1), -1), 6), std::domain_error);
}

TEST_CASE("Howell form spans what its input spans") {
    for (int trial = 0; trial < 60; ++trial) {
        const int prec = static_cast<int>(uniform(1, 3));
        std::vector<Coeffs> vs(static_cast<std::size_t>(uniform(1, 3)));
        for (auto& v : vs)
            for (auto& x : v) x = static_cast<std::uint64_t>(uniform(0, (1 << prec) - 1));
        const auto h = howell_form(vs, prec);
        CHECK(span_brute(h, prec) == span_brute(vs, prec));
        auto shuffled = vs;
        std::reverse(shuffled.begin(), shuffled.end());
        shuffled.push_back(shuffled.front());
        for (auto& x : shuffled.back()) x = (3 * x) & ((1u << prec) - 1);
        CHECK(howell_form(shuffled, prec) == h);
        CHECK(same_span(vs, shuffled, prec));
    }
}

TEST_CASE("annihilators modulo 2^5") {
    const Annihilators& a = pipeline().annihilators;
    CHECK(a.prec == 5);
    REQUIRE(a.basis.size() == 2);
    CHECK(same_span(a.basis, {Coeffs{2, 0, 7, 0}, Coeffs{0, 1, 0, 13}}, 5));
    CHECK(a.basis[0] == Coeffs{2, 0, 7, 0});
    CHECK(a.basis[1] == Coeffs{0, 1, 0, 13});
    // Each combination kills both Lambda(E_j) modulo 2^5.
    for (const auto& c : a.basis)
        for (const auto& row : pipeline().lambda_values) {
            const std::uint64_t s = c[0] * row[0].re() + c[1] * row[0].im() + c[2] * row[1].re() + c[3] * row[1].im();
            CHECK(s % 32 == 0);
        }
}

TEST_CASE("doubling the Lambda values costs one bit of annihilator precision") {
    auto v = pipeline().lambda_values;
    for (auto& row : v)
        for (auto& x : row) x = x.scaled(2);
    const Annihilators a = annihilator_solve(v);
    CHECK(a.prec == 4);
    CHECK(same_span(a.basis, pipeline().annihilators.basis, 4));
}

TEST_CASE("lambda at P0 in (T, U) as printed modulo 2^5") {
    const Differentials w = expand_differentials(0, 32);
    const BiTruncSeries L1 = substitute_gaussian(integrate(w.omega1), 5);
    const BiTruncSeries L2 = substitute_gaussian(integrate(w.omega2), 5);
    CHECK_MESSAGE(mismatches(L1, false, kLambda1Re).empty(), joined(mismatches(L1, false, kLambda1Re)));
    CHECK_MESSAGE(mismatches(L1, true, kLambda1Im).empty(), joined(mismatches(L1, true, kLambda1Im)));
    CHECK_MESSAGE(mismatches(L2, false, kLambda2Re).empty(), joined(mismatches(L2, false, kLambda2Re)));
    CHECK_MESSAGE(mismatches(L2, true, kLambda2Im).empty(), joined(mismatches(L2, true, kLambda2Im)));
}

TEST_CASE("mu at P0 as printed modulo 2^5") {
    const DiskSeries s = disk_series(0, pipeline().annihilators);
    CHECK(s.mu1.is_real());
    CHECK(s.mu2.is_real());
    CHECK_MESSAGE(mismatches(s.mu1, false, kMu1).empty(), joined(mismatches(s.mu1, false, kMu1)));
    CHECK_MESSAGE(mismatches(s.mu2, false, kMu2).empty(), joined(mismatches(s.mu2, false, kMu2)));
    CHECK(s.mu1.eval(0, 0).is_zero());
    CHECK(s.mu2.eval(0, 0).is_zero());
}

TEST_CASE("disk P0 solutions and classes") {
    const DiskCertificate& d = final_disk(0);
    CHECK(d.prec == 5);
    CHECK(d.class_bits == 3);
    std::set<std::pair<std::uint64_t, std::uint64_t>> want;
    for (std::uint64_t k = 0; k < 4; ++k)
        for (std::uint64_t k2 = 0; k2 < 2; ++k2) {
            const std::uint64_t t = (8 * k + 6 * k2) % 32;
            want.insert({t, (32 - t) % 32});
        }
    CHECK(std::set<std::pair<std::uint64_t, std::uint64_t>>(d.solutions.begin(), d.solutions.end()) == want);
    REQUIRE(d.classes.size() == 2);
    CHECK(d.classes[0].t == 0);
    CHECK(d.classes[0].u == 0);
    CHECK(d.classes[1].t == 6);
    CHECK(d.classes[1].u == 2);
    const std::array<std::uint64_t, 4> j0{6, 2, 7, 7}, j1{2, 6, 7, 7};
    for (int k = 0; k < 4; ++k) {
        CHECK(d.classes[0].jacobian[static_cast<std::size_t>(k)] % 8 == j0[static_cast<std::size_t>(k)]);
        CHECK(d.classes[1].jacobian[static_cast<std::size_t>(k)] % 8 == j1[static_cast<std::size_t>(k)]);
    }
    for (const auto& c : d.classes) {
        CHECK(c.det_valuation == 2);
        CHECK(c.certified);
    }
    CHECK(d.certified);
    CHECK(d.count == 2);
}

TEST_CASE("certificates of the other disks") {
    const DiskCertificate& p4 = final_disk(4);
    CHECK(p4.certified);
    CHECK(p4.count == 1);
    CHECK(p4.solutions.size() == 2);
    const DiskCertificate& p2 = final_disk(2);
    CHECK(p2.certified);
    CHECK(p2.count == 2);
    CHECK(p2.prec == 7);
    CHECK(p2.class_bits == 4);
    CHECK_FALSE(certify_disk(disk_series(2, pipeline().annihilators), 3).certified);
    bool p2_failed_first = false;
    for (const auto& f : pipeline().failed_attempts) {
        CHECK_FALSE(f.certified);
        if (f.disk == 2 && f.prec == 5) p2_failed_first = true;
    }
    CHECK(p2_failed_first);
    for (int k = 0; k < 6; ++k) {
        CHECK(final_disk(k).certified);
        CHECK(final_disk(k).count == final_disk(disk_centers()[static_cast<std::size_t>(k)].partner).count);
    }
    REQUIRE(pipeline().partner_series_match.size() == 3);
    for (bool b : pipeline().partner_series_match) CHECK(b);
}

TEST_CASE("Newton iteration lifts each class of P0") {
    const auto& n = pipeline().newton;
    REQUIRE(n.size() == 2);
    for (const auto& c : n) {
        CHECK(c.converged);
        CHECK(c.prec == 8);
        CHECK(c.agreement_bits >= 6);
    }
    CHECK(n[0].root_t == 0);
    CHECK(n[0].root_u == 0);
    CHECK(n[1].root_t == 30);
    CHECK(n[1].root_u == 226);
}

TEST_CASE("the model and its map to y^2 = f") {
    CHECK(x05_polynomial() == QPoly(std::vector<Rational>{1, 6, 5, 22, 22, 8, 1}, Rational(0)));
    const HypCurve X = good_model();
    CHECK(X.h * X.h + X.g.scaled(4) == x05_polynomial());
    auto affine = [](long x, long y) { return KPoint::affine(QuadElem(Rational(x), -1), QuadElem(Rational(y), -1)); };
    auto same = [](const KPoint& a, const KPoint& b) { return to_string(a) == to_string(b); };
    CHECK(same(to_good_model(affine(0, 1)), affine(0, 1)));
    CHECK(same(to_good_model(affine(0, -1)), affine(0, 0)));
    CHECK(same(to_good_model(affine(-3, 1)), affine(-3, -14)));
    for (const auto& c : disk_centers()) CHECK(same(to_good_model(from_good_model(c.point)), c.point));
    CHECK(disk_index("P3") == 3);
    CHECK_FALSE(disk_index("P9").has_value());
}

TEST_CASE("verdict: X_0(5)(Q(i)) has exactly six points") {
    const Verdict& v = pipeline().verdict;
    CHECK(v.certified);
    std::set<std::string> got;
    for (const auto& P : v.points_on_x05) got.insert(to_string(P));
    CHECK(got.size() == 6);
    auto affine = [](long x, long y) { return to_string(KPoint::affine(QuadElem(Rational(x), -1), QuadElem(Rational(y), -1))); };
    for (const auto& s : {affine(0, 1), affine(0, -1), affine(-3, 1), affine(-3, -1)}) CHECK(got.count(s) == 1);
    const QuadElem z(-1);
    CHECK(got.count(to_string(KPoint::inf_plus(z))) == 1);
    CHECK(got.count(to_string(KPoint::inf_minus(z))) == 1);
    CHECK_FALSE(transcript(pipeline()).empty());
    CHECK_FALSE(run_pipeline({}, 0, 0).verdict.certified);
}

TEST_CASE("the three rational 5-cycles do not grow over Q(i)") {
    const auto cs = five_cycle_parameters();
    REQUIRE(cs.size() == 3);
    for (const auto& c : cs) {
        CHECK(has_rational_five_cycle(c));
        CHECK(no_period_five_point(c, -1));
    }
    CHECK_FALSE(has_rational_five_cycle(Rational(-1)));
}
