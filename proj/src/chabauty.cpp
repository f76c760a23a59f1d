#include "qd/chabauty.hpp"

#include "qd/curves.hpp"
#include "qd/dynatomic.hpp"
#include "qd/factor.hpp"
#include "qd/simd.hpp"
#include "qd/text.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qd::chabauty {

namespace {

constexpr long kD = -1;

QuadElem gq(const Rational& a) { return QuadElem(a, kD); }

std::uint64_t mask_bits(int prec) { return prec >= 64 ? ~0ull : (1ull << prec) - 1; }

int ctz_or(std::uint64_t x, int cap) { return x == 0 ? cap : std::min(cap, std::countr_zero(x)); }

// Inverse of an odd number modulo 2^64.
std::uint64_t odd_inverse(std::uint64_t a) {
    std::uint64_t x = a;  // correct to 3 bits
    for (int i = 0; i < 5; ++i) x *= 2 - a * x;
    return x;
}

std::uint64_t reduce_integer(const Integer& z, int prec) {
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(prec));
    return mpz_get_ui(r.get_mpz_t());
}

// Every term past the cap has ord_2 at least (k r4 - 4 ord_2 k) / 4; r4 is four times
// the ord_2 of the parameter.
bool tail_below(int cap, int r4, int prec) {
    for (int k = cap + 1; k < (1 << 14); ++k)
        if (static_cast<long>(k) * r4 - 4L * std::countr_zero(static_cast<unsigned>(k)) < 4L * prec) return true;
    return false;
}

TruncSeries shift_poly(const QPoly& p, const Rational& x0, int cap) {
    QPoly s(std::vector<Rational>{x0, Rational(1)}, Rational(0));
    return TruncSeries::from_poly(p.compose(s), cap);
}

// The root y of y^2 + a y - b with y(0) = y0, by Newton's method.
TruncSeries solve_quadratic(const TruncSeries& a, const TruncSeries& b, const Rational& y0) {
    const int cap = a.cap();
    if (y0 * y0 + a[0] * y0 - b[0] != 0) throw std::invalid_argument("centre is not on the curve");
    if (2 * y0 + a[0] == 0) throw std::invalid_argument("centre is a Weierstrass point");
    TruncSeries y(cap);
    y[0] = y0;
    for (int m = 1; m <= cap;) {
        m = std::min(2 * m, cap + 1);
        const int c = m - 1;
        TruncSeries yc = y.truncated(c), ac = a.truncated(c), bc = b.truncated(c);
        TruncSeries F = yc * yc + ac * yc - bc;
        TruncSeries D = yc.scaled(Rational(2)) + ac;
        TruncSeries step = F * D.inverse();
        for (int k = 0; k <= c; ++k) y[k] -= step[k];
    }
    TruncSeries check = y * y + a * y - b;
    for (int k = 0; k <= cap; ++k)
        if (check[k] != 0) throw std::logic_error("series root did not converge");
    return y;
}

using Mat2 = std::array<std::uint64_t, 4>;

Mat2 jacobian_at(const std::array<BiTruncSeries, 4>& d, std::uint64_t t, std::uint64_t u) {
    return {d[0].eval(t, u).re(), d[1].eval(t, u).re(), d[2].eval(t, u).re(), d[3].eval(t, u).re()};
}

std::array<BiTruncSeries, 4> partials(const DiskSeries& s) {
    return {s.mu1.d_dT(), s.mu1.d_dU(), s.mu2.d_dT(), s.mu2.d_dU()};
}

// All (T, U) in (Z/2^n)^2 with mu1 = mu2 = 0 mod 2^n, in lexicographic order.
std::vector<std::pair<std::uint64_t, std::uint64_t>> grid_zeros(const DiskSeries& s) {
    const int n = s.mu1.prec();
    if (n > 10) throw std::invalid_argument("disk enumeration limited to 2^10 residues per coordinate");
    const std::size_t side = std::size_t{1} << n, count = side * side;
    std::vector<std::uint32_t> T(count), U(count), v1(count), v2(count);
    for (std::size_t m = 0; m < count; ++m) {
        T[m] = static_cast<std::uint32_t>(m / side);
        U[m] = static_cast<std::uint32_t>(m % side);
    }
    const auto a1 = s.mu1.dense_real(), a2 = s.mu2.dense_real();
    const int cap = s.mu1.cap();
    const auto isa = simd::active_isa();
    simd::grid_eval_mod2k(isa, a1.data(), cap, cap, static_cast<unsigned>(n), T.data(), U.data(), count, v1.data());
    simd::grid_eval_mod2k(isa, a2.data(), cap, cap, static_cast<unsigned>(n), T.data(), U.data(), count, v2.data());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::size_t m = 0; m < count; ++m)
        if (v1[m] == 0 && v2[m] == 0) out.emplace_back(T[m], U[m]);
    return out;
}

std::string point_text(const KPoint& P) {
    if (P.kind == KPoint::InfPlus) return "inf+";
    if (P.kind == KPoint::InfMinus) return "inf-";
    return "(" + to_string(P.x) + ", " + to_string(P.y) + ")";
}

}  // namespace

int ord2(const Rational& q) { return static_cast<int>(valuation(q, 2)); }

int gauss_valuation(const QuadElem& z) {
    if (z.d() != kD) throw std::invalid_argument("expected an element of Q(i)");
    if (is_zero(z)) throw std::domain_error("valuation of zero");
    return ord2(z.norm());
}

int GaussAdic::check_prec(int prec) {
    if (prec < 1 || prec > 62) throw std::invalid_argument("GaussAdic precision must be in 1..62");
    return prec;
}

GaussAdic::GaussAdic(std::int64_t re, std::int64_t im, int prec)
    : re_(static_cast<std::uint64_t>(re) & mask_bits(prec)),
      im_(static_cast<std::uint64_t>(im) & mask_bits(prec)),
      prec_(check_prec(prec)) {}

GaussAdic GaussAdic::from_rational(const Rational& q, int prec) {
    check_prec(prec);
    if (q == 0) return GaussAdic(prec);
    if (ord2(q) < 0) throw std::domain_error("not 2-integral: " + qd::to_string(q));
    Integer modulus = Integer(1) << prec, inv;
    mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), modulus.get_mpz_t());
    Integer r = Integer(q.get_num()) * inv;
    return GaussAdic(reduce_integer(r, prec), 0, prec, raw_tag{});
}

GaussAdic GaussAdic::from_quad(const QuadElem& z, int prec) {
    if (z.d() != kD) throw std::invalid_argument("expected an element of Q(i)");
    GaussAdic a = from_rational(z.a(), prec), b = from_rational(z.b(), prec);
    return GaussAdic(a.re_, b.re_, prec, raw_tag{});
}

int GaussAdic::valuation() const {
    if (is_zero()) return 2 * prec_;
    const int m = std::min(ctz_or(re_, prec_), ctz_or(im_, prec_));
    const bool a = (re_ >> m) & 1, b = (im_ >> m) & 1;
    return 2 * m + (a && b ? 1 : 0);
}

GaussAdic GaussAdic::reduced(int prec) const {
    if (prec > prec_) throw std::invalid_argument("cannot raise precision");
    return GaussAdic(re_ & mask_bits(prec), im_ & mask_bits(prec), check_prec(prec), raw_tag{});
}

GaussAdic GaussAdic::shifted_down(int e) const {
    if (e == 0) return *this;
    if (e < 0 || e >= prec_) throw std::invalid_argument("bad shift");
    if ((re_ | im_) & mask_bits(e)) throw std::runtime_error("residue not divisible by 2^" + std::to_string(e));
    return GaussAdic(re_ >> e, im_ >> e, prec_ - e, raw_tag{});
}

GaussAdic GaussAdic::inverse() const {
    const std::uint64_t n = re_ * re_ + im_ * im_;
    if (!(n & 1)) throw std::domain_error("not a unit");
    const std::uint64_t ni = odd_inverse(n);
    return GaussAdic((re_ * ni) & mask(), (0 - im_ * ni) & mask(), prec_, raw_tag{});
}

void GaussAdic::check(const GaussAdic& o) const {
    if (prec_ != o.prec_) throw std::invalid_argument("GaussAdic precision mismatch");
}

GaussAdic GaussAdic::operator+(const GaussAdic& o) const {
    check(o);
    return GaussAdic((re_ + o.re_) & mask(), (im_ + o.im_) & mask(), prec_, raw_tag{});
}

GaussAdic GaussAdic::operator-(const GaussAdic& o) const {
    check(o);
    return GaussAdic((re_ - o.re_) & mask(), (im_ - o.im_) & mask(), prec_, raw_tag{});
}

GaussAdic GaussAdic::operator*(const GaussAdic& o) const {
    check(o);
    return GaussAdic((re_ * o.re_ - im_ * o.im_) & mask(), (re_ * o.im_ + im_ * o.re_) & mask(), prec_, raw_tag{});
}

std::string GaussAdic::to_string() const {
    if (is_zero()) return "0";
    std::string im = im_ == 1 ? "i" : std::to_string(im_) + "i";
    if (im_ == 0) return std::to_string(re_);
    if (re_ == 0) return im;
    return std::to_string(re_) + " + " + im;
}

TruncSeries TruncSeries::from_poly(const QPoly& p, int cap) {
    TruncSeries s(cap);
    for (int k = 0; k <= std::min(cap, p.degree()); ++k) s[k] = p[static_cast<std::size_t>(k)];
    return s;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    TruncSeries r(std::min(cap(), o.cap()));
    for (int k = 0; k <= r.cap(); ++k) r[k] = (*this)[k] + o[k];
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + o.scaled(Rational(-1)); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    TruncSeries r(std::min(cap(), o.cap()));
    for (int i = 0; i <= r.cap(); ++i) {
        if ((*this)[i] == 0) continue;
        for (int j = 0; i + j <= r.cap(); ++j) r[i + j] += (*this)[i] * o[j];
    }
    return r;
}

TruncSeries TruncSeries::scaled(const Rational& a) const {
    TruncSeries r(cap());
    for (int k = 0; k <= cap(); ++k) r[k] = (*this)[k] * a;
    return r;
}

TruncSeries TruncSeries::truncated(int new_cap) const {
    TruncSeries r(new_cap);
    for (int k = 0; k <= std::min(new_cap, cap()); ++k) r[k] = (*this)[k];
    return r;
}

TruncSeries TruncSeries::inverse() const {
    if (c[0] == 0) throw std::domain_error("series inverse needs a nonzero constant term");
    TruncSeries r(cap());
    const Rational a0inv = 1 / c[0];
    r[0] = a0inv;
    for (int k = 1; k <= cap(); ++k) {
        Rational s(0);
        for (int i = 1; i <= k; ++i) s += (*this)[i] * r[k - i];
        r[k] = -s * a0inv;
    }
    return r;
}

TruncSeries integrate(const TruncSeries& w) {
    TruncSeries r(w.cap() + 1);
    for (int k = 0; k <= w.cap(); ++k) {
        r[k + 1] = w[k] / Rational(k + 1);
        r[k + 1].canonicalize();
    }
    return r;
}

BiTruncSeries::BiTruncSeries(int cap, int prec)
    : cap_(cap), prec_(prec), c_(static_cast<std::size_t>(cap + 1) * static_cast<std::size_t>(cap + 1), GaussAdic(prec)) {
    if (cap < 0) throw std::invalid_argument("negative cap");
}

std::size_t BiTruncSeries::index(int i, int j) const {
    if (i < 0 || j < 0 || i + j > cap_) throw std::out_of_range("monomial beyond the degree cap");
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cap_ + 1) + static_cast<std::size_t>(j);
}

void BiTruncSeries::set_coeff(int i, int j, const GaussAdic& a) {
    if (a.prec() != prec_) throw std::invalid_argument("precision mismatch");
    c_[index(i, j)] = a;
}

BiTruncSeries BiTruncSeries::operator+(const BiTruncSeries& o) const {
    if (o.cap_ != cap_ || o.prec_ != prec_) throw std::invalid_argument("series shape mismatch");
    BiTruncSeries r = *this;
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

BiTruncSeries BiTruncSeries::scaled(std::int64_t k) const {
    BiTruncSeries r = *this;
    for (auto& a : r.c_) a = a.scaled(k);
    return r;
}

BiTruncSeries BiTruncSeries::re_part() const {
    BiTruncSeries r = *this;
    for (auto& a : r.c_) a = GaussAdic(static_cast<std::int64_t>(a.re()), 0, prec_);
    return r;
}

BiTruncSeries BiTruncSeries::im_part() const {
    BiTruncSeries r = *this;
    for (auto& a : r.c_) a = GaussAdic(static_cast<std::int64_t>(a.im()), 0, prec_);
    return r;
}

BiTruncSeries BiTruncSeries::d_dT() const {
    BiTruncSeries r(cap_, prec_);
    for (int i = 0; i < cap_; ++i)
        for (int j = 0; i + 1 + j <= cap_; ++j) r.c_[r.index(i, j)] = coeff(i + 1, j).scaled(i + 1);
    return r;
}

BiTruncSeries BiTruncSeries::d_dU() const {
    BiTruncSeries r(cap_, prec_);
    for (int i = 0; i < cap_; ++i)
        for (int j = 0; i + j + 1 <= cap_; ++j) r.c_[r.index(i, j)] = coeff(i, j + 1).scaled(j + 1);
    return r;
}

bool BiTruncSeries::is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](const GaussAdic& a) { return a.im() == 0; });
}

GaussAdic BiTruncSeries::eval(std::uint64_t T, std::uint64_t U) const {
    std::uint64_t re = 0, im = 0;
    for (int i = cap_; i >= 0; --i) {
        std::uint64_t rr = 0, ri = 0;
        for (int j = cap_ - i; j >= 0; --j) {
            rr = rr * U + coeff(i, j).re();
            ri = ri * U + coeff(i, j).im();
        }
        re = re * T + rr;
        im = im * T + ri;
    }
    return GaussAdic(static_cast<std::int64_t>(re & mask_bits(prec_)), static_cast<std::int64_t>(im & mask_bits(prec_)), prec_);
}

std::vector<std::uint32_t> BiTruncSeries::dense_real() const {
    if (prec_ > 32) throw std::invalid_argument("dense form needs prec <= 32");
    std::vector<std::uint32_t> a(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) a[k] = static_cast<std::uint32_t>(c_[k].re());
    return a;
}

BiTruncSeries substitute_gaussian(const TruncSeries& lambda, int prec) {
    const int cap = lambda.cap();
    // T, U in Z_2 give ord_2(t) >= 1/2.
    if (tail_below(cap, 2, prec)) throw std::domain_error("series degree too small for the requested precision");
    BiTruncSeries out(cap, prec);
    const QuadElem one_i(Rational(1), Rational(1), kD);
    QuadElem pw = gq(Rational(1));
    std::vector<std::uint64_t> binom{1};
    for (int k = 1; k <= cap; ++k) {
        pw *= one_i;
        std::vector<std::uint64_t> next(static_cast<std::size_t>(k) + 1, 1);
        for (int j = 1; j < k; ++j) next[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(j - 1)] + binom[static_cast<std::size_t>(j)];
        binom = std::move(next);
        if (lambda[k] == 0) continue;
        const GaussAdic ck = GaussAdic::from_quad(pw.scaled(lambda[k]), prec);
        for (int j = 0; j <= k; ++j) {
            static const std::int64_t re_of_i[4] = {1, 0, -1, 0}, im_of_i[4] = {0, 1, 0, -1};
            GaussAdic ij(re_of_i[j % 4], im_of_i[j % 4], prec);
            GaussAdic term = ck * ij * GaussAdic(static_cast<std::int64_t>(binom[static_cast<std::size_t>(j)] & mask_bits(prec)), 0, prec);
            out.set_coeff(k - j, j, out.coeff(k - j, j) + term);
        }
    }
    return out;
}

const std::array<DiskCenter, 6>& disk_centers() {
    static const std::array<DiskCenter, 6> centers = [] {
        const QuadElem z(kD);
        auto A = [](long x, long y) { return KPoint::affine(QuadElem(Rational(x), kD), QuadElem(Rational(y), kD)); };
        return std::array<DiskCenter, 6>{DiskCenter{"P0", A(0, 0), 1}, DiskCenter{"P1", A(0, 1), 0},
                                         DiskCenter{"P2", A(-3, -15), 3}, DiskCenter{"P3", A(-3, -14), 2},
                                         DiskCenter{"P4", KPoint::inf_plus(z), 5}, DiskCenter{"P5", KPoint::inf_minus(z), 4}};
    }();
    return centers;
}

std::optional<int> disk_index(const std::string& name) {
    for (int k = 0; k < 6; ++k)
        if (disk_centers()[static_cast<std::size_t>(k)].name == name) return k;
    return std::nullopt;
}

HypCurve good_model() { return find_curve("X_A")->model(); }

QPoly x05_polynomial() { return good_model().completed(); }

KPoint to_good_model(const KPoint& P) {
    if (P.at_infinity()) return P;
    const HypCurve X = good_model();
    QuadElem hx = X.h.map([&](const Rational& a) { return QuadElem(a, P.x.d()); }).eval(P.x);
    return KPoint::affine(P.x, (P.y - hx).scaled(Rational(1, 2)));
}

KPoint from_good_model(const KPoint& P) {
    if (P.at_infinity()) return P;
    const HypCurve X = good_model();
    QuadElem hx = X.h.map([&](const Rational& a) { return QuadElem(a, P.x.d()); }).eval(P.x);
    return KPoint::affine(P.x, P.y + P.y + hx);
}

Differentials expand_differentials(int disk, int degree) {
    if (disk < 0 || disk > 5) throw std::out_of_range("disk index");
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    const int cap = degree - 1;
    const HypCurve X = good_model();
    const KPoint& P = disk_centers()[static_cast<std::size_t>(disk)].point;
    if (!P.at_infinity()) {
        const Rational x0 = P.x.a(), y0 = P.y.a();
        TruncSeries a = shift_poly(X.h, x0, cap), b = shift_poly(X.g, x0, cap);
        TruncSeries y = solve_quadratic(a, b, y0);
        TruncSeries w1 = (y.scaled(Rational(2)) + a).inverse();
        TruncSeries xt(cap);
        xt[0] = x0;
        if (cap >= 1) xt[1] = 1;
        return {w1, xt * w1};
    }
    // u = 1/x, v = y u^3: v^2 + H(u) v = G(u); dx = -du/u^2, 2y + h = (2v + H)/u^3.
    TruncSeries H(cap), G(cap);
    for (int k = 0; k <= std::min(cap, 3); ++k) H[k] = X.h[static_cast<std::size_t>(3 - k)];
    for (int k = 0; k <= std::min(cap, 6); ++k) G[k] = X.g[static_cast<std::size_t>(6 - k)];
    const Rational h3 = X.h[3], g6 = X.g[6];
    auto root = rational_sqrt(h3 * h3 + 4 * g6);
    if (!root) throw std::logic_error("points at infinity not rational");
    Rational rho = (P.kind == KPoint::InfPlus ? Rational(*root - h3) : Rational(-*root - h3)) / 2;
    TruncSeries v = solve_quadratic(H, G, rho);
    TruncSeries inv = (v.scaled(Rational(2)) + H).inverse().scaled(Rational(-1));
    TruncSeries ut(cap);
    if (cap >= 1) ut[1] = 1;
    return {ut * inv, inv};
}

KJacobian jacobian_over_gaussian() { return jacobian_over(good_model(), kD); }

KernelGenerator kernel_datum(const KJacobian& J, const std::string& name, const KClass& D) {
    const QuadElem z(kD);
    const KPoint P0 = KPoint::affine(z, z);
    KernelGenerator E{name, D, J.add(D, J.pair(P0, P0)), z, z};
    if (E.at_base.u.degree() != 2 || E.at_base.np != 0 || E.at_base.nm != 0)
        throw std::runtime_error(name + ": class is not a pair of affine points relative to P0");
    E.trace = -E.at_base.u.coeff(1);
    E.norm = E.at_base.u.coeff(0);
    return E;
}

bool in_kernel_of_reduction(const KernelGenerator& E) {
    auto positive = [](const QuadElem& a) { return is_zero(a) || gauss_valuation(a) > 0; };
    const QuadElem& v1 = E.at_base.v.coeff(1);
    const QuadElem& v0 = E.at_base.v.coeff(0);
    // y-coordinates v(x) of the support: their sum and product
    QuadElem ysum = v1 * E.trace + v0 + v0;
    QuadElem yprod = v1 * v1 * E.norm + v1 * v0 * E.trace + v0 * v0;
    return positive(E.trace) && positive(E.norm) && positive(ysum) && positive(yprod);
}

KernelData kernel_generators() {
    KJacobian J = jacobian_over_gaussian();
    const QuadElem z(kD);
    KernelData out;
    KClass D1 = J.pair(KPoint::inf_plus(z), KPoint::inf_plus(z));
    KClass D2 = J.from_mumford(parse_poly("x^2+3*x+1/2", kD), parse_poly("((i+19)*x+5)/4", kD));
    KClass D3 = J.from_mumford(parse_poly("x^2+3*x+(1-i)", kD), parse_poly("4*x+(1-2*i)", kD));
    out.d = {D1, D2, D3};
    out.e[0] = kernel_datum(J, "E1", D2);
    out.e[1] = kernel_datum(J, "E2", J.sub(J.mul(D3, 19), J.mul(D2, 9)));
    for (const auto& E : out.e)
        if (!in_kernel_of_reduction(E)) throw std::runtime_error(E.name + " is not in the kernel of reduction");
    return out;
}

int lambda_denominator_bits(const TruncSeries& lambda) {
    int e = 0;
    for (const auto& c : lambda.c)
        if (c != 0) e = std::max(e, -ord2(c));
    return e;
}

GaussAdic eval_lambda(const TruncSeries& lambda, const GaussAdic& trace, const GaussAdic& norm, int prec) {
    const int e = lambda_denominator_bits(lambda), work = prec + e;
    if (trace.prec() < work || norm.prec() < work)
        throw std::invalid_argument("trace and norm need " + std::to_string(work) + " bits");
    const GaussAdic s = trace.reduced(work), n = norm.reduced(work);
    // Roots of x^2 - s x + n have (1+i)-adic valuation >= min(v(s), v(n)/2).
    const int r4 = std::min(2 * s.valuation(), n.valuation());
    if (r4 == 0) throw std::domain_error("support is outside the residue disk");
    if (tail_below(lambda.cap(), r4, prec)) throw std::domain_error("insufficient precision: truncated terms reach the working precision");
    GaussAdic acc(work), p_prev(2, 0, work), p = s;
    const Integer scale = Integer(1) << e;
    for (int k = 1; k <= lambda.cap(); ++k) {
        if (k > 1) {
            GaussAdic next = s * p - n * p_prev;
            p_prev = p;
            p = next;
        }
        if (lambda[k] == 0) continue;
        acc = acc + GaussAdic::from_rational(lambda[k] * Rational(scale), work) * p;
    }
    try {
        return acc.shifted_down(e);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("integral value is not 2-integral");
    }
}

int required_degree(int bits) {
    int cap = 32;
    while (tail_below(cap, 1, bits)) ++cap;
    return cap;
}

GaussAdic eval_lambda(const TruncSeries& lambda, const QuadElem& trace, const QuadElem& norm, int prec) {
    const int work = prec + lambda_denominator_bits(lambda);
    return eval_lambda(lambda, GaussAdic::from_quad(trace, work), GaussAdic::from_quad(norm, work), prec);
}

std::vector<Coeffs> howell_form(std::vector<Coeffs> rows, int prec) {
    const std::uint64_t mask = mask_bits(prec);
    auto clean = [&](std::vector<Coeffs>& rs) {
        for (auto& r : rs)
            for (auto& x : r) x &= mask;
        rs.erase(std::remove_if(rs.begin(), rs.end(), [](const Coeffs& r) { return r == Coeffs{}; }), rs.end());
    };
    clean(rows);
    std::vector<Coeffs> out;
    std::vector<std::pair<int, int>> piv;  // (column, exponent)
    for (int col = 0; col < 4; ++col) {
        int best = -1, bv = prec;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int v = ctz_or(rows[r][static_cast<std::size_t>(col)], prec);
            if (v < bv) {
                bv = v;
                best = static_cast<int>(r);
            }
        }
        if (best < 0) continue;
        Coeffs p = rows[static_cast<std::size_t>(best)];
        rows.erase(rows.begin() + best);
        const std::uint64_t uinv = odd_inverse(p[static_cast<std::size_t>(col)] >> bv);
        for (auto& x : p) x = (x * uinv) & mask;
        for (auto& r : rows) {
            const std::uint64_t f = r[static_cast<std::size_t>(col)] >> bv;
            for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(j)] -= f * p[static_cast<std::size_t>(j)];
        }
        Coeffs sat = p;
        for (auto& x : sat) x <<= (prec - bv);
        rows.push_back(sat);
        clean(rows);
        out.push_back(p);
        piv.emplace_back(col, bv);
    }
    for (int i = static_cast<int>(out.size()) - 2; i >= 0; --i)
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < out.size(); ++j) {
            const auto [pc, pv] = piv[j];
            const std::uint64_t f = out[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)] >> pv;
            for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = (out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] - f * out[j][static_cast<std::size_t>(k)]) & mask;
        }
    return out;
}

namespace {

bool in_span(const std::vector<Coeffs>& howell, Coeffs x, int prec) {
    const std::uint64_t mask = mask_bits(prec);
    for (auto& v : x) v &= mask;
    for (const auto& row : howell) {
        int col = 0;
        while (row[static_cast<std::size_t>(col)] == 0) ++col;
        const int v = std::countr_zero(row[static_cast<std::size_t>(col)]);
        const std::uint64_t xc = x[static_cast<std::size_t>(col)];
        if (xc & mask_bits(v)) return false;
        const std::uint64_t f = xc >> v;
        for (int k = 0; k < 4; ++k) x[static_cast<std::size_t>(k)] = (x[static_cast<std::size_t>(k)] - f * row[static_cast<std::size_t>(k)]) & mask;
    }
    return x == Coeffs{};
}

}  // namespace

bool same_span(const std::vector<Coeffs>& a, const std::vector<Coeffs>& b, int prec) {
    return howell_form(a, prec) == howell_form(b, prec);
}

Annihilators annihilator_solve(const std::array<std::array<GaussAdic, 2>, 2>& values) {
    const int m = values[0][0].prec();
    for (const auto& row : values)
        for (const auto& v : row)
            if (v.prec() != m) throw std::invalid_argument("values at mixed precision");
    const std::uint64_t mask = mask_bits(m);
    std::array<std::array<std::uint64_t, 4>, 2> a{};
    for (int j = 0; j < 2; ++j)
        a[static_cast<std::size_t>(j)] = {values[static_cast<std::size_t>(j)][0].re(), values[static_cast<std::size_t>(j)][0].im(),
                                          values[static_cast<std::size_t>(j)][1].re(), values[static_cast<std::size_t>(j)][1].im()};
    std::array<std::array<std::uint64_t, 4>, 4> Q{};  // coefficient vector c = Q y
    for (int i = 0; i < 4; ++i) Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    auto colop = [&](int dst, int src, std::uint64_t f) {
        for (auto& row : a) row[static_cast<std::size_t>(dst)] = (row[static_cast<std::size_t>(dst)] - f * row[static_cast<std::size_t>(src)]) & mask;
        for (auto& row : Q) row[static_cast<std::size_t>(dst)] = (row[static_cast<std::size_t>(dst)] - f * row[static_cast<std::size_t>(src)]) & mask;
    };
    int amax = 0;
    for (int r = 0; r < 2; ++r) {
        int bi = -1, bj = -1, bv = m;
        for (int i = r; i < 2; ++i)
            for (int j = r; j < 4; ++j) {
                int v = ctz_or(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], m);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) throw std::runtime_error("annihilator space has rank above 2 at this precision");
        std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(bi)]);
        for (auto* M : {&a[0], &a[1]}) std::swap((*M)[static_cast<std::size_t>(r)], (*M)[static_cast<std::size_t>(bj)]);
        for (auto& row : Q) std::swap(row[static_cast<std::size_t>(r)], row[static_cast<std::size_t>(bj)]);
        const std::uint64_t uinv = odd_inverse(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] >> bv);
        for (auto& row : a) row[static_cast<std::size_t>(r)] = (row[static_cast<std::size_t>(r)] * uinv) & mask;
        for (auto& row : Q) row[static_cast<std::size_t>(r)] = (row[static_cast<std::size_t>(r)] * uinv) & mask;
        for (int j = 0; j < 4; ++j)
            if (j != r) colop(j, r, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] >> bv);
        for (int i = r + 1; i < 2; ++i) {
            const std::uint64_t f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] >> bv;
            for (int j = 0; j < 4; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) & mask;
        }
        amax = std::max(amax, bv);
    }
    Annihilators out;
    out.prec = m - amax;
    if (out.prec < 1) throw std::runtime_error("annihilators undetermined at this precision");
    std::vector<Coeffs> kernel;
    for (int j = 2; j < 4; ++j)
        kernel.push_back({Q[0][static_cast<std::size_t>(j)], Q[1][static_cast<std::size_t>(j)], Q[2][static_cast<std::size_t>(j)], Q[3][static_cast<std::size_t>(j)]});
    // Howell rows, minus those already spanned by the others.
    std::vector<Coeffs> rows = howell_form(kernel, out.prec);
    for (std::size_t i = rows.size(); i-- > 0;) {
        std::vector<Coeffs> rest = rows;
        rest.erase(rest.begin() + static_cast<long>(i));
        if (in_span(howell_form(rest, out.prec), rows[i], out.prec)) rows = rest;
    }
    if (rows.size() != 2) throw std::runtime_error("annihilator space does not have rank 2");
    out.basis = rows;
    return out;
}

DiskSeries disk_series(int disk, const Annihilators& ann, int degree) {
    if (ann.basis.size() != 2) throw std::invalid_argument("need two annihilators");
    Differentials w = expand_differentials(disk, degree);
    for (const auto* s : {&w.omega1, &w.omega2})
        for (const auto& c : s->c)
            if (c != 0 && ord2(c) < 0) throw std::logic_error("differential is not 2-integral on the disk");
    BiTruncSeries L1 = substitute_gaussian(integrate(w.omega1), ann.prec);
    BiTruncSeries L2 = substitute_gaussian(integrate(w.omega2), ann.prec);
    const std::array<BiTruncSeries, 4> parts{L1.re_part(), L1.im_part(), L2.re_part(), L2.im_part()};
    auto combine = [&](const Coeffs& c) {
        BiTruncSeries r(degree, ann.prec);
        for (int k = 0; k < 4; ++k) r = r + parts[static_cast<std::size_t>(k)].scaled(static_cast<std::int64_t>(c[static_cast<std::size_t>(k)]));
        return r;
    };
    return {disk, combine(ann.basis[0]), combine(ann.basis[1])};
}

DiskCertificate certify_disk(const DiskSeries& s, int class_bits) {
    const int n = s.mu1.prec();
    if (class_bits < 1 || class_bits > n) throw std::invalid_argument("class bits must lie in 1..prec");
    DiskCertificate cert{s.disk, n, class_bits, grid_zeros(s), {}, true, 0};
    const auto d = partials(s);
    const std::uint64_t cmask = mask_bits(class_bits), mask = mask_bits(n);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<std::uint64_t, std::uint64_t>> reps;
    for (const auto& [t, u] : cert.solutions) reps.try_emplace({t & cmask, u & cmask}, t, u);
    for (const auto& [cls, rep] : reps) {
        ClassCertificate c{};
        c.t = cls.first;
        c.u = cls.second;
        c.rep_t = rep.first;
        c.rep_u = rep.second;
        c.jacobian = jacobian_at(d, rep.first, rep.second);
        const std::uint64_t det = (c.jacobian[0] * c.jacobian[3] - c.jacobian[1] * c.jacobian[2]) & mask;
        c.det_valuation = ctz_or(det, n);
        c.value_valuation = n;
        c.margin = c.value_valuation - (2 * c.det_valuation + 1);
        // Hensel: a unique root b with ord(b - rep) > ord det, and ord(b - rep) >= n - ord det.
        c.certified = c.margin >= 0 && c.det_valuation + 1 <= class_bits && class_bits <= n - c.det_valuation;
        cert.certified = cert.certified && c.certified;
        cert.classes.push_back(c);
    }
    cert.count = static_cast<int>(cert.classes.size());
    return cert;
}

NewtonCheck newton_check(const DiskSeries& s, std::uint64_t t0, std::uint64_t u0, int class_bits) {
    const int n = s.mu1.prec();
    const std::uint64_t mask = mask_bits(n), cmask = mask_bits(class_bits);
    const auto d = partials(s);
    NewtonCheck out{n, t0, u0, t0 & mask, u0 & mask, 0, false, 0, 0};
    // Each step divides by det J, so the iterate is only determined modulo 2^(n - ord det);
    // once it is stable there, the remaining low-order lifts are searched directly.
    int dv = 0;
    for (; out.steps <= 4 * n; ++out.steps) {
        const std::uint64_t F1 = s.mu1.eval(out.root_t, out.root_u).re(), F2 = s.mu2.eval(out.root_t, out.root_u).re();
        const Mat2 J = jacobian_at(d, out.root_t, out.root_u);
        const std::uint64_t det = (J[0] * J[3] - J[1] * J[2]) & mask;
        if (det == 0) return out;
        dv = std::countr_zero(det);
        const std::uint64_t w1 = (J[3] * F1 - J[1] * F2) & mask, w2 = (J[0] * F2 - J[2] * F1) & mask;
        if ((w1 | w2) & mask_bits(dv)) return out;
        const std::uint64_t inv = odd_inverse(det >> dv), keep = mask_bits(n - dv);
        const std::uint64_t nt = (out.root_t - (w1 >> dv) * inv) & keep, nu = (out.root_u - (w2 >> dv) * inv) & keep;
        const bool stable = nt == (out.root_t & keep) && nu == (out.root_u & keep);
        out.root_t = nt;
        out.root_u = nu;
        if (stable) break;
    }
    const std::uint64_t side = 1ull << dv;
    for (std::uint64_t a = 0; a < side && !out.converged; ++a)
        for (std::uint64_t b = 0; b < side; ++b) {
            const std::uint64_t t = out.root_t + (a << (n - dv)), u = out.root_u + (b << (n - dv));
            if (s.mu1.eval(t, u).is_zero() && s.mu2.eval(t, u).is_zero()) {
                out.root_t = t;
                out.root_u = u;
                out.converged = true;
                break;
            }
        }
    out.agreement_bits = n;
    for (const auto& [t, u] : grid_zeros(s)) {
        if ((t & cmask) != (t0 & cmask) || (u & cmask) != (u0 & cmask)) continue;
        ++out.class_solutions;
        out.agreement_bits = std::min({out.agreement_bits, ctz_or((t - out.root_t) & mask, n), ctz_or((u - out.root_u) & mask, n)});
    }
    return out;
}

Report run_pipeline(const Precision& prec, std::optional<int> only_disk, int newton_bits) {
    Report r;
    r.precision = prec;
    r.kernel = kernel_generators();
    auto values_at = [&](int bits, int degree) {
        const Differentials w = expand_differentials(0, degree);
        const TruncSeries l1 = integrate(w.omega1), l2 = integrate(w.omega2);
        std::array<std::array<GaussAdic, 2>, 2> v{};
        for (std::size_t j = 0; j < 2; ++j) {
            v[j][0] = eval_lambda(l1, r.kernel.e[j].trace, r.kernel.e[j].norm, bits);
            v[j][1] = eval_lambda(l2, r.kernel.e[j].trace, r.kernel.e[j].norm, bits);
        }
        return v;
    };
    r.lambda_values = values_at(prec.lambda_bits, prec.degree);
    r.annihilators = annihilator_solve(r.lambda_values);
    const int loss = prec.lambda_bits - r.annihilators.prec;
    // Annihilators truncated to each escalation precision.
    std::map<int, Annihilators> ladder{{r.annihilators.prec, r.annihilators}};
    auto annihilators_at = [&](int bits) {
        auto it = ladder.find(bits);
        if (it != ladder.end()) return it->second;
        Annihilators a = annihilator_solve(values_at(bits + loss, std::max(prec.degree, required_degree(bits + loss))));
        if (a.prec < bits) throw std::runtime_error("annihilators lost precision");
        a.prec = bits;
        return ladder.emplace(bits, a).first->second;
    };
    for (int bits = r.annihilators.prec + 1; bits <= prec.max_bits; ++bits) annihilators_at(bits);

    std::vector<int> which;
    for (int k = 0; k < 6; ++k)
        if (!only_disk || *only_disk == k) which.push_back(k);
    struct DiskRun {
        DiskSeries series;
        std::vector<DiskCertificate> attempts;
    };
    std::vector<std::future<DiskRun>> jobs;
    for (int k : which)
        jobs.push_back(std::async(std::launch::async, [&, k] {
            DiskRun run{disk_series(k, r.annihilators, prec.degree), {}};
            run.attempts.push_back(certify_disk(run.series, prec.class_bits));
            for (int c = prec.class_bits + 1; c < r.annihilators.prec && !run.attempts.back().certified; ++c)
                run.attempts.push_back(certify_disk(run.series, c));
            for (int bits = r.annihilators.prec + 1; !run.attempts.back().certified && bits <= prec.max_bits; ++bits) {
                const DiskSeries s = disk_series(k, ladder.at(bits), prec.degree);
                for (int c = prec.class_bits; c < bits && !run.attempts.back().certified; ++c)
                    run.attempts.push_back(certify_disk(s, c));
            }
            return run;
        }));
    std::map<int, DiskSeries> series;
    for (auto& j : jobs) {
        DiskRun run = j.get();
        r.disks.push_back(run.attempts.back());
        run.attempts.pop_back();
        for (auto& a : run.attempts) r.failed_attempts.push_back(std::move(a));
        series.emplace(run.series.disk, std::move(run.series));
    }
    for (int k = 0; k < 6; k += 2) {
        auto a = series.find(k), b = series.find(k + 1);
        if (a == series.end() || b == series.end()) continue;
        const auto& A = a->second;
        const auto& B = b->second;
        bool same = true;
        for (int i = 0; i <= A.mu1.cap() && same; ++i)
            for (int j = 0; i + j <= A.mu1.cap(); ++j)
                if (!(A.mu1.coeff(i, j) == -B.mu1.coeff(i, j)) || !(A.mu2.coeff(i, j) == -B.mu2.coeff(i, j))) {
                    same = false;
                    break;
                }
        r.partner_series_match.push_back(same);
    }

    if (newton_bits > 0 && series.count(0)) {
        const Annihilators hi = annihilators_at(newton_bits);
        const DiskSeries s = disk_series(0, hi, prec.degree);
        for (const auto& c : r.disks.front().classes) r.newton.push_back(newton_check(s, c.rep_t, c.rep_u, prec.class_bits));
    }

    Verdict& v = r.verdict;
    const bool all = !only_disk && r.disks.size() == 6;
    bool ok = all && std::all_of(r.disks.begin(), r.disks.end(), [](const DiskCertificate& c) { return c.certified; });
    const auto n2 = count_points_ff(good_model(), 2, 1);
    v.inferences.push_back("X(F_2) has " + std::to_string(n2) + " points, one under each of the six rational points");
    ok = ok && n2 == 6;
    for (const auto& c : r.disks) {
        const auto& name = disk_centers()[static_cast<std::size_t>(c.disk)].name;
        std::string line = "disk " + name + ": " + std::to_string(c.count) + " root(s) in Z_2^2 (mod 2^" + std::to_string(c.prec) +
                           ", classes mod 2^" + std::to_string(c.class_bits) + ")";
        if (!c.certified) line += ", not certified";
        else if (c.count == 1) line += ", so the centre is the only K-point";
        else if (c.count == 2)
            line += "; a point of X(K) \\ X(Q) there would bring its distinct conjugate into the same disk, "
                    "giving three roots, so the centre is the only K-point";
        else line += ", too many roots to conclude";
        v.inferences.push_back(line);
        ok = ok && c.count <= 2;
    }
    if (all) {
        v.inferences.push_back("disks P1, P3, P5 are the involution images of P0, P2, P4; their series are the negated partner series");
        ok = ok && std::all_of(r.partner_series_match.begin(), r.partner_series_match.end(), [](bool b) { return b; });
    }
    v.certified = ok;
    if (ok)
        for (const auto& c : disk_centers()) v.points_on_x05.push_back(from_good_model(c.point));
    return r;
}

Verdict full_theorem() { return run_pipeline().verdict; }

std::vector<Rational> five_cycle_parameters() { return {Rational(-64, 9), Rational(-2), Rational(-16, 9)}; }

bool has_rational_five_cycle(const Rational& c) {
    const QPoly phi = dynatomic(5, c);
    const QPoly fc(std::vector<Rational>{c, Rational(0), Rational(1)}, Rational(0));
    for (const QPoly& F : small_degree_factors(phi, 5))
        if (F.degree() == 5 && (F.compose(fc) % F).is_zero()) return true;
    return false;
}

bool no_period_five_point(const Rational& c, long d) {
    const QuadElem ck(c, d);
    const Poly<QuadElem> phi = dynatomic(5, ck);
    for (const QuadElem& a : roots_in_quadfield(phi))
        if (!(a * a + ck == a)) return false;
    return true;
}

std::vector<std::string> transcript(const Report& r) {
    std::vector<std::string> out;
    auto line = [&](std::string s) { out.push_back(std::move(s)); };
    const auto& P = r.precision;
    line("X : y^2 + h(x) y = g(x), h = " + to_string(good_model().h) + ", g = " + to_string(good_model().g));
    line("reduction prime (1 + i) of K = Q(i); residue field F_2");
    const Differentials w = expand_differentials(0, P.degree);
    line("w1 = dx/(2y + h) at P0 = (0,0), t = x: " + to_string(QPoly(std::vector<Rational>(w.omega1.c.begin(), w.omega1.c.begin() + 5), Rational(0)), "t") + " + ...");
    line("integrals kept through t^" + std::to_string(P.degree));
    for (std::size_t k = 0; k < r.kernel.d.size(); ++k)
        line("D" + std::to_string(k + 1) + " = " + to_string(r.kernel.d[k]));
    for (const auto& E : r.kernel.e) {
        line(E.name + " + {P0, P0} has u = " + to_string(E.at_base.u));
        line("  trace " + to_string(E.trace) + ", norm " + to_string(E.norm) + ", in kernel of reduction");
    }
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l)
            line("Lambda" + std::to_string(l + 1) + "(E" + std::to_string(j + 1) + ") = " + r.lambda_values[j][l].to_string() +
                 " mod 2^" + std::to_string(P.lambda_bits));
    for (const auto& c : r.annihilators.basis)
        line("annihilator " + std::to_string(c[0]) + " Re L1 + " + std::to_string(c[1]) + " Im L1 + " + std::to_string(c[2]) +
             " Re L2 + " + std::to_string(c[3]) + " Im L2 mod 2^" + std::to_string(r.annihilators.prec));
    for (const auto& d : r.failed_attempts) {
        std::ostringstream s;
        s << "disk " << disk_centers()[static_cast<std::size_t>(d.disk)].name << " not certified mod 2^" << d.prec
          << " with classes mod 2^" << d.class_bits << ":";
        for (const auto& c : d.classes)
            if (!c.certified) s << " (" << c.t << "," << c.u << ") det ord " << c.det_valuation;
        line(s.str());
    }
    for (const auto& d : r.disks) {
        std::ostringstream s;
        s << "disk " << disk_centers()[static_cast<std::size_t>(d.disk)].name << ": " << d.solutions.size()
          << " solutions mod 2^" << d.prec << ", classes mod 2^" << d.class_bits << ":";
        for (const auto& c : d.classes)
            s << " (" << c.t << "," << c.u << ") det ord " << c.det_valuation << (c.certified ? " ok" : " FAIL");
        line(s.str());
    }
    for (const auto& nc : r.newton) {
        std::ostringstream s;
        s << "Newton mod 2^" << nc.prec << " from (" << nc.start_t << "," << nc.start_u << ") -> (" << nc.root_t << ","
          << nc.root_u << ") in " << nc.steps << " steps" << (nc.converged ? "" : " (no convergence)") << "; class solutions agree mod 2^" << nc.agreement_bits;
        line(s.str());
    }
    for (const auto& i : r.verdict.inferences) line(i);
    if (r.verdict.certified) {
        std::string pts;
        for (const auto& p : r.verdict.points_on_x05) pts += (pts.empty() ? "" : ", ") + point_text(p);
        line("X_0(5)(Q(i)) = {" + pts + "}");
    } else {
        line("verdict not certified");
    }
    return out;
}

}  // namespace qd::chabauty
