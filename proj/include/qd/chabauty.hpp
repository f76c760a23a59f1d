#pragma once

// 2-adic Chabauty certificate for the genus-2 model X : y^2 + h y = g of X_0(5)
// over K = Q(i), p = (1 + i).
//
// The Mordell-Weil group J(K) has rank 2 (generated up to finite index by the
// kernel of reduction), so two independent combinations of the abelian
// integrals of w1 = dx/(2y + h) and w2 = x w1 vanish on it.  Each residue disk
// of X(F_2) is then searched for zeros of those combinations.

#include "qd/genus2.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qd::chabauty {

// ord_2 of a nonzero rational.
int ord2(const Rational& q);
// (1+i)-adic valuation of a nonzero element of Q(i); v(2) = 2.
int gauss_valuation(const QuadElem& z);

// An element of Z_2[i] known modulo 2^prec (prec <= 62).
class GaussAdic {
public:
    GaussAdic() : prec_(6) {}
    explicit GaussAdic(int prec) : prec_(check_prec(prec)) {}
    GaussAdic(std::int64_t re, std::int64_t im, int prec);
    // Throws std::domain_error when the argument is not 2-integral.
    static GaussAdic from_rational(const Rational& q, int prec);
    static GaussAdic from_quad(const QuadElem& z, int prec);

    std::uint64_t re() const { return re_; }
    std::uint64_t im() const { return im_; }
    int prec() const { return prec_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    // (1+i)-adic valuation, 2 * prec when the residue vanishes.
    int valuation() const;
    GaussAdic reduced(int prec) const;
    GaussAdic conj() const { return GaussAdic(re_, mask() & (0 - im_), prec_, raw_tag{}); }
    // Exact division by 2^e of a residue divisible by 2^e; the result has precision prec - e.
    GaussAdic shifted_down(int e) const;
    // Inverse of a unit (valuation 0).
    GaussAdic inverse() const;

    GaussAdic operator+(const GaussAdic& o) const;
    GaussAdic operator-(const GaussAdic& o) const;
    GaussAdic operator*(const GaussAdic& o) const;
    GaussAdic operator-() const { return GaussAdic(0, 0, prec_) - *this; }
    GaussAdic scaled(std::int64_t k) const { return *this * GaussAdic(k, 0, prec_); }
    bool operator==(const GaussAdic& o) const { return prec_ == o.prec_ && re_ == o.re_ && im_ == o.im_; }

    // "17 + 47i", "30i", "0"
    std::string to_string() const;

private:
    struct raw_tag {};
    GaussAdic(std::uint64_t re, std::uint64_t im, int prec, raw_tag) : re_(re), im_(im), prec_(prec) {}
    static int check_prec(int prec);
    std::uint64_t mask() const { return prec_ == 64 ? ~0ull : (1ull << prec_) - 1; }
    void check(const GaussAdic& o) const;

    std::uint64_t re_ = 0, im_ = 0;
    int prec_;
};

// Power series in one variable with rational coefficients, kept through t^cap.
struct TruncSeries {
    std::vector<Rational> c;

    explicit TruncSeries(int cap) : c(static_cast<std::size_t>(cap) + 1, Rational(0)) {}
    static TruncSeries from_poly(const QPoly& p, int cap);
    int cap() const { return static_cast<int>(c.size()) - 1; }
    const Rational& operator[](int k) const { return c[static_cast<std::size_t>(k)]; }
    Rational& operator[](int k) { return c[static_cast<std::size_t>(k)]; }

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries scaled(const Rational& a) const;
    TruncSeries truncated(int cap) const;
    // Requires a nonzero constant term.
    TruncSeries inverse() const;
    bool operator==(const TruncSeries& o) const { return c == o.c; }
};

// Antiderivative with zero constant term; the cap grows by one.
TruncSeries integrate(const TruncSeries& w);

// Series in T, U over Z_2[i] mod 2^prec, total degree <= cap.
class BiTruncSeries {
public:
    BiTruncSeries(int cap, int prec);
    int cap() const { return cap_; }
    int prec() const { return prec_; }
    const GaussAdic& coeff(int i, int j) const { return c_[index(i, j)]; }
    void set_coeff(int i, int j, const GaussAdic& a);

    BiTruncSeries operator+(const BiTruncSeries& o) const;
    BiTruncSeries scaled(std::int64_t k) const;
    BiTruncSeries re_part() const;
    BiTruncSeries im_part() const;
    BiTruncSeries d_dT() const;
    BiTruncSeries d_dU() const;
    bool is_real() const;

    GaussAdic eval(std::uint64_t T, std::uint64_t U) const;
    // Real parts as a row-major (cap+1) x (cap+1) array for the grid kernel.
    std::vector<std::uint32_t> dense_real() const;

private:
    std::size_t index(int i, int j) const;
    int cap_, prec_;
    std::vector<GaussAdic> c_;
};

// t = (1 + i)(T + U i) substituted into lambda, coefficients reduced mod 2^prec.
BiTruncSeries substitute_gaussian(const TruncSeries& lambda, int prec);

// The six rational points of X: P0 (0,0), P1 (0,1), P2 (-3,-15), P3 (-3,-14), P4 inf+, P5 inf-.
struct DiskCenter {
    std::string name;
    KPoint point;
    int partner;  // index of the image under the hyperelliptic involution
};
const std::array<DiskCenter, 6>& disk_centers();
std::optional<int> disk_index(const std::string& name);

// The model X and the map from y^2 = f to it.
HypCurve good_model();
QPoly x05_polynomial();  // f with X_0(5) : y^2 = f
KPoint to_good_model(const KPoint& P);
KPoint from_good_model(const KPoint& P);

struct Differentials {
    TruncSeries omega1, omega2;  // coefficients of dt, through t^(degree - 1)
};

// Expansions of w1, w2 in the local parameter of a disk: t = x - x(P) on the
// affine patch, t = 1/x at infinity.
Differentials expand_differentials(int disk = 0, int degree = 32);

struct KernelGenerator {
    std::string name;
    KClass cls{KPoly(QuadElem(-1)), KPoly(QuadElem(-1))};      // class on J(K)
    KClass at_base{KPoly(QuadElem(-1)), KPoly(QuadElem(-1))};  // cls + {P0, P0} = {P, Q}; u is the x-polynomial of P, Q
    QuadElem trace{-1}, norm{-1};  // x(P) + x(Q), x(P) x(Q)
};

struct KernelData {
    std::vector<KClass> d;  // D1, D2, D3
    std::array<KernelGenerator, 2> e;  // E1 = D2, E2 = 19 D3 - 9 D2
};

KJacobian jacobian_over_gaussian();
// {P, Q} + {P0, P0} reduced; trace and norm of its affine x-coordinates.
KernelGenerator kernel_datum(const KJacobian& J, const std::string& name, const KClass& D);
// Support of cls - 2 P0 reduces to P0 modulo (1 + i).
bool in_kernel_of_reduction(const KernelGenerator& E);
KernelData kernel_generators();

// sum_k lambda_k p_k with p_k the k-th power sum of the roots of x^2 - trace x + norm.
// trace and norm must carry prec + e bits, e = max ord_2 of the denominators of lambda.
// Throws std::domain_error when a root leaves the disk or the truncation tail could
// reach valuation below prec, and std::runtime_error for a non-integral result.
GaussAdic eval_lambda(const TruncSeries& lambda, const GaussAdic& trace, const GaussAdic& norm, int prec);
GaussAdic eval_lambda(const TruncSeries& lambda, const QuadElem& trace, const QuadElem& norm, int prec);
// Extra bits eval_lambda needs on its inputs.
int lambda_denominator_bits(const TruncSeries& lambda);
// Smallest series degree (at least 32) whose tail vanishes mod 2^bits for any
// pair of points quadratic over K_p in the disk of P0.
int required_degree(int bits);

using Coeffs = std::array<std::uint64_t, 4>;  // on (Re L1, Im L1, Re L2, Im L2)

struct Annihilators {
    int prec = 0;  // basis is meaningful modulo 2^prec
    std::vector<Coeffs> basis;
};

// values[j][l] = Lambda_{l+1}(E_{j+1}).  Throws std::runtime_error unless the
// solution space has rank 2 modulo the output precision.
Annihilators annihilator_solve(const std::array<std::array<GaussAdic, 2>, 2>& values);
// Canonical echelon (Howell) rows of the span of vs modulo 2^prec.
std::vector<Coeffs> howell_form(std::vector<Coeffs> vs, int prec);
bool same_span(const std::vector<Coeffs>& a, const std::vector<Coeffs>& b, int prec);

struct DiskSeries {
    int disk;
    BiTruncSeries mu1, mu2;
};

DiskSeries disk_series(int disk, const Annihilators& ann, int degree = 32);

struct ClassCertificate {
    std::uint64_t t, u;             // class modulo 2^class_bits
    std::uint64_t rep_t, rep_u;     // a solution modulo 2^prec in the class
    std::array<std::uint64_t, 4> jacobian;  // d mu1/dT, d mu1/dU, d mu2/dT, d mu2/dU at the representative
    int det_valuation;              // ord_2, prec when the determinant vanishes
    int value_valuation;            // lower bound for ord_2 of (mu1, mu2) at the representative
    int margin;                     // value_valuation - (2 det_valuation + 1)
    bool certified;
};

struct DiskCertificate {
    int disk;
    int prec, class_bits;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> solutions;  // modulo 2^prec
    std::vector<ClassCertificate> classes;
    bool certified;
    int count;  // roots in Z_2^2 when certified
};

DiskCertificate certify_disk(const DiskSeries& s, int class_bits = 3);

// Newton's method on (mu1, mu2) from a starting point, arithmetic mod 2^prec.
struct NewtonCheck {
    int prec;
    std::uint64_t start_t, start_u, root_t, root_u;
    int steps;
    bool converged;       // mu(root) == 0 mod 2^prec
    int agreement_bits;   // all solutions of the class agree with root modulo 2^this
    std::size_t class_solutions;
};
NewtonCheck newton_check(const DiskSeries& s, std::uint64_t t0, std::uint64_t u0, int class_bits = 3);

struct Precision {
    int degree = 32;       // lambda through t^degree
    int lambda_bits = 6;   // Lambda(E_j) mod 2^lambda_bits
    int class_bits = 3;
    int max_bits = 8;      // disks failing at the annihilator precision are retried up to 2^max_bits
};

struct Verdict {
    bool certified = false;
    std::vector<KPoint> points_on_x05;  // X_0(5)(Q(i))
    std::vector<std::string> inferences;
};

struct Report {
    Precision precision;
    KernelData kernel;
    std::array<std::array<GaussAdic, 2>, 2> lambda_values{};
    Annihilators annihilators;
    std::vector<DiskCertificate> disks;            // final attempt per disk
    std::vector<DiskCertificate> failed_attempts;  // earlier, uncertified attempts
    std::vector<bool> partner_series_match;  // conjugate disk series equal the negated partner series
    std::vector<NewtonCheck> newton;  // disk P0, one per class, at higher precision
    Verdict verdict;
};

// Runs every stage; disk certifications run concurrently.  A disk that cannot be
// certified at the annihilator precision is retried with more bits and finer classes.  'only_disk' restricts the
// disk stage (and then the verdict is not certified).
Report run_pipeline(const Precision& prec = {}, std::optional<int> only_disk = std::nullopt, int newton_bits = 8);
Verdict full_theorem();

// Parameters c in Q for which f_c has a Galois-stable 5-cycle.
std::vector<Rational> five_cycle_parameters();
// deg-5 irreducible factor of Phi_5(x, c) mapped to itself by f_c.
bool has_rational_five_cycle(const Rational& c);
// Phi_5(x, c) has no root in Q(sqrt d).
bool no_period_five_point(const Rational& c, long d);

// Narrative log in the order of the computation.
std::vector<std::string> transcript(const Report& r);

}  // namespace qd::chabauty
