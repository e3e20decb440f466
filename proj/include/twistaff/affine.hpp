#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistaff/automorphism.hpp"
#include "twistaff/exponent.hpp"
#include "twistaff/lie.hpp"
#include "twistaff/report.hpp"

namespace twistaff {

// The algebra data re-expressed in the Jordan basis a^i of the automorphism.
// Everything downstream works in these coordinates.
class TwistedContext {
public:
    TwistedContext(LieAlgebra L, AutomorphismData A);

    size_t dim() const { return dim_; }
    const LieAlgebra& lie() const { return L_; }
    const AutomorphismData& aut() const { return A_; }
    const RationalExponent& alpha(size_t i) const { return A_.alphas[i]; }
    int njump(size_t i) const { return A_.njump[i]; }
    const std::string& label(size_t i) const { return A_.jordan_labels[i]; }

    // [a^i, a^j] = sum c a^k
    const SparseTerms& bracket(size_t i, size_t j) const { return c_[i * dim_ + j]; }
    const Scalar& form(size_t i, size_t j) const { return B_(i, j); }
    // (N a^i, a^j)
    Scalar nform(size_t i, size_t j) const;
    // a^{i'} = sum_k dual(i,k) a^k
    const Matrix& dual() const { return D_; }
    const SparseTerms& dual_terms(size_t i) const { return dual_terms_[i]; }
    std::optional<mpq_class> dual_coxeter() const { return L_.dual_coxeter(); }

    Vector to_jordan(const Vector& original) const { return A_.Jinv * original; }
    Vector from_jordan(const Vector& jordan) const { return A_.J * jordan; }
    Vector bracket_jordan(const Vector& x, const Vector& y) const;
    Scalar form_jordan(const Vector& x, const Vector& y) const;
    Vector apply_n(const Vector& jordan) const;  // N in Jordan coordinates

    std::vector<size_t> iota_indices() const;
    bool has_index_with_alpha(const RationalExponent& a) const;

private:
    LieAlgebra L_;
    AutomorphismData A_;
    size_t dim_;
    std::vector<SparseTerms> c_;
    Matrix B_;
    Matrix D_;
    std::vector<SparseTerms> dual_terms_;
};

using ContextPtr = std::shared_ptr<const TwistedContext>;

struct AffineGen {
    bool central = false;
    size_t i = 0;
    Degree n;
};

enum class TriangularClass { plus, minus, iota, zero_mode, central };
const char* triangular_name(TriangularClass c);

// sum c * a^i t^n + central * k
struct AffineElement {
    std::map<std::pair<size_t, Degree>, Scalar> terms;
    Scalar central;

    static AffineElement gen(const AffineGen& g, const Scalar& c = Scalar(1));
    void add(size_t i, const Degree& n, const Scalar& c);
    AffineElement& operator+=(const AffineElement& o);
    AffineElement& operator-=(const AffineElement& o);
    friend AffineElement operator+(AffineElement a, const AffineElement& b) { return a += b; }
    friend AffineElement operator-(AffineElement a, const AffineElement& b) { return a -= b; }
    AffineElement scaled(const Scalar& c) const;
    bool is_zero() const;
    friend bool operator==(const AffineElement& a, const AffineElement& b) {
        return a.terms == b.terms && a.central == b.central;
    }
};

void check_coset(const TwistedContext& ctx, size_t i, const Degree& n);

// [a t^m, b t^n] = [a,b] t^{m+n} + (m (a,b) + (N a, b)) delta_{m+n,0} k; k stays symbolic.
AffineElement ta_bracket(const TwistedContext& ctx, const AffineElement& x, const AffineElement& y);
// only the (N a, b) part of the central coefficient
Scalar nilpotent_central_part(const TwistedContext& ctx, const AffineElement& x, const AffineElement& y);
TriangularClass ta_classify(const TwistedContext& ctx, const AffineGen& g);
AffineElement ta_jacobi_check(const TwistedContext& ctx, const AffineElement& x, const AffineElement& y,
                              const AffineElement& z);

// "e@1/2", "(e+f)@-1/2", "3*h@-1", "K": the element of g is given over the
// original labels and converted to the Jordan basis.
AffineElement parse_affine(const TwistedContext& ctx, std::string_view text);
// m = 0 picks the smallest conductor that fits
std::string render_affine(const TwistedContext& ctx, const AffineElement& x, long m = 0);

// generators a^i t^n with |n| <= window, then k
std::vector<AffineGen> window_generators(const TwistedContext& ctx, long window);

Report verify_affine(const TwistedContext& ctx, long window);

}  // namespace twistaff
