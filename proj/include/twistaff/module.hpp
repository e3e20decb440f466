#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistaff/affine.hpp"

namespace twistaff {

enum class ModuleMode { hat, breve, overarc, tilde };
const char* mode_name(ModuleMode m);
ModuleMode parse_mode(const std::string& s);

// The finite-dimensional generating space M with basis w^b.
struct GeneratorSpace {
    std::vector<std::string> labels;
    // action of g on M: semisimple and nilpotent parts, matrices on the w^b
    Matrix g_semisimple;
    Matrix g_nilpotent;
    // a^i w^b = sum_c iota[i](c, b) w^c for Jordan indices i with alpha^i = 0
    std::map<size_t, Matrix> iota;
    bool has_iota = false;
    // L_M(0); empty means computed from Omega
    std::optional<Matrix> lm0;

    size_t dim() const { return labels.size(); }
};

// M = C with a^i acting by -ell (a_N, a^i), a_N the inner generator of N
GeneratorSpace trivial_space(const TwistedContext& ctx, const Scalar& ell);
// M = g in the Jordan basis, a acting by ad(a) - ell (a_N, a)
GeneratorSpace adjoint_space(const TwistedContext& ctx, const Scalar& ell);
// checks the iota action is a representation with the central twist and is
// g-compatible; throws config errors with the failing pair
void validate_space(const TwistedContext& ctx, const GeneratorSpace& M, const Scalar& ell);

struct ModuleSpec {
    GeneratorSpace space;
    ModuleMode mode = ModuleMode::tilde;
    Scalar level = Scalar(1);
    Degree cutoff = Degree(3);
    int iota_depth = 2;
};

using MonoId = std::uint32_t;
using SymId = std::uint32_t;

// Sparse vector over PBW monomials.
using ModuleElement = std::map<MonoId, Scalar>;

void add_scaled(ModuleElement& acc, const ModuleElement& x, const Scalar& c);
bool is_zero(const ModuleElement& x);

class Module {
public:
    Module(ContextPtr ctx, ModuleSpec spec);

    const TwistedContext& context() const { return *ctx_; }
    ContextPtr context_ptr() const { return ctx_; }
    const ModuleSpec& spec() const { return spec_; }
    ModuleMode mode() const { return spec_.mode; }
    const Scalar& level() const { return spec_.level; }
    const Degree& cutoff() const { return spec_.cutoff; }
    const Degree& min_weight() const { return min_weight_; }
    bool vertex_operator_mode() const { return mode() == ModuleMode::overarc || mode() == ModuleMode::tilde; }
    bool has_formal_l() const { return mode() == ModuleMode::hat || mode() == ModuleMode::breve; }
    bool truncated() const;  // iota tails cut at iota_depth

    // generator weights h^b
    const std::vector<Degree>& generator_weights() const { return gen_weight_; }
    Degree twist_weight(size_t b) const;
    // whether L_M(0) has a nilpotent part on M
    bool lm0_nilpotent_part() const { return lm0_nilpotent_; }
    // 2 (ell + h) L_M(0)
    const Matrix& omega_on_space() const { return omega_m_; }
    Scalar central_charge() const;

    // graded PBW basis up to the cutoff
    const std::map<Degree, std::vector<MonoId>>& graded_basis() const { return basis_; }
    std::vector<Degree> weights() const;
    size_t dim_at(const Degree& w) const;
    std::vector<std::pair<Degree, size_t>> character(const Degree& max_weight) const;

    Degree weight(MonoId m) const;
    size_t length(MonoId m) const;  // number of mode factors
    ModuleElement generator(size_t b) const;
    ModuleElement basis_element(MonoId m) const;

    // action of a^i t^n; throws on coset mismatch
    ModuleElement act(size_t i, const Degree& n, const ModuleElement& v) const;
    ModuleElement act(const AffineElement& x, const ModuleElement& v) const;
    ModuleElement act_formal_l(const ModuleElement& v) const;
    // applies the word right to left (last letter acts first); "L" letters are the formal L(-1)
    ModuleElement normal_form(const std::vector<std::optional<AffineGen>>& word, size_t b) const;

    ModuleElement omega(const ModuleElement& v) const;
    ModuleElement sugawara(long n, const ModuleElement& v) const;
    // ((-1)^k / k!) (N^k a)(n) applied to v; a in Jordan coordinates
    ModuleElement field_component(const Vector& a, const Degree& n, int k, const ModuleElement& v) const;

    // g on modules: semisimple part multiplicatively, nilpotent part as a derivation
    ModuleElement apply_semisimple(const ModuleElement& v) const;
    ModuleElement apply_nilpotent(const ModuleElement& v) const;

    std::string render(const ModuleElement& v) const;
    std::string render_monomial(MonoId m) const;
    // homogeneous weight of all terms, or nullopt for zero / mixed
    std::optional<Degree> element_weight(const ModuleElement& v) const;
    void check_cutoff(const ModuleElement& v) const;

    size_t cached_entries() const;

private:
    struct Sym {
        bool formal_l = false;
        size_t i = 0;
        Degree n;
        int rank = 0;  // 0 minus, 1 formal L, 2 iota, 3 plus
    };
    struct Mono {
        std::vector<SymId> syms;
        std::uint32_t b = 0;
        Degree weight;
    };

    SymId sym_id(bool formal_l, size_t i, const Degree& n) const;
    MonoId mono_id(std::vector<SymId> syms, std::uint32_t b) const;
    bool sym_less_equal(SymId x, SymId y) const;
    const ModuleElement& act_sym(SymId x, MonoId m) const;
    ModuleElement act_sym_elem(SymId x, const ModuleElement& v) const;
    ModuleElement compute_act(SymId x, MonoId m) const;
    ModuleElement bracket_then_act(SymId x, SymId y, MonoId rest) const;
    ModuleElement prepend(SymId x, MonoId m) const;
    ModuleElement apply_word(const std::vector<SymId>& syms, const ModuleElement& v) const;

    // OVERARC: reduction of iota tails modulo the Omega relation
    using Tail = std::vector<std::uint16_t>;
    using TailPoly = std::map<Tail, Scalar>;
    void setup_overarc();
    bool tail_standard(const Tail& t) const;
    const TailPoly& free_left_mul(std::uint16_t x, const Tail& t) const;
    TailPoly free_mul(const Tail& q, const TailPoly& p) const;
    const ModuleElement& reduce_tail(const Tail& t, std::uint32_t b) const;

    void compute_weights();
    void enumerate_basis();

    ContextPtr ctx_;
    ModuleSpec spec_;
    Scalar sugawara_pref_;     // 1 / (2 (ell + h))
    Vector x_correction_;      // sum_i [(N - alpha^i) a^{i'}, a^i], Jordan coordinates
    Scalar omega_constant_;    // -(ell/2) sum_i ((N - alpha^i)(N - alpha^i - 1) a^{i'}, a^i)
    Matrix omega_m_;
    bool lm0_nilpotent_ = false;
    std::vector<Degree> gen_weight_;
    Degree min_weight_;
    std::map<Degree, std::vector<MonoId>> basis_;

    // OVERARC data
    std::vector<size_t> iota_idx_;         // Jordan indices with alpha = 0
    std::vector<int> iota_pos_;            // Jordan index -> position in iota_idx_ or -1
    Tail lead_;                            // leading monomial of the Omega relation
    TailPoly omega_free_;                  // Omega_0 in U(g_iota), positions into iota_idx_
    Matrix omega_target_;                  // 2 (ell + h) L_M(0)

    mutable std::recursive_mutex mu_;
    mutable std::vector<Sym> syms_;
    mutable std::map<std::tuple<bool, size_t, Degree>, SymId> sym_index_;
    mutable std::vector<Mono> monos_;
    mutable std::unordered_map<std::string, MonoId> mono_index_;
    mutable std::unordered_map<std::uint64_t, ModuleElement> act_cache_;
    mutable std::map<std::pair<std::uint16_t, Tail>, TailPoly> free_cache_;
    mutable std::map<std::pair<Tail, std::uint32_t>, ModuleElement> tail_cache_;
};

using ModulePtr = std::shared_ptr<const Module>;

ModulePtr build_module(ContextPtr ctx, ModuleSpec spec);

struct VerifyOptions {
    long window = 2;
    // basis vectors up to this weight are tested; defaults to the cutoff
    std::optional<Degree> max_weight;
};

// commutator fidelity, grading, formal L(-1) relation, g-compatibility
Report verify_module(const Module& mod, const VerifyOptions& opt);
// Virasoro relations for |m|, |n| <= 2 on basis vectors up to cutoff - 2
Report verify_virasoro(const Module& mod, long range = 2);

// Independent count of PBW monomials: lowering modes times L(-1) powers times dim M
std::vector<std::pair<Degree, size_t>> pbw_count(const Module& mod, const Degree& max_weight);

}  // namespace twistaff
