#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistaff/module.hpp"

namespace twistaff {

// a(x)^power with a an S-eigenvector in g^[gamma]; a in Jordan coordinates
struct NullFieldSpec {
    Vector a;
    Degree gamma;
    long power = 2;
};

// parses the element over the original labels; gamma is read off the eigenvector
NullFieldSpec null_field_from(const TwistedContext& ctx, const std::string& element, long power);

Report check_null_field(const TwistedContext& ctx, const NullFieldSpec& spec);

// Sparse echelon basis of one weight space: rows keyed by their smallest monomial.
class Echelon {
public:
    // reduces v; returns true and stores it when independent
    bool insert(ModuleElement v);
    ModuleElement reduce(ModuleElement v) const;
    bool contains(const ModuleElement& v) const { return reduce(v).empty(); }
    size_t rank() const { return rows_.size(); }
    const std::map<MonoId, ModuleElement>& rows() const { return rows_; }

private:
    std::map<MonoId, ModuleElement> rows_;
};

struct RelationSpace {
    std::map<Degree, Echelon> spaces;
    size_t rank_at(const Degree& d) const;
    bool contains(const Module& mod, const ModuleElement& v) const;
};

// coefficients of a(x)^power v at the target weight for every basis vector v
std::vector<ModuleElement> power_field_coefficients(const Module& mod, const NullFieldSpec& spec,
                                                    const Degree& target);

RelationSpace submodule_closure(const Module& mod, const std::vector<ModuleElement>& seeds);

struct Quotient {
    NullFieldSpec spec;
    RelationSpace relations;
    Degree margin = Degree(2);
    Degree certified;  // cutoff - margin
    size_t generator_steps = 0;
};

void check_quotient_supported(const Module& mod);
Quotient build_quotient(const Module& mod, const NullFieldSpec& spec, const Degree& margin = Degree(2));
std::vector<std::pair<Degree, size_t>> quotient_character(const Module& mod, const Quotient& q,
                                                          const Degree& max_weight);
bool is_annihilated(const Module& mod, const RelationSpace& rel, const NullFieldSpec& spec,
                    const Degree& max_weight);

Report verify_quotient(const Module& mod, const Quotient& q);

}  // namespace twistaff
