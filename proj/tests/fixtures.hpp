#pragma once

#include <memory>

#include "twistaff/expr.hpp"
#include "twistaff/module.hpp"

namespace fixtures {

using namespace twistaff;

inline ContextPtr context_from(const TauMatrix& g) {
    LieAlgebra L = lie_sl(2);
    return std::make_shared<const TwistedContext>(L, aut_from_tau(L, g));
}

inline ContextPtr sl2_identity() { return context_from(TauMatrix::constant(Matrix::identity(3))); }

inline ContextPtr sl2_order2() {
    LieAlgebra L = lie_sl(2);
    return context_from(aut_inner_exp(L, parse_vector("h/4", L.labels())));
}

inline ContextPtr sl2_unipotent() {
    LieAlgebra L = lie_sl(2);
    return context_from(aut_inner_exp(L, parse_vector("e", L.labels())));
}

inline ModulePtr module(ContextPtr ctx, GeneratorSpace M, ModuleMode mode, long ell, Degree cutoff) {
    ModuleSpec s;
    s.space = std::move(M);
    s.mode = mode;
    s.level = Scalar(ell);
    s.cutoff = cutoff;
    return build_module(std::move(ctx), std::move(s));
}

inline ModulePtr trivial_module(ContextPtr ctx, ModuleMode mode, long ell, Degree cutoff) {
    GeneratorSpace M = trivial_space(*ctx, Scalar(ell));
    return module(std::move(ctx), std::move(M), mode, ell, cutoff);
}

inline std::vector<size_t> dims(const Module& m) {
    std::vector<size_t> out;
    for (const auto& [w, n] : m.character(m.cutoff())) out.push_back(n);
    return out;
}

}  // namespace fixtures
