#pragma once

// Textbook single-variable Fourier-Motzkin without equality substitution or
// redundancy pruning; slow independent oracle for fm_eliminate.

#include "contexture/polyhedra.hpp"

namespace contexture::testing {

inline ConstraintSystem naive_eliminate(const ConstraintSystem& in, const std::string& v) {
    std::vector<std::string> vars;
    for (const auto& name : in.variables())
        if (name != v) vars.push_back(name);
    ConstraintSystem out(vars);
    std::vector<ConstraintRow> pos, neg, rest;
    auto classify = [&](ConstraintRow row) {
        const Rational c = row.lhs.coefficient(v);
        (is_negative(c) ? neg : (is_zero(c) ? rest : pos)).push_back(std::move(row));
    };
    for (ConstraintRow row : in.rows()) {
        if (row.rel == Relation::Eq) {  // split into <= and >=
            ConstraintRow flipped = row;
            flipped.lhs *= Rational(-1);
            flipped.rhs = -row.rhs;
            flipped.rel = Relation::LessEq;
            row.rel = Relation::LessEq;
            classify(std::move(flipped));
        }
        classify(std::move(row));
    }
    for (const auto& row : rest) out.add_row(row);
    for (const auto& p : pos)
        for (const auto& n : neg) {
            const Rational cp = p.lhs.coefficient(v);
            const Rational cn = -n.lhs.coefficient(v);
            ConstraintRow combo;
            combo.lhs = p.lhs * cn + n.lhs * cp;
            combo.rhs = p.rhs * cn + n.rhs * cp;
            out.add_row(std::move(combo));
        }
    out.dedupe();
    return out;
}

}  // namespace contexture::testing
