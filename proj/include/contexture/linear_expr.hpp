#pragma once

#include <map>
#include <string>

#include "contexture/rational.hpp"

namespace contexture {

// Sparse linear expression: sum of coeff * variable plus a constant.
// Zero coefficients are never stored.
class LinearExpr {
  public:
    LinearExpr() = default;
    explicit LinearExpr(Rational constant) : constant_(std::move(constant)) {}

    static LinearExpr variable(const std::string& name, Rational coeff = Rational(1)) {
        LinearExpr e;
        e.add_term(name, coeff);
        return e;
    }

    void add_term(const std::string& name, const Rational& coeff) {
        if (is_zero(coeff)) return;
        auto [it, inserted] = coeffs_.emplace(name, coeff);
        if (!inserted) {
            it->second += coeff;
            if (is_zero(it->second)) coeffs_.erase(it);
        }
    }

    void add_constant(const Rational& c) { constant_ += c; }

    Rational coefficient(const std::string& name) const {
        auto it = coeffs_.find(name);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    const std::map<std::string, Rational>& coefficients() const { return coeffs_; }
    const Rational& constant() const { return constant_; }

    bool has_variable(const std::string& name) const { return coeffs_.count(name) != 0; }
    bool empty() const { return coeffs_.empty(); }

    LinearExpr& operator+=(const LinearExpr& other) {
        for (const auto& [name, c] : other.coeffs_) add_term(name, c);
        constant_ += other.constant_;
        return *this;
    }

    LinearExpr& operator-=(const LinearExpr& other) {
        for (const auto& [name, c] : other.coeffs_) add_term(name, -c);
        constant_ -= other.constant_;
        return *this;
    }

    LinearExpr& operator*=(const Rational& k) {
        if (is_zero(k)) {
            coeffs_.clear();
            constant_ = 0;
            return *this;
        }
        for (auto& [name, c] : coeffs_) c *= k;
        constant_ *= k;
        return *this;
    }

    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator*(LinearExpr a, const Rational& k) { return a *= k; }
    friend LinearExpr operator*(const Rational& k, LinearExpr a) { return a *= k; }

    bool operator==(const LinearExpr& other) const = default;

    template <typename Assignment>
    Rational evaluate(const Assignment& values) const {
        Rational total = constant_;
        for (const auto& [name, c] : coeffs_) total += c * values.at(name);
        return total;
    }

  private:
    std::map<std::string, Rational> coeffs_;
    Rational constant_{0};
};

}  // namespace contexture
