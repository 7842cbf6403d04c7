#ifndef INSEP_ARTIN_ORACLE_HPP
#define INSEP_ARTIN_ORACLE_HPP

#include <string>
#include <vector>

#include "insep/artin/base_change.hpp"

namespace insep::artin {

/// A = K[z_1..z_r]/(z_i^(p^n_i) - a_i) as a dense K-vector space in the
/// monomial basis, z_1 least significant.
class ConcreteAlgebra {
public:
    using Vec = std::vector<TowerElement>;

    ConcreteAlgebra(const FieldTower& K, const InseparableExtensionSpec& spec) : K_(K) {
        dim_ = 1;
        for (const auto& e : spec.entries) {
            std::size_t q = 1;
            for (unsigned k = 0; k < e.exponent; ++k) q *= K.characteristic();
            q_.push_back(q);
            a_.push_back(K.from_base(e.radicand));
            stride_.push_back(dim_);
            dim_ *= q;
        }
    }

    std::size_t dim() const { return dim_; }
    const FieldTower& field() const { return K_; }

    Vec zero() const { return Vec(dim_, K_.zero()); }

    Vec from_zpoly(const ZPoly& f) const {
        Vec v = zero();
        for (const auto& [e, c] : f.terms()) add_monomial(v, 0, e, c);
        return v;
    }

    /// x * f for sparse f.
    Vec mul(const Vec& x, const ZPoly& f) const {
        Vec out = zero();
        for (std::size_t idx = 0; idx < dim_; ++idx) {
            if (x[idx].is_zero()) continue;
            for (const auto& [e, c] : f.terms()) add_monomial(out, idx, e, x[idx] * c);
        }
        return out;
    }

    /// Monomial basis element with index `idx`.
    ZPoly basis_monomial(std::size_t idx, std::size_t nvars) const {
        ZPoly::Exps e(nvars, 0);
        for (std::size_t i = 0; i < q_.size(); ++i) e[i] = static_cast<unsigned>((idx / stride_[i]) % q_[i]);
        ZPoly f(K_, nvars);
        f.add_term(e, K_.one());
        return f;
    }

    static bool is_zero(const Vec& v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    // out += c * z^(digits(base) + e), reduced by z_i^(q_i) = a_i.
    void add_monomial(Vec& out, std::size_t base, const ZPoly::Exps& e, TowerElement c) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < q_.size(); ++i) {
            std::size_t d = (base / stride_[i]) % q_[i] + e[i];
            while (d >= q_[i]) {
                d -= q_[i];
                c *= a_[i];
            }
            idx += d * stride_[i];
        }
        out[idx] += c;
    }

    FieldTower K_;
    std::size_t dim_ = 1;
    std::vector<std::size_t> q_, stride_;
    std::vector<TowerElement> a_;
};

struct OracleReport {
    bool dimension_ok = false;       // dim_K A = prod p^n_i = [K':K] * p^(sum order)
    bool nilpotency_ok = false;      // each eps has index exactly p^order
    bool quotient_ok = false;        // dim_K A/(eps) = [K':K]
    bool cotangent_ok = false;       // dim_K m/m^2 = s * [K':K]
    std::size_t algebra_dim = 0;
    std::size_t quotient_dim = 0;
    std::size_t cotangent_dim = 0;
    std::vector<std::size_t> nilpotency_index;
    std::string detail;

    bool passed() const { return dimension_ok && nilpotency_ok && quotient_ok && cotangent_ok; }
};

inline constexpr std::size_t kDefaultOracleCap = 1024;

/// Checks a structure against the algebra built directly from the spec.
inline OracleReport verify_structure_oracle(const FieldTower& K, const InseparableExtensionSpec& spec,
                                            const TruncatedStructure& S, std::size_t cap = kDefaultOracleCap) {
    const std::size_t D = spec.degree(K.characteristic());
    if (D > cap)
        throw CapExceeded("algebra dimension " + std::to_string(D) + " exceeds the cap " + std::to_string(cap));
    detail::validate(K, spec);
    const std::size_t r = spec.size();
    const std::uint32_t p = K.characteristic();
    ConcreteAlgebra A(K, spec);
    OracleReport rep;
    rep.algebra_dim = A.dim();

    const std::size_t kdeg = S.residue_degree();
    std::size_t claimed = kdeg;
    for (const auto& e : S.nilpotents)
        for (unsigned k = 0; k < e.order; ++k) claimed *= p;
    rep.dimension_ok = A.dim() == D && claimed == D;

    rep.nilpotency_ok = true;
    for (const auto& e : S.nilpotents) {
        std::size_t want = 1;
        for (unsigned k = 0; k < e.order; ++k) want *= p;
        ConcreteAlgebra::Vec x = A.from_zpoly(ZPoly::constant(K.one(), r));
        std::size_t index = 0;
        while (!ConcreteAlgebra::is_zero(x) && index <= D) {
            x = A.mul(x, e.expression);
            ++index;
        }
        rep.nilpotency_index.push_back(index);
        if (index != want) {
            rep.nilpotency_ok = false;
            rep.detail += "(b) nilpotent " + e.text + " has index " + std::to_string(index) + ", expected " +
                          std::to_string(want) + "; ";
        }
    }

    // (eps) and (eps)^2 as K-spans of eps_i * basis and eps_i eps_j * basis.
    EchelonBasis<TowerElement> ideal(D), square(D);
    for (const auto& e : S.nilpotents)
        for (std::size_t b = 0; b < D; ++b) ideal.insert(A.from_zpoly(e.expression * A.basis_monomial(b, r)));
    for (std::size_t i = 0; i < S.nilpotents.size(); ++i)
        for (std::size_t j = i; j < S.nilpotents.size(); ++j) {
            const ZPoly prod = S.nilpotents[i].expression * S.nilpotents[j].expression;
            for (std::size_t b = 0; b < D; ++b) square.insert(A.from_zpoly(prod * A.basis_monomial(b, r)));
        }
    rep.quotient_dim = D - ideal.rank();
    rep.quotient_ok = rep.quotient_dim == kdeg;
    rep.cotangent_dim = ideal.rank() - square.rank();
    rep.cotangent_ok = rep.cotangent_dim == S.nilpotents.size() * kdeg;
    if (!rep.quotient_ok)
        rep.detail += "(c) quotient dimension " + std::to_string(rep.quotient_dim) + " != " + std::to_string(kdeg) + "; ";
    if (!rep.cotangent_ok)
        rep.detail += "(d) cotangent dimension " + std::to_string(rep.cotangent_dim) + "; ";
    if (!rep.dimension_ok) rep.detail += "(a) dimension bookkeeping " + std::to_string(claimed) + " != " + std::to_string(D) + "; ";
    return rep;
}

}  // namespace insep::artin

#endif  // INSEP_ARTIN_ORACLE_HPP
