#include "motfourier/valfield.hpp"

#include <sstream>

namespace motfourier {

std::optional<Int> exact_isqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return root;
}

std::optional<Rat> exact_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto num = exact_isqrt(q.get_num());
    if (!num) return std::nullopt;
    auto den = exact_isqrt(q.get_den());
    if (!den) return std::nullopt;
    Rat r(*num, *den);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

std::optional<GaussQ> GaussQ::sqrt() const {
    // Solve (x + y i)^2 = re + im i exactly:  x^2 - y^2 = re, 2xy = im.
    if (is_zero()) return GaussQ();
    auto n = exact_sqrt(norm());
    if (!n) return std::nullopt;
    Rat x2 = (re_ + *n) / 2;
    auto x = exact_sqrt(x2);
    if (x && *x != 0) {
        Rat y = im_ / (2 * *x);
        GaussQ cand(*x, y);
        if (cand * cand == *this) return cand;
    }
    // re + |z| may be 0 for negative reals; then the root is purely imaginary.
    auto y = exact_sqrt((*n - re_) / 2);
    if (y) {
        GaussQ cand(Rat(0), *y);
        if (cand * cand == *this) return cand;
    }
    return std::nullopt;
}

std::string GaussQ::to_string() const {
    std::ostringstream out;
    out << "(" << re_.get_str();
    if (im_ >= 0) out << "+" << im_.get_str();
    else out << im_.get_str();
    out << "i)";
    return out.str();
}

std::string Gamma::to_string() const {
    return finite_ ? value_.get_str() : std::string("inf");
}

const GaussQ& VfElem::leading_coeff() const {
    if (terms_.empty()) throw EngineError("leading coefficient of zero");
    return terms_.begin()->second;
}

VfElem VfElem::operator-() const {
    VfElem out;
    for (const auto& [g, c] : terms_) out.terms_.emplace(g, -c);
    return out;
}

VfElem operator+(const VfElem& a, const VfElem& b) {
    VfElem out = a;
    for (const auto& [g, c] : b.terms_) {
        auto it = out.terms_.find(g);
        if (it == out.terms_.end()) {
            out.terms_.emplace(g, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

VfElem operator-(const VfElem& a, const VfElem& b) { return a + (-b); }

VfElem operator*(const VfElem& a, const VfElem& b) {
    VfElem out;
    for (const auto& [ga, ca] : a.terms_) {
        for (const auto& [gb, cb] : b.terms_) {
            Rat g = ga + gb;
            GaussQ c = ca * cb;
            auto it = out.terms_.find(g);
            if (it == out.terms_.end()) {
                if (!c.is_zero()) out.terms_.emplace(g, c);
            } else {
                it->second = it->second + c;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    }
    return out;
}

VfElem VfElem::inverse() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero field element");
    if (!is_monomial())
        throw NonMonomialError("inverse requires a single-term element, got " + to_string());
    const auto& [g, c] = *terms_.begin();
    return monomial(c.inverse(), -g);
}

VfElem VfElem::pow(long e) const {
    if (e == 0) return VfElem(1);
    VfElem base = e < 0 ? inverse() : *this;
    long n = e < 0 ? -e : e;
    VfElem out(1);
    for (long k = 0; k < n; ++k) out = out * base;
    return out;
}

VfElem VfElem::truncated(const Rat& bound, bool inclusive) const {
    VfElem out;
    for (const auto& [g, c] : terms_) {
        int rel = cmp_rat(g, bound);
        if (rel < 0 || (inclusive && rel == 0)) out.terms_[g] = c;
    }
    return out;
}

int cmp_vf(const VfElem& a, const VfElem& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        int c = cmp_rat(ia->first, ib->first);
        if (c != 0) return c;
        c = cmp_gauss(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

std::string VfElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << c.to_string() << "*t^" << g.get_str();
    }
    return out.str();
}

OmegaElem operator+(const OmegaElem& a, const OmegaElem& b) {
    return OmegaElem(a.rep() + b.rep());
}

OmegaElem theta(const VfElem& x) {
    VfElem trunc;
    for (const auto& [g, c] : x.terms()) {
        if (g <= 0) trunc += VfElem::monomial(c, g);
    }
    return OmegaElem(trunc);
}

RvElem rv(const VfElem& x) {
    if (x.is_zero()) return RvElem();
    return RvElem(x.leading_coeff(), x.val().value());
}

std::string RvElem::to_string() const {
    if (infinite_) return "rv(0)";
    return "rv(" + coeff_.to_string() + "*t^" + gamma_.get_str() + ")";
}

}  // namespace motfourier
