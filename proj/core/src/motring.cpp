#include "motfourier/motring.hpp"

#include <sstream>

namespace motfourier {

MotMonomial MotMonomial::o(const Rat& gamma, long exp) {
    MotMonomial m;
    if (exp > 0) {
        m.o_[gamma] = exp;
    } else if (exp < 0) {
        // O_g^{-1} = C_{-g} * e^{-1}
        m.c_[-gamma] = -exp;
        m.e_ = exp;
    }
    m.normalize();
    return m;
}

MotMonomial MotMonomial::c(const Rat& gamma, long exp) {
    MotMonomial m;
    if (exp > 0) {
        m.c_[gamma] = exp;
    } else if (exp < 0) {
        // C_g^{-1} = O_{-g} * e^{-1}
        m.o_[-gamma] = -exp;
        m.e_ = exp;
    }
    m.normalize();
    return m;
}

MotMonomial MotMonomial::e(long exp) {
    MotMonomial m;
    m.e_ = exp;
    return m;
}

namespace {

// Spread a total radius index over `count` factors of one ball kind, as
// evenly as integrality permits, so that e.g. O[1]*O[1] keeps its shape and
// O[0]*O[2] lands on the same key.
void distribute_indices(std::map<Rat, long>& exps, long count, const Rat& total) {
    if (count <= 0) return;
    if (is_integer(total)) {
        const Int lo = rat_floor(total / count);
        const Rat low(lo);
        const long high_count = static_cast<long>(Rat(total - low * count).get_num().get_si());
        if (count - high_count > 0) exps[low] = count - high_count;
        if (high_count > 0) exps[low + 1] = high_count;
    } else {
        exps[total] = 1;
        if (count > 1) exps[Rat(0)] += count - 1;
    }
}

}  // namespace

void MotMonomial::normalize() {
    // Polyball volumes are invariant under coordinatewise scalings with unit
    // total Jacobian, so a product of ball-volume symbols is determined by
    // the number of open-ball factors, the number of closed-ball factors,
    // the sum of all radius indices, and the power of e. Canonical form:
    // every matched open/closed pair folds into e, and the index sum spreads
    // evenly over the factors of the surviving kind (a lone balanced shift
    // is carried as O[s]*C[0]).
    long o_count = 0;
    long c_count = 0;
    Rat index_sum(0);
    for (const auto& [g, k] : o_) {
        o_count += k;
        index_sum += Rat(g * k);
    }
    for (const auto& [g, k] : c_) {
        c_count += k;
        index_sum += Rat(g * k);
    }
    const long folds = std::min(o_count, c_count);
    e_ += folds;
    o_count -= folds;
    c_count -= folds;
    o_.clear();
    c_.clear();
    if (o_count == 0 && c_count == 0) {
        if (index_sum != 0) {
            o_[index_sum] = 1;
            c_[Rat(0)] = 1;
            e_ -= 1;
        }
        return;
    }
    distribute_indices(o_, o_count, index_sum);
    distribute_indices(c_, c_count, index_sum);
}

MotMonomial operator*(const MotMonomial& a, const MotMonomial& b) {
    MotMonomial m = a;
    for (const auto& [g, k] : b.o_) m.o_[g] += k;
    for (const auto& [g, k] : b.c_) m.c_[g] += k;
    m.e_ += b.e_;
    m.normalize();
    return m;
}

MotMonomial MotMonomial::inverse() const {
    MotMonomial m = MotMonomial::e(-e_);
    for (const auto& [g, k] : o_) m = m * MotMonomial::o(g, -k);
    for (const auto& [g, k] : c_) m = m * MotMonomial::c(g, -k);
    return m;
}

bool operator<(const MotMonomial& a, const MotMonomial& b) {
    if (a.e_ != b.e_) return a.e_ < b.e_;
    if (a.o_ != b.o_) return a.o_ < b.o_;
    return a.c_ < b.c_;
}

std::string MotMonomial::to_string() const {
    if (is_one()) return "1";
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << "*";
        first = false;
    };
    for (const auto& [g, k] : o_) {
        sep();
        out << "O[" << g.get_str() << "]";
        if (k != 1) out << "^" << k;
    }
    for (const auto& [g, k] : c_) {
        sep();
        out << "C[" << g.get_str() << "]";
        if (k != 1) out << "^" << k;
    }
    if (e_ != 0) {
        sep();
        out << "e";
        if (e_ != 1) out << "^" << e_;
    }
    return out.str();
}

MotElem MotElem::operator-() const {
    MotElem out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

MotElem operator+(const MotElem& a, const MotElem& b) {
    MotElem out = a;
    for (const auto& [m, c] : b.terms_) {
        auto it = out.terms_.find(m);
        if (it == out.terms_.end()) {
            out.terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

MotElem operator-(const MotElem& a, const MotElem& b) { return a + (-b); }

MotElem operator*(const MotElem& a, const MotElem& b) {
    MotElem out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            MotMonomial m = ma * mb;
            Int c = ca * cb;
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                out.terms_.emplace(std::move(m), std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

MotElem MotElem::inverse() const {
    if (terms_.empty()) throw DivisionByZeroError("inverse of zero value-ring element");
    if (terms_.size() != 1)
        throw NonMonomialError("inverse requires a single-monomial element, got " + to_string());
    const auto& [m, c] = *terms_.begin();
    if (c != 1 && c != -1)
        throw NonMonomialError("inverse requires a unit coefficient, got " + to_string());
    MotElem out(m.inverse(), c);
    return out;
}

MotElem MotElem::pow(long e) const {
    if (e == 0) return MotElem(1);
    MotElem base = e < 0 ? inverse() : *this;
    long n = e < 0 ? -e : e;
    MotElem out(1);
    for (long k = 0; k < n; ++k) out = out * base;
    return out;
}

bool operator<(const MotElem& a, const MotElem& b) { return a.terms_ < b.terms_; }

std::string MotElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        if (c == 1 && !m.is_one()) {
            out << m.to_string();
        } else if (m.is_one()) {
            out << c.get_str();
        } else {
            out << c.get_str() << "*" << m.to_string();
        }
    }
    return out.str();
}

}  // namespace motfourier
