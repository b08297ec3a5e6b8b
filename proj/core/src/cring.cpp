#include "motfourier/cring.hpp"

#include <sstream>

namespace motfourier {

CElem CElem::operator-() const {
    CElem out;
    for (const auto& [w, m] : terms_) out.terms_.emplace(w, -m);
    return out;
}

CElem operator+(const CElem& a, const CElem& b) {
    CElem out = a;
    for (const auto& [w, m] : b.terms_) {
        auto it = out.terms_.find(w);
        if (it == out.terms_.end()) {
            out.terms_.emplace(w, m);
        } else {
            it->second += m;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

CElem operator-(const CElem& a, const CElem& b) { return a + (-b); }

CElem operator*(const CElem& a, const CElem& b) {
    CElem out;
    for (const auto& [wa, ma] : a.terms_) {
        for (const auto& [wb, mb] : b.terms_) {
            OmegaElem w = wa + wb;
            MotElem m = ma * mb;
            auto it = out.terms_.find(w);
            if (it == out.terms_.end()) {
                if (!m.is_zero()) out.terms_.emplace(std::move(w), std::move(m));
            } else {
                it->second += m;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    }
    return out;
}

std::string CElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, m] : terms_) {
        if (!first) out << " + ";
        first = false;
        bool scalar_one = m.is_one();
        bool trivial = w.is_zero();
        if (trivial) {
            out << m.to_string();
        } else if (scalar_one) {
            out << "exp{" << w.to_string() << "}";
        } else {
            out << "(" << m.to_string() << ")*exp{" << w.to_string() << "}";
        }
    }
    return out.str();
}

}  // namespace motfourier
