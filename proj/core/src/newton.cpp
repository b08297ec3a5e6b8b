#include <motfourier/newton.hpp>

#include <motfourier/integrate.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace motfourier {

namespace {

void check_exps(int nvars, const std::vector<long>& exps) {
    if ((int)exps.size() != nvars) throw EngineError("exponent vector length mismatch");
    for (long e : exps)
        if (e < 0) throw EngineError("negative exponent in polynomial");
}

}  // namespace

VfPoly VfPoly::constant(int nvars, const VfElem& c) {
    VfPoly p(nvars);
    p.add_term(std::vector<long>(nvars, 0), c);
    return p;
}

VfPoly VfPoly::variable(int nvars, int idx) {
    if (idx < 0 || idx >= nvars) throw EngineError("variable index out of range");
    VfPoly p(nvars);
    std::vector<long> exps(nvars, 0);
    exps[idx] = 1;
    p.add_term(std::move(exps), VfElem(1));
    return p;
}

void VfPoly::add_term(std::vector<long> exps, const VfElem& c) {
    check_exps(nvars_, exps);
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(std::move(exps), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

long VfPoly::degree(int var) const {
    if (var < 0 || var >= nvars_) throw EngineError("variable index out of range");
    long d = -1;
    for (const auto& [exps, c] : terms_) d = std::max(d, exps[var]);
    return d;
}

long VfPoly::order(int var) const {
    if (var < 0 || var >= nvars_) throw EngineError("variable index out of range");
    if (terms_.empty()) throw ZeroPolynomialError("order of the zero polynomial");
    long m = terms_.begin()->first[var];
    for (const auto& [exps, c] : terms_) m = std::min(m, exps[var]);
    return m;
}

VfElem VfPoly::eval(const std::vector<VfElem>& point) const {
    if ((int)point.size() != nvars_) throw EngineError("point arity mismatch");
    VfElem acc;
    for (const auto& [exps, c] : terms_) {
        VfElem term = c;
        for (int i = 0; i < nvars_; ++i)
            if (exps[i] != 0) term *= point[i].pow(exps[i]);
        acc += term;
    }
    return acc;
}

VfPoly VfPoly::partial(int var) const {
    if (var < 0 || var >= nvars_) throw EngineError("variable index out of range");
    VfPoly out(nvars_);
    for (const auto& [exps, c] : terms_) {
        if (exps[var] == 0) continue;
        std::vector<long> e = exps;
        const long k = e[var];
        e[var] = k - 1;
        out.add_term(std::move(e), VfElem(k) * c);
    }
    return out;
}

VfPoly VfPoly::operator-() const {
    VfPoly out(nvars_);
    for (const auto& [exps, c] : terms_) out.add_term(exps, -c);
    return out;
}

VfPoly operator+(const VfPoly& a, const VfPoly& b) {
    if (a.nvars_ != b.nvars_) throw EngineError("polynomial variable count mismatch");
    VfPoly out = a;
    for (const auto& [exps, c] : b.terms_) out.add_term(exps, c);
    return out;
}

VfPoly operator-(const VfPoly& a, const VfPoly& b) { return a + (-b); }

VfPoly operator*(const VfPoly& a, const VfPoly& b) {
    if (a.nvars_ != b.nvars_) throw EngineError("polynomial variable count mismatch");
    VfPoly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            std::vector<long> e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(std::move(e), ca * cb);
        }
    }
    return out;
}

VfPoly VfPoly::scaled(const VfElem& s) const {
    VfPoly out(nvars_);
    for (const auto& [exps, c] : terms_) out.add_term(exps, s * c);
    return out;
}

std::string VfPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exps, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (int i = 0; i < nvars_; ++i) {
            if (exps[i] == 0) continue;
            os << "*x" << (i + 1);
            if (exps[i] != 1) os << "^" << exps[i];
        }
    }
    return os.str();
}

VfPoly compose(const VfPoly& g, const std::vector<VfPoly>& images) {
    if ((int)images.size() != g.nvars()) throw EngineError("composition arity mismatch");
    if (images.empty()) {
        VfPoly out(0);
        for (const auto& [exps, c] : g.terms()) out.add_term({}, c);
        return out;
    }
    const int n = images[0].nvars();
    for (const auto& im : images)
        if (im.nvars() != n) throw EngineError("composition images disagree on variables");

    // Power tables per substituted variable.
    std::vector<std::vector<VfPoly>> powers(images.size());
    for (size_t i = 0; i < images.size(); ++i) powers[i].push_back(VfPoly::constant(n, VfElem(1)));

    VfPoly out(n);
    for (const auto& [exps, c] : g.terms()) {
        VfPoly term = VfPoly::constant(n, c);
        for (size_t i = 0; i < images.size(); ++i) {
            while ((long)powers[i].size() <= exps[i]) powers[i].push_back(powers[i].back() * images[i]);
            if (exps[i] != 0) term = term * powers[i][exps[i]];
        }
        out = out + term;
    }
    return out;
}

// --- Newton polygon ----------------------------------------------------------

std::string NewtonPolygon::to_string() const {
    std::ostringstream os;
    os << "vertices";
    for (const auto& [j, v] : vertices) os << " (" << j << "," << v.get_str() << ")";
    os << "; slopes";
    if (segments.empty()) os << " none";
    for (const auto& s : segments) os << " " << s.slope.get_str() << "x" << s.length;
    if (zero_roots > 0) os << "; zero roots " << zero_roots;
    return os.str();
}

NewtonPolygon newton_polygon(const VfPoly& p) {
    if (p.nvars() != 1) throw EngineError("polygon needs a univariate polynomial");
    if (p.is_zero()) throw ZeroPolynomialError("polygon of the zero polynomial");

    std::vector<std::pair<long, Rat>> pts;
    for (const auto& [exps, c] : p.terms())
        pts.emplace_back(exps[0], Rat(c.val().value()));  // nonzero coefficient: finite

    // Lower convex hull by monotone chain; keep strict vertices only, so the
    // slopes come out strictly increasing.
    std::vector<std::pair<long, Rat>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // pop b when slope(a,b) >= slope(b,pt)
            const Rat lhs = (b.second - a.second) * Rat(pt.first - b.first);
            const Rat rhs = (pt.second - b.second) * Rat(b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    NewtonPolygon np;
    np.vertices = hull;
    np.zero_roots = hull.front().first;
    for (size_t i = 1; i < hull.size(); ++i) {
        PolygonSegment seg;
        seg.length = hull[i].first - hull[i - 1].first;
        seg.slope = Rat(hull[i].second - hull[i - 1].second) / Rat(seg.length);
        np.segments.push_back(std::move(seg));
    }
    return np;
}

// --- limit sets --------------------------------------------------------------

namespace {

// Height of a coefficient polynomial as x -> 0, ordered lexicographically:
// val h(a) = beta + k.v(a) for v(a) large, where k is the x-order.
struct AsymptoticHeight {
    long k = 0;
    Rat beta;
};

struct HullPoint {
    long j = 0;
    AsymptoticHeight h;
};

// slope(a,b) >= slope(b,c) in the lexicographic ordered group, with the
// j-differences positive.
bool pop_middle(const HullPoint& a, const HullPoint& b, const HullPoint& c) {
    const long d1 = b.j - a.j;
    const long d2 = c.j - b.j;
    const long k1 = (b.h.k - a.h.k) * d2;
    const long k2 = (c.h.k - b.h.k) * d1;
    if (k1 != k2) return k1 > k2;
    const Rat b1 = (b.h.beta - a.h.beta) * Rat(d2);
    const Rat b2 = (c.h.beta - b.h.beta) * Rat(d1);
    return b1 >= b2;
}

// Dense univariate polynomial over the constant field.
using QPoly = std::vector<GaussQ>;

void trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

GaussQ qeval(const QPoly& p, const GaussQ& x) {
    GaussQ acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Exact synthetic division by (y - r); the caller guarantees r is a root.
QPoly deflate(const QPoly& p, const GaussQ& r) {
    QPoly q(p.size() - 1);
    GaussQ acc;
    for (size_t i = p.size(); i-- > 1;) {
        acc = (i + 1 < p.size()) ? acc * r + p[i] : p[i];
        q[i - 1] = acc;
    }
    return q;
}

Int gauss_norm(const Int& a, const Int& b) { return a * a + b * b; }

// All Gaussian-integer divisors of z = a + bi (associates included); the
// caller bounds the norm.
std::vector<std::pair<Int, Int>> gauss_divisors(const Int& a, const Int& b) {
    std::vector<std::pair<Int, Int>> out;
    const Int n = gauss_norm(a, b);
    if (n == 0) return out;
    const Int bound = sqrt(n);
    for (Int p = -bound; p <= bound; ++p) {
        for (Int q = -bound; q <= bound; ++q) {
            const Int dn = gauss_norm(p, q);
            if (dn == 0 || n % dn != 0) continue;
            // (a+bi)/(p+qi) = ((ap+bq) + (bp-aq)i) / (p^2+q^2)
            const Int re = a * p + b * q;
            const Int im = b * p - a * q;
            if (re % dn == 0 && im % dn == 0) out.emplace_back(p, q);
        }
    }
    return out;
}

Int rat_den_lcm(const Rat& r, const Int& acc) {
    Int den = r.get_den();
    return acc / gcd(acc, den) * den;
}

// Gaussian-rational roots by the divisor search on numerator and leading
// coefficients; complete when the search bound is not exceeded.
std::vector<GaussQ> rational_roots(QPoly& p, const Int& norm_bound) {
    std::vector<GaussQ> roots;
    trim(p);
    if (p.size() <= 1) return roots;

    // Clear denominators to Gaussian integers.
    Int lcm(1);
    for (const auto& c : p) {
        lcm = rat_den_lcm(c.re(), lcm);
        lcm = rat_den_lcm(c.im(), lcm);
    }
    std::vector<std::pair<Int, Int>> zc(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Rat re = p[i].re() * Rat(lcm);
        Rat im = p[i].im() * Rat(lcm);
        zc[i] = {Int(re.get_num()), Int(im.get_num())};
    }

    const auto& c0 = zc.front();
    const auto& cn = zc.back();
    if (gauss_norm(c0.first, c0.second) > norm_bound || gauss_norm(cn.first, cn.second) > norm_bound)
        return roots;  // search skipped; the caller degrades honestly

    std::set<GaussQ> candidates;
    for (const auto& [pa, pb] : gauss_divisors(c0.first, c0.second)) {
        for (const auto& [qa, qb] : gauss_divisors(cn.first, cn.second)) {
            const GaussQ num{Rat(pa), Rat(pb)};
            const GaussQ den{Rat(qa), Rat(qb)};
            candidates.insert(num / den);
        }
    }
    for (const auto& cand : candidates) {
        while (p.size() > 1 && qeval(p, cand).is_zero()) {
            roots.push_back(cand);
            p = deflate(p, cand);
            trim(p);
        }
    }
    return roots;
}

}  // namespace

std::string LimitResult::to_string() const {
    if (escape) return "Escape";
    std::ostringstream os;
    os << "Limits{";
    bool first = true;
    for (const auto& v : limits) {
        if (!first) os << ", ";
        first = false;
        os << v.to_string();
    }
    os << "}";
    return os.str();
}

LimitResult limit_set(const VfPoly& g) {
    if (g.nvars() != 2) throw EngineError("limit classification needs a binary polynomial");
    if (g.is_zero()) throw ZeroPolynomialError("limit set of the zero polynomial");

    // Group by y-degree: j -> x-polynomial h_j.
    std::map<long, std::map<long, VfElem>> rows;
    for (const auto& [exps, c] : g.terms()) rows[exps[1]][exps[0]] = c;

    const long m = rows.begin()->first;  // y^m factor: the constant branch 0

    // Asymptotic polygon data per present y-degree.
    std::vector<HullPoint> pts;
    for (const auto& [j, hj] : rows) {
        HullPoint pt;
        pt.j = j;
        pt.h.k = hj.begin()->first;
        pt.h.beta = Rat(hj.begin()->second.val().value());
        pts.push_back(std::move(pt));
    }

    std::vector<HullPoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && pop_middle(hull[hull.size() - 2], hull.back(), pt))
            hull.pop_back();
        hull.push_back(pt);
    }

    // A segment whose slope grows with v(x) certifies a branch of root
    // valuation unbounded below.
    for (size_t i = 1; i < hull.size(); ++i) {
        if (hull[i].h.k > hull[i - 1].h.k) {
            LimitResult r;
            r.escape = true;
            return r;
        }
    }

    // Specialize at x = 0 after dividing out the common x-power.
    long k_min = pts.front().h.k;
    for (const auto& pt : pts) k_min = std::min(k_min, pt.h.k);

    const long n = rows.rbegin()->first;
    QPoly q((size_t)(n - m + 1));
    for (const auto& [j, hj] : rows) {
        if (hj.begin()->first != k_min) continue;
        const VfElem& c = hj.begin()->second;
        if (!c.is_constant())
            throw CannotSplitError("specialized coefficient leaves the constant field: " +
                                   c.to_string());
        q[(size_t)(j - m)] = c.constant_value();
    }
    trim(q);

    std::set<GaussQ> found;
    if (m > 0) found.insert(GaussQ());

    // Peel the root 0, then rational roots, then the quadratic formula.
    size_t low = 0;
    while (low < q.size() && q[low].is_zero()) ++low;
    if (low > 0 && !q.empty()) {
        found.insert(GaussQ());
        q.erase(q.begin(), q.begin() + (long)low);
    }
    for (const auto& r : rational_roots(q, Int(200000))) found.insert(r);
    trim(q);
    if (q.size() == 2) {
        found.insert(-(q[0] / q[1]));
        q = {GaussQ(Rat(1))};
    } else if (q.size() == 3) {
        const GaussQ disc = q[1] * q[1] - GaussQ(Rat(4)) * q[2] * q[0];
        const auto s = disc.sqrt();
        if (!s)
            throw CannotSplitError("irreducible quadratic over the constant field");
        const GaussQ half = GaussQ(Rat(1) / 2);
        found.insert((-q[1] + *s) * half / q[2]);
        found.insert((-q[1] - *s) * half / q[2]);
        q = {GaussQ(Rat(1))};
    } else if (q.size() > 3) {
        throw CannotSplitError("cannot split a degree-" + std::to_string(q.size() - 1) +
                               " factor over the constant field");
    }

    LimitResult r;
    r.limits.assign(found.begin(), found.end());
    return r;
}

// --- derivatives -------------------------------------------------------------

VfMatrix derivative(const std::vector<VfPoly>& map, const std::vector<VfElem>& point) {
    VfMatrix rows;
    for (const auto& f : map) {
        if ((int)point.size() != f.nvars()) throw EngineError("point arity mismatch");
        std::vector<VfElem> row;
        row.reserve(point.size());
        for (int j = 0; j < f.nvars(); ++j) row.push_back(f.partial(j).eval(point));
        rows.push_back(std::move(row));
    }
    return rows;
}

VfElem jacobian(const std::vector<VfPoly>& map, const std::vector<VfElem>& point) {
    if (map.empty() || (int)map.size() != map.front().nvars())
        throw NonSquareError("jacobian needs as many components as variables");
    return matrix_det(derivative(map, point));
}

}  // namespace motfourier
