#include "tate/bruhat.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tate {

namespace {

// Canonical representative of center + p^L Z_p inside [0, p^L) cap Z[1/p].
mpq_class rep_center(const mpq_class& c, long L, long p) {
    mpq_class scaled = c * pow_q(p, -L);
    return frac_part_p(scaled, p) * pow_q(p, L);
}

// Canonical representative of twist + p^{-L} Z_p: digits at positions <= -L-1.
mpq_class rep_twist(const mpq_class& t, long L, long p) {
    mpq_class scaled = t * pow_q(p, L);
    return frac_part_p(scaled, p) * pow_q(p, -L);
}

struct KeyLess {
    bool operator()(const std::pair<mpq_class, mpq_class>& a,
                    const std::pair<mpq_class, mpq_class>& b) const {
        int c = cmp(a.first, b.first);
        if (c != 0) return c < 0;
        return cmp(a.second, b.second) < 0;
    }
};

}  // namespace

BruhatFunction::BruhatFunction(long p) : p_(p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("not a prime");
}

BruhatFunction BruhatFunction::zero(long p) {
    BruhatFunction f(p);
    f.canonical_ = true;
    return f;
}

BruhatFunction BruhatFunction::indicator(long p, const mpq_class& center, long level) {
    return term(p, Cyclotomic(1), mpq_class(0), center, level);
}

BruhatFunction BruhatFunction::term(long p, Cyclotomic coeff, const mpq_class& twist,
                                    const mpq_class& center, long level) {
    BruhatFunction f(p);
    f.append(BruhatTerm{std::move(coeff), twist, center, level});
    return f;
}

void BruhatFunction::append(BruhatTerm t) {
    terms_.push_back(std::move(t));
    canonical_ = false;
}

long BruhatFunction::canonical_level() const {
    if (!canonical_) throw std::logic_error("canonical_level on non-canonical function");
    return clevel_;
}

Cyclotomic BruhatFunction::value_at(const mpq_class& t) const {
    Cyclotomic v;
    for (auto& tm : terms_) {
        mpq_class d = t - tm.center;
        if (d != 0 && ord_p(d, p_) < tm.level) continue;
        if (tm.twist == 0) {
            v += tm.coeff;
        } else {
            v += tm.coeff.rotated(RationalAngle(frac_part_p(mpq_class(tm.twist * t), p_)));
        }
    }
    return v;
}

namespace {
using CellMap = std::map<std::pair<mpq_class, mpq_class>, Cyclotomic, KeyLess>;
}

// Refine a term list to cells at one fixed level: split cosets, reduce
// twists mod p^{-L} Z_p (folding the stripped part into coefficients),
// merge equal (center, twist) keys and drop exact zeros.
static CellMap cells_at(const std::vector<BruhatTerm>& terms, long p, long L) {
    CellMap cells;
    for (auto& t : terms) {
        if (L < t.level) throw std::logic_error("cells_at: level coarser than a term");
        mpz_class count = pow_z(p, static_cast<unsigned long>(L - t.level));
        if (count > BruhatFunction::kMaxTerms)
            throw std::runtime_error("canonicalize: term refinement guard tripped");
        mpq_class step = pow_q(p, t.level);
        mpq_class trep = rep_twist(t.twist, L, p);
        mpq_class delta = t.twist - trep;  // in p^{-L} Z_p
        for (mpz_class j = 0; j < count; ++j) {
            mpq_class center = t.center + mpq_class(j) * step;
            mpq_class crep = rep_center(center, L, p);
            Cyclotomic c = t.coeff;
            if (delta != 0) {
                mpq_class fold = frac_part_p(mpq_class(delta * crep), p);
                c = c.rotated(RationalAngle(fold));
            }
            cells[{crep, trep}] += c;
            if (cells.size() > static_cast<size_t>(BruhatFunction::kMaxTerms))
                throw std::runtime_error("canonicalize: cell count guard tripped");
        }
    }
    // Keep coefficients in sparse angle form (the power-basis rewrite can
    // densify badly for large p); zero tests are value-exact regardless.
    for (auto it = cells.begin(); it != cells.end();) {
        if (it->second.is_zero()) it = cells.erase(it);
        else ++it;
    }
    return cells;
}

BruhatFunction BruhatFunction::canonicalize() const {
    if (canonical_) return *this;
    if (terms_.empty()) return zero(p_);
    long L = terms_.front().level;
    for (auto& t : terms_) L = std::max(L, t.level);
    CellMap cells = cells_at(terms_, p_, L);

    // Re-assemble full sibling groups while the whole level coarsens:
    // p siblings with a common twist t' merge into the parent coset when
    // their coefficients match c * chi_p(d p^{-L} x_j) for one digit d;
    // the parent twist is then t' + d p^{-L}.
    while (!cells.empty()) {
        if (cells.size() % static_cast<size_t>(p_) != 0) break;
        CellMap parents;
        bool ok = true;
        std::map<std::pair<mpq_class, mpq_class>,
                 std::vector<std::pair<mpq_class, Cyclotomic>>, KeyLess>
            buckets;
        for (auto& [key, c] : cells) {
            mpq_class par = rep_center(key.first, L - 1, p_);
            buckets[{par, key.second}].push_back({key.first, c});
        }
        for (auto& [bk, kids] : buckets) {
            if (!ok) break;
            if (kids.size() != static_cast<size_t>(p_)) { ok = false; break; }
            std::vector<Complex> kz;
            kz.reserve(kids.size());
            double mass = 1e-30;
            for (auto& [x, c] : kids) {
                (void)x;
                kz.push_back(c.to_complex());
                mass = std::max(mass, std::abs(kz.back()));
            }
            // f(d y) = d f(y) mod 1, so one fractional part per child serves
            // every candidate digit d
            std::vector<mpq_class> base_angle(kids.size());
            mpq_class unit_tw = pow_q(p_, -L);
            for (size_t i = 0; i < kids.size(); ++i)
                base_angle[i] = frac_part_p(mpq_class(unit_tw * kids[i].first), p_);
            // try each possible stripped digit d; a float screen rejects
            // wrong digits before any exact arithmetic runs
            bool merged = false;
            for (long d = 0; d < p_ && !merged; ++d) {
                mpq_class dtw = mpq_class(d) * unit_tw;
                std::vector<RationalAngle> rot(kids.size());
                for (size_t i = 0; i < kids.size(); ++i)
                    rot[i] = RationalAngle(mpq_class(base_angle[i] * d));
                bool plausible = true;
                for (size_t i = 1; i < kids.size() && plausible; ++i) {
                    Complex expect = kz[0] * (rot[i] - rot[0]).to_complex();
                    if (std::abs(expect - kz[i]) > 1e-6 * mass) plausible = false;
                }
                if (!plausible) continue;
                Cyclotomic base = kids[0].second.rotated(-rot[0]);
                bool fits = true;
                for (size_t i = 1; i < kids.size() && fits; ++i) {
                    Cyclotomic expect = base.rotated(rot[i]);
                    if (!(expect - kids[i].second).is_zero()) fits = false;
                }
                if (fits) {
                    parents[{bk.first, mpq_class(bk.second + dtw)}] += base;
                    merged = true;
                }
            }
            if (!merged) ok = false;
        }
        if (!ok) break;
        cells = std::move(parents);
        --L;
    }

    BruhatFunction out(p_);
    for (auto& [key, c] : cells)
        out.terms_.push_back(BruhatTerm{c, key.second, key.first, L});
    out.canonical_ = true;
    out.clevel_ = cells.empty() ? 0 : L;
    return out;
}

bool BruhatFunction::is_zero() const {
    if (canonical_) return terms_.empty();
    if (terms_.empty()) return true;
    long L = terms_.front().level;
    for (auto& t : terms_) L = std::max(L, t.level);
    return cells_at(terms_, p_, L).empty();
}

BruhatFunction BruhatFunction::operator+(const BruhatFunction& o) const {
    if (p_ != o.p_) throw std::invalid_argument("prime mismatch");
    BruhatFunction f(p_);
    f.terms_ = terms_;
    f.terms_.insert(f.terms_.end(), o.terms_.begin(), o.terms_.end());
    return f;
}

BruhatFunction BruhatFunction::operator-(const BruhatFunction& o) const {
    return *this + o.scaled(Cyclotomic(-1));
}

BruhatFunction BruhatFunction::scaled(const Cyclotomic& c) const {
    BruhatFunction f(p_);
    for (auto& t : terms_) f.terms_.push_back(BruhatTerm{t.coeff * c, t.twist, t.center, t.level});
    return f;
}

BruhatFunction BruhatFunction::operator*(const BruhatFunction& o) const {
    if (p_ != o.p_) throw std::invalid_argument("prime mismatch");
    BruhatFunction a = canonicalize(), b = o.canonicalize();
    if (a.terms_.empty() || b.terms_.empty()) return zero(p_);
    long L = std::max(a.clevel_, b.clevel_);
    auto refine = [&](const BruhatFunction& f) {
        std::map<mpq_class, std::vector<std::pair<mpq_class, Cyclotomic>>,
                 bool (*)(const mpq_class&, const mpq_class&)>
            m([](const mpq_class& x, const mpq_class& y) { return cmp(x, y) < 0; });
        for (auto& t : f.terms_) {
            mpz_class count = pow_z(p_, static_cast<unsigned long>(L - t.level));
            if (count > kMaxTerms) throw std::runtime_error("product refinement guard tripped");
            mpq_class step = pow_q(p_, t.level);
            for (mpz_class j = 0; j < count; ++j) {
                mpq_class cr = rep_center(mpq_class(t.center + mpq_class(j) * step), L, p_);
                m[cr].push_back({t.twist, t.coeff});
            }
        }
        return m;
    };
    auto ma = refine(a), mb = refine(b);
    BruhatFunction out(p_);
    for (auto& [center, as] : ma) {
        auto it = mb.find(center);
        if (it == mb.end()) continue;
        for (auto& [ta, ca] : as)
            for (auto& [tb, cb] : it->second)
                out.terms_.push_back(BruhatTerm{ca * cb, mpq_class(ta + tb), center, L});
    }
    return out.canonicalize();
}

BruhatFunction BruhatFunction::fourier() const {
    BruhatFunction out(p_);
    for (auto& t : terms_) {
        Cyclotomic c = t.coeff;
        if (t.twist != 0 && t.center != 0)
            c = c.rotated(RationalAngle(frac_part_p(mpq_class(t.twist * t.center), p_)));
        c = c.scaled(pow_q(p_, -t.level));
        out.terms_.push_back(BruhatTerm{c, t.center, mpq_class(-t.twist), -t.level});
    }
    return out.canonicalize();
}

BruhatFunction BruhatFunction::reflect() const {
    BruhatFunction out(p_);
    for (auto& t : terms_)
        out.terms_.push_back(BruhatTerm{t.coeff, mpq_class(-t.twist), mpq_class(-t.center), t.level});
    return out.canonicalize();
}

BruhatFunction BruhatFunction::conj() const {
    BruhatFunction out(p_);
    for (auto& t : terms_)
        out.terms_.push_back(BruhatTerm{t.coeff.conj(), mpq_class(-t.twist), t.center, t.level});
    return out.canonicalize();
}

bool BruhatFunction::equals(const BruhatFunction& o) const {
    return (*this - o).is_zero();
}

bool BruhatFunction::same_canonical_form(const BruhatFunction& o) const {
    if (p_ != o.p_) return false;
    // The cell data of a function at any fixed level is unique, so two
    // expressions agree exactly when their cells coincide at the common
    // refinement level (no coarsening pass needed for comparison).
    long L = 0;
    bool first = true;
    for (auto* f : {this, &o})
        for (auto& t : f->terms_) {
            if (first || t.level > L) L = t.level;
            first = false;
        }
    if (first) return true;  // both empty
    CellMap ca = cells_at(terms_, p_, L);
    CellMap cb = cells_at(o.terms_, p_, L);
    if (ca.size() != cb.size()) return false;
    auto ia = ca.begin();
    auto ib = cb.begin();
    for (; ia != ca.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!(ia->second - ib->second).is_zero()) return false;
    }
    return true;
}

Cyclotomic BruhatFunction::integrate() const {
    BruhatFunction f = canonicalize();
    // Twisted cells integrate to zero: their reduced twist has valuation
    // <= -L-1, so chi_p is a nontrivial character of the coset.
    Cyclotomic total;
    for (auto& t : f.terms_)
        if (t.twist == 0) total += t.coeff.scaled(pow_q(p_, -f.clevel_));
    return total;
}

Cyclotomic BruhatFunction::integrate_multiplicative() const {
    BruhatFunction f = canonicalize();
    if (f.terms_.empty()) return Cyclotomic();
    long L = f.clevel_;
    long vmin = L, deepest = L;
    Cyclotomic f0;
    for (auto& t : f.terms_) {
        if (t.center == 0) {
            f0 += t.coeff;
            if (t.twist != 0) deepest = std::max(deepest, -ord_p(t.twist, p_));
        } else {
            vmin = std::min(vmin, ord_p(t.center, p_));
        }
    }
    if (!f0.is_zero())
        throw std::domain_error("multiplicative integral diverges: f(0) != 0");
    // f(0) = 0: beyond the deepest zero-cell twist the shells vanish
    // identically, so only finitely many shells p^k Z_p^x contribute.
    Cyclotomic total;
    for (long k = vmin; k < deepest; ++k) {
        BruhatFunction shell =
            BruhatFunction::indicator(p_, 0, k) - BruhatFunction::indicator(p_, 0, k + 1);
        Cyclotomic part = (f * shell).integrate();
        total += part.scaled(pow_q(p_, k) * mpq_class(p_, p_ - 1));
    }
    return total;
}

nlohmann::ordered_json BruhatFunction::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["terms"] = nlohmann::ordered_json::array();
    for (auto& t : terms_) {
        Complex c = t.coeff.to_complex();
        j["terms"].push_back({{"coeff", {c.real(), c.imag()}},
                              {"twist", t.twist.get_str()},
                              {"center", t.center.get_str()},
                              {"level", t.level}});
    }
    return j;
}

BruhatFunction BruhatFunction::from_json(const nlohmann::json& j) {
    BruhatFunction f(j.at("p").get<long>());
    for (auto& tj : j.at("terms")) {
        double re = tj.at("coeff").at(0).get<double>();
        double im = tj.at("coeff").at(1).get<double>();
        Cyclotomic c = Cyclotomic(mpq_class(re));
        if (im != 0.0) c += Cyclotomic::root_of_unity(RationalAngle(1, 4), mpq_class(im));
        f.append(BruhatTerm{c, parse_rational(tj.at("twist").get<std::string>()),
                            parse_rational(tj.at("center").get<std::string>()),
                            tj.at("level").get<long>()});
    }
    return f;
}

double log_abs_integral(long p, int terms) {
    double lp = std::log(double(p));
    double s = 0.0;
    for (int n = 0; n <= terms; ++n)
        s += double(n) * (std::pow(double(p), -n) - std::pow(double(p), -n - 1));
    return -lp * s;
}

Cyclotomic mellin_indicator_unit(const UnitCharacter& chi) {
    long p = chi.prime();
    int n = std::max(chi.degree(), 1);
    mpz_class pn = pow_z(p, static_cast<unsigned long>(n));
    Cyclotomic sum;
    for (mpz_class e = 1; e < pn; ++e) {
        if (e % p == 0) continue;
        sum += Cyclotomic::root_of_unity(chi.eval_residue(e));
    }
    return sum.scaled(mpq_class(p, p - 1) * mpq_class(1, pn));
}

}  // namespace tate
