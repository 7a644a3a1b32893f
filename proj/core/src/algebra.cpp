#include "chiv/algebra.hpp"

#include <algorithm>
#include <ostream>

namespace chiv {

namespace {

int check_term_n(int n) {
    if (n < 1 || n > kMaxGroundSize)
        throw std::invalid_argument("Term: ground size must be in [1,16]");
    return n;
}

// Keep containment-minimal masks, dedupe, sort ascending.
void canonicalize(std::vector<Mask>& sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool minimal = true;
        // sorted ascending, so any strict subset of sets[i] sits before it
        for (std::size_t j = 0; j < i && minimal; ++j)
            if ((sets[j] & sets[i]) == sets[j] && sets[j] != sets[i]) minimal = false;
        if (minimal) sets[out++] = sets[i];
    }
    sets.resize(out);
}

} // namespace

Term::Term(int n) : n_(check_term_n(n)) {}

Term Term::product(std::span<const Subset> factors) {
    if (factors.empty()) throw std::invalid_argument("Term: empty factor list has no ground size");
    const int n = factors.front().ground_size();
    std::vector<Mask> masks;
    masks.reserve(factors.size());
    for (const Subset& s : factors) {
        if (s.ground_size() != n) throw std::invalid_argument("Term: mismatched ground sets");
        masks.push_back(s.bits());
    }
    return product(n, masks);
}

Term Term::product(int n, std::span<const Mask> factors) {
    Term t(n);
    const Mask all = Subset::mask_all(n);
    t.sets_.assign(factors.begin(), factors.end());
    for (Mask m : t.sets_)
        if (m & ~all) throw std::invalid_argument("Term: mask outside ground set");
    canonicalize(t.sets_);
    return t;
}

std::string Term::to_string() const {
    if (is_unit()) return "1";
    std::string out;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (i) out += '*';
        out += "x" + set_at(i).to_string();
    }
    return out;
}

FormalSum::FormalSum(int n) : n_(check_term_n(n)) {}

FormalSum FormalSum::constant(int n, const Int& c) {
    FormalSum s(n);
    s.add_term(Term(n), c);
    return s;
}

FormalSum FormalSum::generator(const Subset& a) {
    FormalSum s(a.ground_size());
    const Mask m[1] = {a.bits()};
    s.add_term(Term::product(a.ground_size(), m), 1);
    return s;
}

void FormalSum::add_term(const Term& t, const Int& c) {
    if (t.ground_size() != n_)
        throw std::invalid_argument("FormalSum: term ground size mismatch");
    if (c == 0) return;
    auto it = coeffs_.find(t);
    if (it == coeffs_.end()) {
        coeffs_.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
}

Int FormalSum::coeff(const Term& t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? Int(0) : it->second;
}

std::vector<std::pair<Term, Int>> FormalSum::sorted_terms() const {
    std::vector<std::pair<Term, Int>> v(coeffs_.begin(), coeffs_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
    if (o.n_ != n_) throw std::invalid_argument("FormalSum: ground size mismatch");
    for (const auto& [t, c] : o.coeffs_) add_term(t, c);
    return *this;
}

FormalSum& FormalSum::operator-=(const FormalSum& o) {
    if (o.n_ != n_) throw std::invalid_argument("FormalSum: ground size mismatch");
    for (const auto& [t, c] : o.coeffs_) add_term(t, -c);
    return *this;
}

FormalSum& FormalSum::scale(const Int& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [t, v] : coeffs_) v *= c;
    return *this;
}

FormalSum operator*(const FormalSum& a, const FormalSum& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("FormalSum: ground size mismatch");
    FormalSum out(a.n_);
    std::vector<Mask> buf;
    for (const auto& [ta, ca] : a.coeffs_) {
        for (const auto& [tb, cb] : b.coeffs_) {
            buf.clear();
            buf.insert(buf.end(), ta.sets().begin(), ta.sets().end());
            buf.insert(buf.end(), tb.sets().begin(), tb.sets().end());
            out.add_term(Term::product(a.n_, buf), ca * cb);
        }
    }
    return out;
}

FormalSum FormalSum::apply_sym_diff(const Subset& j) const {
    if (j.ground_size() != n_)
        throw std::invalid_argument("FormalSum: ground size mismatch");
    FormalSum out(n_);
    std::vector<Mask> buf;
    for (const auto& [t, c] : coeffs_) {
        buf.clear();
        for (Mask m : t.sets()) buf.push_back(m ^ j.bits());
        out.add_term(Term::product(n_, buf), c);
    }
    return out;
}

bool FormalSum::operator==(const FormalSum& o) const {
    if (n_ != o.n_ || coeffs_.size() != o.coeffs_.size()) return false;
    for (const auto& [t, c] : coeffs_) {
        auto it = o.coeffs_.find(t);
        if (it == o.coeffs_.end() || it->second != c) return false;
    }
    return true;
}

std::string FormalSum::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : sorted_terms()) {
        const Int a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (a != 1 || t.is_unit()) {
            out += a.str();
            if (!t.is_unit()) out += "*";
        }
        if (!t.is_unit()) out += t.to_string();
    }
    return out;
}

bool generator_value_at(Mask a, int n, std::span<const Rational> u) {
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("generator_value_at: point has wrong dimension");
    Rational lhs = 0;
    for (int i = 0; i < n; ++i) {
        if ((a >> i) & 1u)
            lhs += u[i];
        else
            lhs -= u[i];
    }
    return lhs > 1;
}

bool term_value_at(const Term& t, std::span<const Rational> u) {
    for (Mask m : t.sets())
        if (!generator_value_at(m, t.ground_size(), u)) return false;
    return true;
}

Int evaluate_at_point(const FormalSum& s, std::span<const Rational> u) {
    Int acc = 0;
    for (const auto& [t, c] : s.terms())
        if (term_value_at(t, u)) acc += c;
    return acc;
}

void dump_jsonl(const FormalSum& s, std::ostream& os) {
    for (const auto& [t, c] : s.sorted_terms()) {
        os << "{\"coeff\":\"" << c.str() << "\",\"sets\":[";
        for (std::size_t i = 0; i < t.sets().size(); ++i) {
            if (i) os << ',';
            os << t.sets()[i];
        }
        os << "],\"n\":" << t.ground_size() << "}\n";
    }
}

} // namespace chiv
