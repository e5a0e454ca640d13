#include "convchar/group.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace convchar {

namespace {

int reduce(long long v, int n) {
    long long r = v % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

void require_valid(const FiniteAbelianGroup& g, const GroupElement& a) {
    if (a.coords.size() != g.rank()) {
        throw std::invalid_argument("group element has " + std::to_string(a.coords.size()) +
                                    " coordinates, group " + g.spec() + " has rank " +
                                    std::to_string(g.rank()));
    }
    if (!g.contains(a)) {
        throw std::invalid_argument("group element residue out of range for group " + g.spec());
    }
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    strides_.assign(factors_.size(), 1);
    order_ = 1;
    for (std::size_t j = factors_.size(); j-- > 0;) {
        if (factors_[j] < 1) {
            throw std::invalid_argument("cyclic factor orders must be >= 1");
        }
        strides_[j] = order_;
        order_ *= static_cast<std::size_t>(factors_[j]);
    }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec) {
    std::vector<int> factors;
    if (spec.empty()) {
        throw std::invalid_argument("empty group spec");
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t end = std::min(spec.find('x', start), spec.size());
        const std::string_view token = spec.substr(start, end - start);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || value < 1) {
            throw std::invalid_argument("malformed group spec '" + std::string(spec) +
                                        "' (expected n1xn2x...xnk with n_j >= 1)");
        }
        factors.push_back(value);
        start = end + 1;
    }
    return FiniteAbelianGroup(std::move(factors));
}

std::string FiniteAbelianGroup::spec() const {
    if (factors_.empty()) {
        return "1";
    }
    std::string out;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (j) out += 'x';
        out += std::to_string(factors_[j]);
    }
    return out;
}

bool FiniteAbelianGroup::contains(const GroupElement& a) const {
    if (a.coords.size() != factors_.size()) return false;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (a.coords[j] < 0 || a.coords[j] >= factors_[j]) return false;
    }
    return true;
}

GroupElement FiniteAbelianGroup::element(std::size_t index) const {
    if (index >= order_) {
        throw std::out_of_range("element index out of range");
    }
    GroupElement e;
    e.coords.resize(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        e.coords[j] = static_cast<int>((index / strides_[j]) % factors_[j]);
    }
    return e;
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& a) const {
    require_valid(*this, a);
    std::size_t index = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        index += static_cast<std::size_t>(a.coords[j]) * strides_[j];
    }
    return index;
}

GroupElement FiniteAbelianGroup::zero() const { return GroupElement{std::vector<int>(rank(), 0)}; }

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    require_valid(*this, a);
    require_valid(*this, b);
    GroupElement out;
    out.coords.resize(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
        out.coords[j] = reduce(static_cast<long long>(a.coords[j]) + b.coords[j], factors_[j]);
    }
    return out;
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
    require_valid(*this, a);
    GroupElement out;
    out.coords.resize(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
        out.coords[j] = reduce(-static_cast<long long>(a.coords[j]), factors_[j]);
    }
    return out;
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, neg(b));
}

std::size_t FiniteAbelianGroup::add_index(std::size_t a, std::size_t b) const {
    std::size_t out = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        const std::size_t n = static_cast<std::size_t>(factors_[j]);
        const std::size_t s = (a / strides_[j]) % n + (b / strides_[j]) % n;
        out += (s >= n ? s - n : s) * strides_[j];
    }
    return out;
}

std::size_t FiniteAbelianGroup::neg_index(std::size_t a) const {
    std::size_t out = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        const std::size_t n = static_cast<std::size_t>(factors_[j]);
        const std::size_t r = (a / strides_[j]) % n;
        out += (r == 0 ? 0 : n - r) * strides_[j];
    }
    return out;
}

double FiniteAbelianGroup::character_phase(std::size_t dual, std::size_t x) const {
    double t = 0.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        const std::size_t n = static_cast<std::size_t>(factors_[j]);
        const std::size_t k = (dual / strides_[j]) % n;
        const std::size_t v = (x / strides_[j]) % n;
        t += static_cast<double>((k * v) % n) / static_cast<double>(n);
    }
    return t - std::floor(t);
}

complex FiniteAbelianGroup::character(std::size_t dual, std::size_t x) const {
    const double angle = 2.0 * std::numbers::pi * character_phase(dual, x);
    return {std::cos(angle), std::sin(angle)};
}

double FiniteAbelianGroup::cosine(std::size_t dual, std::size_t x) const {
    return std::cos(2.0 * std::numbers::pi * character_phase(dual, x));
}

GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    return g.add(a, b);
}

GroupElement neg(const FiniteAbelianGroup& g, const GroupElement& a) { return g.neg(a); }

complex char_eval(const FiniteAbelianGroup& g, const DualCharacter& d, const GroupElement& x) {
    // Dual frequencies share the element index layout.
    return g.character(g.index_of(GroupElement{d.freq}), g.index_of(x));
}

double cosine_eval(const FiniteAbelianGroup& g, const CosineClassElement& c, const GroupElement& x) {
    return g.cosine(g.index_of(GroupElement{c.representative.freq}), g.index_of(x));
}

std::vector<DualCharacter> enumerate_duals(const FiniteAbelianGroup& g) {
    std::vector<DualCharacter> out;
    out.reserve(g.order());
    for (std::size_t d = 0; d < g.order(); ++d) {
        out.push_back(DualCharacter{g.element(d).coords});
    }
    return out;
}

std::vector<std::size_t> cosine_orbit_representatives(const FiniteAbelianGroup& g) {
    std::vector<std::size_t> reps;
    for (std::size_t d = 0; d < g.order(); ++d) {
        if (d <= g.neg_index(d)) reps.push_back(d);
    }
    return reps;
}

std::vector<CosineClassElement> enumerate_cosine_class(const FiniteAbelianGroup& g) {
    std::vector<CosineClassElement> out;
    for (std::size_t d : cosine_orbit_representatives(g)) {
        out.push_back(CosineClassElement{DualCharacter{g.element(d).coords},
                                         DualCharacter{g.element(g.neg_index(d)).coords}});
    }
    return out;
}

}  // namespace convchar
