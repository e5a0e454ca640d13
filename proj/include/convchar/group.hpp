#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "convchar/matrix.hpp"

namespace convchar {

/// Element of a finite abelian group, as residues per cyclic factor.
struct GroupElement {
    std::vector<int> coords;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Dual character, identified by its frequency tuple (k_1, ..., k_r).
struct DualCharacter {
    std::vector<int> freq;
    friend bool operator==(const DualCharacter&, const DualCharacter&) = default;
};

/// Element of the bounded cosine class: the orbit {k, -k} of a dual frequency.
/// `representative` is the orbit member with the smaller canonical index, so two
/// elements compare equal iff their orbits coincide.
struct CosineClassElement {
    DualCharacter representative;
    DualCharacter partner;  // -representative; equal to it for 2-torsion frequencies
    friend bool operator==(const CosineClassElement& a, const CosineClassElement& b) {
        return a.representative == b.representative;
    }
};

/// Z_{n_1} x ... x Z_{n_r} with counting measure.
///
/// Elements (and dual characters, via self-duality) are enumerated
/// lexicographically with the first factor most significant. That index is the
/// canonical one: signals, spectra and kernel columns are all laid out by it.
class FiniteAbelianGroup {
public:
    /// Empty factor list is the trivial group. Throws std::invalid_argument if any n_j < 1.
    explicit FiniteAbelianGroup(std::vector<int> factors);

    /// Parses "n1xn2x...xnk", e.g. "4x3" or "7".
    static FiniteAbelianGroup parse(std::string_view spec);
    std::string spec() const;

    const std::vector<int>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::size_t order() const noexcept { return order_; }

    bool contains(const GroupElement& a) const;
    GroupElement element(std::size_t index) const;
    std::size_t index_of(const GroupElement& a) const;
    GroupElement zero() const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;

    // Index-level group law, used by the hot loops.
    std::size_t add_index(std::size_t a, std::size_t b) const;
    std::size_t neg_index(std::size_t a) const;
    std::size_t sub_index(std::size_t a, std::size_t b) const { return add_index(a, neg_index(b)); }

    /// Fraction t in [0, 1) with chi_d(x) = exp(2 pi i t).
    double character_phase(std::size_t dual, std::size_t x) const;
    /// chi_d(x) by canonical indices.
    complex character(std::size_t dual, std::size_t x) const;
    /// (chi_d(x) + chi_{-d}(x)) / 2, which is Re chi_d(x).
    double cosine(std::size_t dual, std::size_t x) const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<int> factors_;
    std::vector<std::size_t> strides_;
    std::size_t order_ = 1;
};

GroupElement add(const FiniteAbelianGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement neg(const FiniteAbelianGroup& g, const GroupElement& a);
complex char_eval(const FiniteAbelianGroup& g, const DualCharacter& d, const GroupElement& x);
double cosine_eval(const FiniteAbelianGroup& g, const CosineClassElement& c, const GroupElement& x);

/// All characters in canonical (lexicographic by frequency) order.
std::vector<DualCharacter> enumerate_duals(const FiniteAbelianGroup& g);

/// One element per orbit {k, -k}, ordered by the representative's canonical index.
std::vector<CosineClassElement> enumerate_cosine_class(const FiniteAbelianGroup& g);

/// Canonical dual indices of the orbit representatives, same order as enumerate_cosine_class.
std::vector<std::size_t> cosine_orbit_representatives(const FiniteAbelianGroup& g);

}  // namespace convchar
