// basis.hpp — Single-excitation basis labels and ordered bases

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace synthdim {

// Atomic levels that can carry the excitation. A basis state is either one
// photon in a lattice mode with every atom in its ground state, or one
// excited atomic level with the lattice empty, so the ground state itself
// never appears as a label.
enum class Level : int { e = 0, f1 = 1, f2 = 2, f = 3 };

std::string level_name(Level l);

struct BasisLabel {
    enum class Kind : int { LatticeSite = 0, AtomLevel = 1, AuxMode = 2 };

    Kind kind{Kind::LatticeSite};
    int site{0};            // LatticeSite: mode index m
    Level level{Level::e};  // AtomLevel
    int atom{0};            // AtomLevel: 0 = first (or only) atom, 1 = second
    int aux{0};             // AuxMode: 1 or 2

    static BasisLabel lattice_site(int m);
    static BasisLabel atom_level(Level l, int atom = 0);
    static BasisLabel aux_mode(int idx);

    // Name used in CSV headers and configs: "m-3", "m12", "atom_e",
    // "atomB_f1", "aux_1", ...
    std::string name() const;

    bool operator==(const BasisLabel&) const = default;
};

// Inverse of BasisLabel::name(); nullopt if the text is not a label.
std::optional<BasisLabel> parse_label(const std::string& text);

// Ordered single-excitation basis. Labels always appear as lattice sites in
// ascending contiguous order, then atomic levels, then auxiliary modes; the
// constructor rejects anything else so serialized column order is unique.
class Basis {
public:
    Basis() = default;
    explicit Basis(std::vector<BasisLabel> labels);

    std::size_t size() const { return labels_.size(); }
    const BasisLabel& operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<BasisLabel>& labels() const { return labels_; }

    std::optional<std::size_t> find(const BasisLabel& l) const;
    std::size_t index_of(const BasisLabel& l) const;  // throws std::out_of_range

    bool has_sites() const { return n_sites_ > 0; }
    std::size_t site_count() const { return n_sites_; }
    int m_min() const;  // throws if the basis has no lattice block
    int m_max() const;

    bool operator==(const Basis& other) const { return labels_ == other.labels_; }

private:
    std::vector<BasisLabel> labels_;
    std::size_t n_sites_{0};
    int m_min_{0};
};

}  // namespace synthdim
