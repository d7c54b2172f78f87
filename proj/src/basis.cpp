#include "synthdim/basis.hpp"

#include <charconv>
#include <stdexcept>

namespace synthdim {

std::string level_name(Level l) {
    switch (l) {
        case Level::e: return "e";
        case Level::f1: return "f1";
        case Level::f2: return "f2";
        case Level::f: return "f";
    }
    throw std::invalid_argument("level_name: unknown level");
}

namespace {

std::optional<Level> parse_level(const std::string& s) {
    if (s == "e") return Level::e;
    if (s == "f1") return Level::f1;
    if (s == "f2") return Level::f2;
    if (s == "f") return Level::f;
    return std::nullopt;
}

std::string atom_prefix(int atom) {
    if (atom == 0) return "atom";
    if (atom == 1) return "atomB";
    return "atom" + std::to_string(atom + 1);
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

BasisLabel BasisLabel::lattice_site(int m) {
    BasisLabel l;
    l.kind = Kind::LatticeSite;
    l.site = m;
    return l;
}

BasisLabel BasisLabel::atom_level(Level lv, int atom) {
    if (atom < 0) throw std::invalid_argument("BasisLabel: negative atom index");
    BasisLabel l;
    l.kind = Kind::AtomLevel;
    l.level = lv;
    l.atom = atom;
    return l;
}

BasisLabel BasisLabel::aux_mode(int idx) {
    if (idx != 1 && idx != 2) throw std::invalid_argument("BasisLabel: aux index must be 1 or 2");
    BasisLabel l;
    l.kind = Kind::AuxMode;
    l.aux = idx;
    return l;
}

std::string BasisLabel::name() const {
    switch (kind) {
        case Kind::LatticeSite: return "m" + std::to_string(site);
        case Kind::AtomLevel: return atom_prefix(atom) + "_" + level_name(level);
        case Kind::AuxMode: return "aux_" + std::to_string(aux);
    }
    throw std::logic_error("BasisLabel::name: unknown kind");
}

std::optional<BasisLabel> parse_label(const std::string& text) {
    if (text.size() >= 2 && text[0] == 'm' &&
        (std::isdigit(static_cast<unsigned char>(text[1])) || text[1] == '-')) {
        if (auto m = parse_int(std::string_view(text).substr(1))) return BasisLabel::lattice_site(*m);
        return std::nullopt;
    }
    if (text.rfind("aux_", 0) == 0) {
        auto idx = parse_int(std::string_view(text).substr(4));
        if (idx && (*idx == 1 || *idx == 2)) return BasisLabel::aux_mode(*idx);
        return std::nullopt;
    }
    auto us = text.find('_');
    if (us == std::string::npos) return std::nullopt;
    const std::string prefix = text.substr(0, us);
    auto lv = parse_level(text.substr(us + 1));
    if (!lv) return std::nullopt;
    if (prefix == "atom") return BasisLabel::atom_level(*lv, 0);
    if (prefix == "atomB") return BasisLabel::atom_level(*lv, 1);
    return std::nullopt;
}

Basis::Basis(std::vector<BasisLabel> labels) : labels_(std::move(labels)) {
    int last_kind = -1;
    bool seen_site = false;
    for (const auto& l : labels_) {
        const int k = static_cast<int>(l.kind);
        if (k < last_kind)
            throw std::invalid_argument("Basis: labels must be ordered sites, atoms, aux modes");
        if (l.kind == BasisLabel::Kind::LatticeSite) {
            if (!seen_site) {
                m_min_ = l.site;
                seen_site = true;
            } else if (l.site != m_min_ + static_cast<int>(n_sites_)) {
                throw std::invalid_argument("Basis: lattice sites must ascend contiguously");
            }
            ++n_sites_;
        }
        last_kind = k;
    }
    for (std::size_t i = n_sites_; i < labels_.size(); ++i)
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j]) throw std::invalid_argument("Basis: duplicate label");
}

std::optional<std::size_t> Basis::find(const BasisLabel& l) const {
    if (l.kind == BasisLabel::Kind::LatticeSite) {
        if (n_sites_ == 0) return std::nullopt;
        const long off = static_cast<long>(l.site) - m_min_;
        if (off < 0 || off >= static_cast<long>(n_sites_)) return std::nullopt;
        return static_cast<std::size_t>(off);
    }
    for (std::size_t i = n_sites_; i < labels_.size(); ++i)
        if (labels_[i] == l) return i;
    return std::nullopt;
}

std::size_t Basis::index_of(const BasisLabel& l) const {
    if (auto i = find(l)) return *i;
    throw std::out_of_range("Basis: label " + l.name() + " not in basis");
}

int Basis::m_min() const {
    if (n_sites_ == 0) throw std::logic_error("Basis: no lattice block");
    return m_min_;
}

int Basis::m_max() const {
    if (n_sites_ == 0) throw std::logic_error("Basis: no lattice block");
    return m_min_ + static_cast<int>(n_sites_) - 1;
}

}  // namespace synthdim
