// params.hpp — Parameter records for the lattice-plus-atom models

#pragma once

#include <utility>

namespace synthdim {

// Parameters of the driven four-level scheme (and its ladder variant) on a
// tight-binding mode lattice. Energies are in units of the hopping J; the
// atom couples the lattice at sites 0 and N.
struct ModelParams {
    double J{1.0};       // nearest-neighbour hopping
    double g1{0.0};      // site-0 coupling
    double g2{0.0};      // site-N coupling
    double eta1{0.0};    // drive amplitude on the first leg
    double eta2{0.0};    // drive amplitude on the second leg
    double delta1{0.0};  // detuning of the first intermediate level
    double delta2{0.0};  // detuning of the second intermediate level
    double theta{0.0};   // phase on the first drive leg
    int N{1};            // second coupling site
    int m_min{0};        // lattice extent, inclusive
    int m_max{0};

    int site_count() const { return m_max - m_min + 1; }
    void validate() const;
};

// Window of m_tot sites placed so the coupling span [0, span_max] sits as
// close to the middle as possible.
std::pair<int, int> centered_extent(int m_tot, int span_max);

}  // namespace synthdim
