// acceptance_main.cpp — Prints the acceptance report; exits 0 only if all pass

#include <iostream>

#include "synthdim/acceptance.hpp"

int main() {
    const synthdim::AcceptanceReport report = synthdim::run_acceptance();
    std::cout << synthdim::render_report(report);
    return report.all_passed() ? 0 : 1;
}
