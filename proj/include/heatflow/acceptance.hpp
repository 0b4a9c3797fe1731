#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace heatflow {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

std::vector<int> acceptance_ids();
std::string acceptance_title(int id);
CriterionResult run_criterion(int id);

// Runs the given criteria (all if empty), printing one PASS/FAIL line each.
// Returns the number of failures.
int run_acceptance(const std::vector<int> &ids, std::ostream &out);

} // namespace heatflow
