#pragma once

#include <vector>

namespace qcurl {

double mean(const std::vector<double>& v);
// sample standard deviation (n-1); 0 for fewer than 2 entries
double stddev(const std::vector<double>& v);
double standard_error(const std::vector<double>& v);
// Spearman rank correlation, average ranks on ties
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qcurl
