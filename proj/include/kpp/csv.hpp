#pragma once

#include <string>

#include "kpp/simulator.hpp"

namespace kpp {

// Float formatting used by every CSV: 17 significant digits ("%.17g"),
// NaN printed as "nan".
std::string g17(double x);

void write_trace_csv(const std::string& path, const FrontTrace& trace);
void write_snapshot_csv(const std::string& path, const SimState& st);

}  // namespace kpp
